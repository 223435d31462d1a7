#include "netprep/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <span>

namespace netprep::synthetic {

namespace {

const std::vector<std::string> kProtocols{"tcp", "udp", "icmp"};

const std::vector<std::string> kServices{
    "aol",        "auth",        "bgp",       "courier",    "csnet_ns", "ctf",      "daytime",   "discard",
    "domain",     "domain_u",    "echo",      "eco_i",      "ecr_i",    "efs",      "exec",      "finger",
    "ftp",        "ftp_data",    "gopher",    "harvest",    "hostnames", "http",    "http_2784", "http_443",
    "http_8001",  "imap4",       "IRC",       "iso_tsap",   "klogin",   "kshell",   "ldap",      "link",
    "login",      "mtp",         "name",      "netbios_dgm", "netbios_ns", "netbios_ssn", "netstat", "nnsp",
    "nntp",       "ntp_u",       "other",     "pm_dump",    "pop_2",    "pop_3",    "printer",   "private",
    "red_i",      "remote_job",  "rje",       "shell",      "smtp",     "sql_net",  "ssh",       "sunrpc",
    "supdup",     "systat",      "telnet",    "tftp_u",     "tim_i",    "time",     "urh_i",     "urp_i",
    "uucp",       "uucp_path",   "vmnet",     "whois",      "X11",      "Z39_50"};

const std::vector<std::string> kFlags{"OTH", "REJ", "RSTO", "RSTOS0", "RSTR", "S0", "S1", "S2", "S3", "SF", "SH"};

const std::vector<std::string> kNames{"duration",
                                      "protocol_type",
                                      "service",
                                      "flag",
                                      "src_bytes",
                                      "dst_bytes",
                                      "land",
                                      "wrong_fragment",
                                      "urgent",
                                      "hot",
                                      "num_failed_logins",
                                      "logged_in",
                                      "num_compromised",
                                      "root_shell",
                                      "su_attempted",
                                      "num_root",
                                      "num_file_creations",
                                      "num_shells",
                                      "num_access_files",
                                      "num_outbound_cmds",
                                      "is_host_login",
                                      "is_guest_login",
                                      "count",
                                      "srv_count",
                                      "serror_rate",
                                      "srv_serror_rate",
                                      "rerror_rate",
                                      "srv_rerror_rate",
                                      "same_srv_rate",
                                      "diff_srv_rate",
                                      "srv_diff_host_rate",
                                      "dst_host_count",
                                      "dst_host_srv_count",
                                      "dst_host_same_srv_rate",
                                      "dst_host_diff_srv_rate",
                                      "dst_host_same_src_port_rate",
                                      "dst_host_srv_diff_host_rate",
                                      "dst_host_serror_rate",
                                      "dst_host_srv_serror_rate",
                                      "dst_host_rerror_rate",
                                      "dst_host_srv_rerror_rate"};

enum Col : std::size_t {
  kDuration,
  kProtocol,
  kService,
  kFlag,
  kSrcBytes,
  kDstBytes,
  kLand,
  kWrongFragment,
  kUrgent,
  kHot,
  kFailedLogins,
  kLoggedIn,
  kCompromised,
  kRootShell,
  kSuAttempted,
  kNumRoot,
  kFileCreations,
  kShells,
  kAccessFiles,
  kOutboundCmds,
  kHostLogin,
  kGuestLogin,
  kCount,
  kSrvCount,
  kSerror,
  kSrvSerror,
  kRerror,
  kSrvRerror,
  kSameSrv,
  kDiffSrv,
  kSrvDiffHost,
  kDstHostCount,
  kDstHostSrvCount,
  kDstHostSameSrv,
  kDstHostDiffSrv,
  kDstHostSameSrcPort,
  kDstHostSrvDiffHost,
  kDstHostSerror,
  kDstHostSrvSerror,
  kDstHostRerror,
  kDstHostSrvRerror,
  kColumns
};

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }
  double integer(int lo, int hi) { return static_cast<double>(std::uniform_int_distribution<int>(lo, hi)(rng_)); }
  double lognormal(double mu, double sigma) {
    return std::round(std::lognormal_distribution<double>(mu, sigma)(rng_));
  }
  double rate(double lo, double hi) { return std::round(uniform(lo, hi) * 100.0) / 100.0; }

  template <std::size_t N>
  std::size_t pick(const std::array<double, N>& weights) {
    std::discrete_distribution<std::size_t> d(weights.begin(), weights.end());
    return d(rng_);
  }

  const std::string& any(std::span<const std::string> items) {
    return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng_)];
  }

 private:
  std::mt19937_64 rng_;
};

struct Row {
  std::array<double, kColumns> v{};
  std::string protocol;
  std::string service;
  std::string flag;
};

// Baseline connection statistics shared by benign-looking rows.
void benign_rates(Draw& d, Row& r) {
  r.v[kCount] = d.integer(1, 25);
  r.v[kSrvCount] = d.integer(1, 30);
  if (d.chance(0.05)) {
    r.v[kSerror] = d.rate(0.0, 0.3);
    r.v[kSrvSerror] = d.rate(0.0, 0.3);
  }
  if (d.chance(0.08)) {
    r.v[kRerror] = d.rate(0.0, 0.5);
    r.v[kSrvRerror] = d.rate(0.0, 0.5);
  }
  r.v[kSameSrv] = d.rate(0.75, 1.0);
  r.v[kDiffSrv] = d.rate(0.0, 0.12);
  r.v[kSrvDiffHost] = d.rate(0.0, 0.3);
  r.v[kDstHostCount] = d.integer(1, 255);
  r.v[kDstHostSrvCount] = d.integer(40, 255);
  r.v[kDstHostSameSrv] = d.rate(0.6, 1.0);
  r.v[kDstHostDiffSrv] = d.rate(0.0, 0.1);
  r.v[kDstHostSameSrcPort] = d.rate(0.0, 0.3);
  r.v[kDstHostSrvDiffHost] = d.rate(0.0, 0.1);
  r.v[kDstHostSerror] = d.rate(0.0, 0.05);
  r.v[kDstHostSrvSerror] = d.rate(0.0, 0.05);
  r.v[kDstHostRerror] = d.rate(0.0, 0.1);
  r.v[kDstHostSrvRerror] = d.rate(0.0, 0.1);
}

Row normal_row(Draw& d) {
  Row r;
  static const std::vector<std::string> tcp_services{"http", "smtp", "ftp_data", "ftp", "private", "telnet",
                                                     "other", "pop_3", "ssh", "imap4", "finger", "auth"};
  static const std::array<double, 12> tcp_weights{55, 12, 12, 5, 4, 3, 4, 2, 1, 1, 0.5, 0.5};
  switch (d.pick(std::array<double, 3>{80, 15, 5})) {
    case 0:
      r.protocol = "tcp";
      r.service = tcp_services[d.pick(tcp_weights)];
      r.flag = std::array<const char*, 5>{"SF", "REJ", "S0", "RSTO", "S1"}[d.pick(std::array<double, 5>{92, 3, 1, 2, 2})];
      break;
    case 1:
      r.protocol = "udp";
      r.service = std::array<const char*, 4>{"domain_u", "ntp_u", "private", "other"}[d.pick(
          std::array<double, 4>{60, 15, 20, 5})];
      r.flag = "SF";
      break;
    default:
      r.protocol = "icmp";
      r.service = std::array<const char*, 3>{"eco_i", "ecr_i", "urp_i"}[d.pick(std::array<double, 3>{50, 40, 10})];
      r.flag = "SF";
      break;
  }
  r.v[kDuration] = d.chance(0.8) ? 0.0 : std::round(-300.0 * std::log(1.0 - d.uniform(0.0, 1.0)));
  r.v[kSrcBytes] = d.lognormal(5.5, 1.5);
  r.v[kDstBytes] = r.protocol == "tcp" ? d.lognormal(7.5, 2.0) : (d.chance(0.5) ? 0.0 : d.lognormal(4.5, 1.0));
  r.v[kWrongFragment] = d.chance(0.001) ? 1.0 : 0.0;
  r.v[kHot] = d.chance(0.05) ? d.integer(1, 5) : 0.0;
  r.v[kFailedLogins] = d.chance(0.002) ? 1.0 : 0.0;
  r.v[kLoggedIn] = r.protocol == "tcp" && r.flag == "SF" && d.chance(0.9) ? 1.0 : 0.0;
  r.v[kCompromised] = d.chance(0.01) ? 1.0 : 0.0;
  r.v[kRootShell] = d.chance(0.002) ? 1.0 : 0.0;
  r.v[kNumRoot] = d.chance(0.01) ? d.integer(1, 3) : 0.0;
  r.v[kFileCreations] = d.chance(0.02) ? d.integer(1, 3) : 0.0;
  r.v[kAccessFiles] = d.chance(0.01) ? 1.0 : 0.0;
  r.v[kGuestLogin] = d.chance(0.005) ? 1.0 : 0.0;
  benign_rates(d, r);
  return r;
}

Row syn_flood_row(Draw& d) {
  Row r;
  r.protocol = "tcp";
  static const std::vector<std::string> targets{"private", "http", "telnet", "ftp_data", "smtp", "finger",
                                                "auth",    "ftp",  "other",  "imap4",    "sunrpc", "uucp"};
  r.service = d.chance(0.5) ? "private" : d.any(targets);
  const bool rejected = d.chance(0.15);
  r.flag = rejected ? "REJ" : "S0";
  r.v[kCount] = d.integer(80, 511);
  r.v[kSrvCount] = d.integer(1, 30);
  const double err = d.rate(0.85, 1.0);
  r.v[rejected ? kRerror : kSerror] = err;
  r.v[rejected ? kSrvRerror : kSrvSerror] = err;
  r.v[kSameSrv] = d.rate(0.0, 0.15);
  r.v[kDiffSrv] = d.rate(0.04, 0.12);
  r.v[kDstHostCount] = 255.0;
  r.v[kDstHostSrvCount] = d.integer(1, 30);
  r.v[kDstHostSameSrv] = d.rate(0.0, 0.12);
  r.v[kDstHostDiffSrv] = d.rate(0.04, 0.1);
  r.v[rejected ? kDstHostRerror : kDstHostSerror] = d.rate(0.85, 1.0);
  r.v[rejected ? kDstHostSrvRerror : kDstHostSrvSerror] = d.rate(0.85, 1.0);
  return r;
}

Row icmp_flood_row(Draw& d) {
  Row r;
  if (d.chance(0.8)) {
    r.protocol = "icmp";
    r.service = "ecr_i";
    r.v[kSrcBytes] = d.chance(0.7) ? 1032.0 : 520.0;
    r.v[kCount] = d.integer(300, 511);
    r.v[kSrvCount] = r.v[kCount];
  } else {
    r.protocol = "udp";
    r.service = "private";
    r.v[kSrcBytes] = 28.0;
    r.v[kWrongFragment] = 3.0;
    r.v[kCount] = d.integer(1, 10);
    r.v[kSrvCount] = d.integer(1, 10);
  }
  r.flag = "SF";
  r.v[kSameSrv] = 1.0;
  r.v[kDstHostCount] = 255.0;
  r.v[kDstHostSrvCount] = 255.0;
  r.v[kDstHostSameSrv] = 1.0;
  r.v[kDstHostSameSrcPort] = d.rate(0.8, 1.0);
  return r;
}

Row probe_row(Draw& d) {
  Row r;
  if (d.chance(0.3)) {
    r.protocol = "icmp";
    r.service = d.chance(0.8) ? "eco_i" : "urp_i";
    r.flag = "SF";
    r.v[kSrcBytes] = d.chance(0.5) ? 8.0 : 18.0;
    r.v[kDstHostSameSrcPort] = d.rate(0.6, 1.0);
    r.v[kDstHostSrvDiffHost] = d.rate(0.3, 1.0);
  } else {
    r.protocol = "tcp";
    r.service = d.chance(0.3) ? "private" : d.any(kServices);
    r.flag = std::array<const char*, 4>{"REJ", "RSTO", "S0", "RSTR"}[d.pick(std::array<double, 4>{45, 25, 15, 15})];
    r.v[kSrcBytes] = d.chance(0.8) ? 0.0 : d.integer(1, 50);
    r.v[kRerror] = r.flag == "S0" ? 0.0 : d.rate(0.4, 1.0);
    r.v[kSrvRerror] = r.v[kRerror];
    r.v[kSerror] = r.flag == "S0" ? d.rate(0.4, 1.0) : 0.0;
    r.v[kSrvSerror] = r.v[kSerror];
    r.v[kDstHostRerror] = d.rate(0.3, 1.0);
    r.v[kDstHostSrvRerror] = d.rate(0.3, 1.0);
    r.v[kDstHostSameSrcPort] = d.rate(0.0, 0.6);
  }
  r.v[kDuration] = d.chance(0.9) ? 0.0 : d.integer(1, 20);
  r.v[kCount] = d.integer(1, 200);
  r.v[kSrvCount] = d.integer(1, 10);
  r.v[kSameSrv] = d.rate(0.0, 0.5);
  r.v[kDiffSrv] = d.rate(0.4, 1.0);
  r.v[kSrvDiffHost] = d.rate(0.0, 1.0);
  r.v[kDstHostCount] = d.integer(1, 255);
  r.v[kDstHostSrvCount] = d.integer(1, 20);
  r.v[kDstHostSameSrv] = d.rate(0.0, 0.3);
  r.v[kDstHostDiffSrv] = d.rate(0.3, 1.0);
  return r;
}

Row r2l_row(Draw& d) {
  Row r;
  r.protocol = "tcp";
  static const std::vector<std::string> services{"ftp", "ftp_data", "telnet", "imap4", "pop_3", "http", "login"};
  r.service = d.any(services);
  r.flag = d.chance(0.85) ? "SF" : "RSTO";
  r.v[kDuration] = d.chance(0.5) ? 0.0 : d.integer(1, 3000);
  r.v[kSrcBytes] = d.lognormal(6.0, 2.0);
  r.v[kDstBytes] = d.chance(0.4) ? 0.0 : d.lognormal(6.5, 2.0);
  r.v[kHot] = d.chance(0.6) ? d.integer(1, 30) : 0.0;
  r.v[kFailedLogins] = d.chance(0.25) ? d.integer(1, 4) : 0.0;
  r.v[kLoggedIn] = d.chance(0.55) ? 1.0 : 0.0;
  r.v[kCompromised] = d.chance(0.2) ? d.integer(1, 5) : 0.0;
  r.v[kRootShell] = d.chance(0.15) ? 1.0 : 0.0;
  r.v[kSuAttempted] = d.chance(0.03) ? 1.0 : 0.0;
  r.v[kNumRoot] = d.chance(0.1) ? d.integer(1, 5) : 0.0;
  r.v[kFileCreations] = d.chance(0.2) ? d.integer(1, 5) : 0.0;
  r.v[kShells] = d.chance(0.1) ? 1.0 : 0.0;
  r.v[kAccessFiles] = d.chance(0.3) ? d.integer(1, 3) : 0.0;
  r.v[kGuestLogin] = d.chance(0.3) ? 1.0 : 0.0;
  benign_rates(d, r);
  r.v[kCount] = d.integer(1, 6);
  r.v[kSrvCount] = d.integer(1, 6);
  r.v[kDstHostSrvCount] = d.integer(1, 60);
  r.v[kDstHostSameSrcPort] = d.rate(0.0, 1.0);
  if (r.flag == "RSTO") {
    r.v[kRerror] = d.rate(0.3, 1.0);
    r.v[kSrvRerror] = r.v[kRerror];
  }
  return r;
}

}  // namespace

const std::vector<std::string>& nsl_kdd_feature_names() { return kNames; }

std::vector<FeatureDescriptor> nsl_kdd_schema() {
  std::vector<FeatureDescriptor> schema;
  for (std::size_t f = 0; f < kNames.size(); ++f) {
    FeatureDescriptor d{kNames[f], f, FeatureKind::Numeric, {}};
    if (f == kProtocol) d = {kNames[f], f, FeatureKind::Nominal, kProtocols};
    if (f == kService) d = {kNames[f], f, FeatureKind::Nominal, kServices};
    if (f == kFlag) d = {kNames[f], f, FeatureKind::Nominal, kFlags};
    schema.push_back(std::move(d));
  }
  return schema;
}

Dataset nsl_kdd_like(std::size_t rows, std::uint64_t seed, std::string name) {
  Draw d(seed);
  std::vector<Column> columns(kColumns);
  std::vector<ClassLabel> labels;
  labels.reserve(rows);
  const auto schema = nsl_kdd_schema();
  auto code = [&](std::size_t f, const std::string& symbol) {
    return *schema[f].code_of(symbol);
  };

  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t family = d.pick(std::array<double, 5>{53, 22, 7, 11, 7});
    Row r;
    switch (family) {
      case 0:
        r = normal_row(d);
        break;
      case 1:
        r = syn_flood_row(d);
        break;
      case 2:
        r = icmp_flood_row(d);
        break;
      case 3:
        r = probe_row(d);
        break;
      default:
        r = r2l_row(d);
        break;
    }
    ClassLabel label = family == 0 ? ClassLabel::Normal : ClassLabel::Anomaly;
    if (d.chance(0.02)) label = label == ClassLabel::Normal ? ClassLabel::Anomaly : ClassLabel::Normal;
    labels.push_back(label);

    for (std::size_t f = 0; f < kColumns; ++f) {
      if (f == kProtocol) {
        columns[f].codes.push_back(code(f, r.protocol));
      } else if (f == kService) {
        columns[f].codes.push_back(code(f, r.service));
      } else if (f == kFlag) {
        columns[f].codes.push_back(code(f, r.flag));
      } else {
        columns[f].values.push_back(r.v[f]);
      }
    }
  }
  return Dataset(std::move(name), schema, std::move(columns), std::move(labels));
}

}  // namespace netprep::synthetic
