// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "fixtures.hpp"
#include "netprep/classifiers.hpp"
#include "netprep/dataset_gen.hpp"
#include "netprep/discretize.hpp"
#include "netprep/info_gain.hpp"
#include "netprep/io.hpp"
#include "netprep/normalize.hpp"
#include "netprep/pmf.hpp"
#include "netprep/sbs.hpp"
#include "netprep/synthetic.hpp"
#include "oracles.hpp"

using namespace netprep;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string arff_bytes(const Dataset& d) {
  std::ostringstream s;
  io::write_arff(d, s);
  return s.str();
}

Outcome pmf_worked_example() {
  Outcome o;
  const std::vector<std::string> column{"TCP", "UDP", "UDP", "UDP", "RTP", "RTP", "ICMP", "TCP", "TCP"};
  const auto table = pmf::fit(column, "protocol_type");
  o.require(table.sample_size() == 9 && table.counts().size() == 4, "expected M=9, K=4");
  const std::vector<std::pair<std::string, double>> expected{
      {"TCP", 3.0 / 9}, {"UDP", 3.0 / 9}, {"RTP", 2.0 / 9}, {"ICMP", 1.0 / 9}};
  const std::vector<std::string> displayed{"0.33", "0.33", "0.22", "0.11"};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double f = table.frequency(expected[i].first);
    o.require(std::fabs(f - expected[i].second) <= 1e-12, "pmf(" + expected[i].first + ") = " + fmt(f, 17));
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2f", f);
    o.require(buf == displayed[i], "pmf(" + expected[i].first + ") displays as " + buf);
  }
  const auto mapped = pmf::transform(table, column);
  const std::vector<std::string> sequence{"0.33", "0.33", "0.33", "0.33", "0.22", "0.22", "0.11", "0.33", "0.33"};
  std::string got;
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2f", mapped[i]);
    got += (i ? "," : "") + std::string(buf);
    o.require(buf == sequence[i], "mapped sequence differs at position " + std::to_string(i));
  }
  if (o.pass) o.detail = "{" + got + "}";
  return o;
}

Outcome info_gain_oracle() {
  Outcome o;
  std::mt19937_64 rng(20240901);
  double worst = 0.0;
  std::size_t checked = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const Dataset d = fixtures::small_nominal(rng);
    const std::vector<ClassLabel> labels(d.labels().begin(), d.labels().end());
    for (const auto& desc : d.descriptors()) {
      std::vector<std::string> keys;
      for (std::size_t r = 0; r < d.num_rows(); ++r) keys.push_back(d.symbol(desc.index, r));
      const double expected = oracle::info_gain(keys, labels);
      const double got = ig::info_gain(d, desc.name);
      worst = std::max(worst, std::fabs(got - expected));
      ++checked;
    }
  }
  o.require(worst <= 1e-9, "max |IG - oracle| = " + fmt(worst));
  if (o.pass) o.detail = std::to_string(checked) + " features over 250 datasets, max error " + fmt(worst, 3);
  return o;
}

Outcome normalization_invariants() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::size_t nonconstant = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto n = std::uniform_int_distribution<std::size_t>(2, 300)(rng);
    const double scale = std::pow(10.0, std::uniform_int_distribution<int>(-6, 9)(rng));
    const double shift = std::uniform_real_distribution<double>(-2.0, 2.0)(rng) * scale;
    const bool constant = trial % 10 == 0;
    std::vector<double> column(n);
    for (auto& v : column) {
      v = constant ? shift : shift + std::uniform_real_distribution<double>(-1.0, 1.0)(rng) * scale;
      if (trial % 7 == 0) v = std::round(v);
    }
    const bool flat = std::all_of(column.begin(), column.end(), [&](double v) { return v == column.front(); });
    const auto mm = normalize::apply(normalize::fit_minmax(column), column);
    const auto dn = normalize::apply(normalize::fit_decimal(column), column);
    const auto sn = normalize::apply(normalize::fit_statistical(column), column);
    const std::string where = "column " + std::to_string(trial);
    for (std::size_t i = 0; i < n; ++i) {
      o.require(mm[i] >= 0.0 && mm[i] <= 1.0, where + ": min-max value outside [0,1]");
      o.require(dn[i] >= -1.0 && dn[i] <= 1.0, where + ": decimal value outside [-1,1]");
    }
    if (!flat) {
      ++nonconstant;
      o.require(*std::min_element(mm.begin(), mm.end()) == 0.0 && *std::max_element(mm.begin(), mm.end()) == 1.0,
                where + ": min-max does not attain both endpoints");
      const auto m = oracle::moments(sn);
      o.require(std::fabs(static_cast<double>(m.mean)) <= 1e-9, where + ": z-score mean " + fmt(m.mean));
      o.require(std::fabs(static_cast<double>(m.sample_sd) - 1.0) <= 1e-9, where + ": z-score sd " + fmt(m.sample_sd));
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return column[a] < column[b]; });
    for (std::size_t i = 1; i < n; ++i) {
      const auto a = order[i - 1];
      const auto b = order[i];
      o.require(mm[a] <= mm[b] && dn[a] <= dn[b] && sn[a] <= sn[b], where + ": map not monotone");
    }
  }
  if (o.pass) o.detail = "120 columns, " + std::to_string(nonconstant) + " non-constant";
  return o;
}

Outcome discretizer_balance() {
  Outcome o;
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const auto k = std::uniform_int_distribution<std::size_t>(1, 25)(rng);
    const auto per_bin = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
    std::set<double> distinct;
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    while (distinct.size() < k * per_bin) distinct.insert(u(rng));
    std::vector<double> column(distinct.begin(), distinct.end());
    std::shuffle(column.begin(), column.end(), rng);
    const auto model = discretize::fit_equal_frequency(column, k);
    const auto sizes = oracle::bin_sizes(discretize::apply(model, column));
    o.require(sizes.size() == k, "distinct column: expected " + std::to_string(k) + " bins");
    for (const auto& [bin, size] : sizes) o.require(size == per_bin, "distinct column: unequal bin size");
  }
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = std::uniform_int_distribution<std::size_t>(1, 400)(rng);
    const auto levels = std::uniform_int_distribution<int>(1, 30)(rng);
    std::vector<double> column(m);
    for (auto& v : column) v = std::uniform_int_distribution<int>(0, levels)(rng) * 0.5;
    const auto k = std::uniform_int_distribution<std::size_t>(1, 25)(rng);
    const auto model = discretize::fit_equal_frequency(column, k);
    const auto bins = discretize::apply(model, column);
    std::map<double, std::set<std::size_t>> seen;
    for (std::size_t i = 0; i < m; ++i) seen[column[i]].insert(bins[i]);
    for (const auto& [value, where] : seen) o.require(where.size() == 1, "equal values split across bins");
    std::uniform_real_distribution<double> probe(-5.0, 20.0);
    for (int p = 0; p < 1000; ++p) {
      double a = probe(rng);
      double b = probe(rng);
      if (a > b) std::swap(a, b);
      o.require(model.bin_of(a) <= model.bin_of(b), "bin_of not monotone");
    }
  }
  if (o.pass) o.detail = "60 distinct + 60 tied columns, 60000 probes";
  return o;
}

Outcome threshold_margin() {
  Outcome o;
  const std::vector<double> runs{0.8, 0.9, 1.0};
  const auto m = sbs::compute_threshold_margin(runs);
  // 0.1 is not representable; the double nearest the exact sample sigma of these inputs is one ulp below 0.1.
  const double tol = 1e-15;
  o.require(std::fabs(m.mu - 0.9) <= tol, "mu = " + fmt(m.mu, 17));
  o.require(std::fabs(m.sigma - 0.1) <= tol, "sigma = " + fmt(m.sigma, 17));
  o.require(std::fabs(m.lower - 0.8) <= tol && std::fabs(m.upper - 1.0) <= tol,
            "TM = [" + fmt(m.lower, 17) + ", " + fmt(m.upper, 17) + "]");
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(std::uniform_int_distribution<std::size_t>(2, 50)(rng));
    for (auto& x : v) x = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto margin = sbs::compute_threshold_margin(v);
    const auto stat = std::get<normalize::StatisticalParams>(normalize::fit_statistical(v).params);
    o.require(std::fabs(margin.mu - stat.mu) <= 1e-12 && std::fabs(margin.sigma - stat.sigma) <= 1e-12,
              "margin and fit_statistical disagree on vector " + std::to_string(trial));
  }
  if (o.pass) {
    o.detail = "mu=" + fmt(m.mu, 17) + " sigma=" + fmt(m.sigma, 17) + " TM=[" + fmt(m.lower, 17) + ", " +
               fmt(m.upper, 17) + "]";
  }
  return o;
}

Outcome sbs_recovery() {
  Outcome o;
  const Dataset train = fixtures::joint_sum(1000, 11, "sbs_train");
  const Dataset test = fixtures::joint_sum(500, 12, "sbs_test");
  sbs::SbsConfig config;
  config.mode = sbs::Mode::Strict;
  config.rule = sbs::MetricRule::Either;
  const auto result = sbs::run_modified_sbs(train, test, config);
  const auto has = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  o.require(has(result.f_plus, "x1") && has(result.f_plus, "x2"), "informative feature missing from f_plus");
  int noise_out = 0;
  for (const auto* name : {"noise1", "noise2", "noise3", "noise4"}) noise_out += has(result.f_minus, name);
  o.require(noise_out >= 3, "only " + std::to_string(noise_out) + " noise features in f_minus");
  const std::string reference = sbs::to_json(result);
  for (std::size_t workers : {1, 2, 4, 8}) {
    config.workers = workers;
    o.require(sbs::to_json(sbs::run_modified_sbs(train, test, config)) == reference,
              "output differs with " + std::to_string(workers) + " workers");
  }
  if (o.pass) {
    std::string plus;
    for (const auto& f : result.f_plus) plus += (plus.empty() ? "" : ",") + f;
    o.detail = "f_plus={" + plus + "}, " + std::to_string(noise_out) + "/4 noise in f_minus, identical for 1/2/4/8 workers";
  }
  return o;
}

Outcome genda_grid() {
  Outcome o;
  const Dataset train = synthetic::nsl_kdd_like(5000, 1, "nsl_train");
  const Dataset test = synthetic::nsl_kdd_like(1000, 2, "nsl_test");
  const fs::path out = fs::temp_directory_path() / ("netprep_acceptance_grid_" + std::to_string(::getpid()));
  fs::remove_all(out);
  gen::GenerateOptions options;
  options.renames = nsl_kdd_preset_renames();
  options.workers = 4;
  const auto manifest = gen::generate_variants(train, test, out, options);

  std::set<std::string> expected;
  for (const auto& s : gen::all_variants()) expected.insert(gen::variant_name(s) + ".arff");
  std::set<std::string> emitted;
  for (const auto& entry : fs::directory_iterator(out)) {
    if (entry.path().extension() == ".arff") emitted.insert(entry.path().filename().string());
  }
  o.require(expected.size() == 20 && emitted == expected, "emitted files differ from the 20-name grid");
  o.require(manifest.datasets.size() == 20, "manifest lists " + std::to_string(manifest.datasets.size()) + " entries");
  o.require(gen::read_manifest_file(out / "manifest.json") == manifest, "manifest.json does not round-trip");

  for (const auto& entry : manifest.datasets) {
    const auto spec = gen::parse_variant_name(entry.name);
    const fs::path file = out / entry.file;
    const std::string bytes = slurp(file);
    o.require(gen::sha256_hex(bytes) == entry.sha256, entry.name + ": file hash differs from manifest");
    const Dataset d = io::read_arff_file(file);
    o.require(d.num_rows() == entry.rows && d.num_features() == entry.columns, entry.name + ": shape mismatch");
    if (spec.pmf) o.require(d.count_kind(FeatureKind::Nominal) == 0, entry.name + ": nominal attribute remains");
    if (spec.split == gen::Split::L && spec.normalization == gen::Normalization::MN) {
      for (std::size_t f = 0; f < d.num_features(); ++f) {
        for (double v : d.numeric(f)) o.require(v >= 0.0 && v <= 1.0, entry.name + ": value outside [0,1]");
      }
    }
    const Dataset& source = spec.split == gen::Split::L ? train : test;
    const Dataset raw = project(source, gen::preset(spec.feature_set).renamed(options.renames));
    if (!spec.pmf) {
      o.require(bytes == arff_bytes(raw.renamed(entry.name)), entry.name + ": not byte-equal to plain projection");
      continue;
    }
    if (spec.split != gen::Split::T) continue;
    // Rebuild the T file from the L parameter files named in the manifest.
    auto l_spec = spec;
    l_spec.split = gen::Split::L;
    const std::string l_name = gen::variant_name(l_spec);
    o.require(entry.pmf_params && entry.pmf_params->path == "params/" + l_name + ".pmf",
              entry.name + ": does not reference L PMF tables");
    if (!entry.pmf_params) continue;
    o.require(gen::sha256_file(out / entry.pmf_params->path) == entry.pmf_params->sha256,
              entry.name + ": PMF parameter hash mismatch");
    std::ifstream pmf_in(out / entry.pmf_params->path);
    const auto tables = pmf::read_tables(pmf_in);
    Dataset rebuilt = pmf::apply_tables(tables, raw);
    if (spec.normalization != gen::Normalization::None) {
      o.require(entry.norm_params && entry.norm_params->path == "params/" + l_name + ".norm",
                entry.name + ": does not reference L normalizer parameters");
      if (!entry.norm_params) continue;
      o.require(gen::sha256_file(out / entry.norm_params->path) == entry.norm_params->sha256,
                entry.name + ": normalizer parameter hash mismatch");
      std::ifstream norm_in(out / entry.norm_params->path);
      rebuilt = normalize::apply_fitted(tables, normalize::read_params(norm_in), raw);
    }
    o.require(bytes == arff_bytes(rebuilt.renamed(entry.name)), entry.name + ": not reproducible from L parameters");
  }
  fs::remove_all(out);
  if (o.pass) o.detail = "20 files, manifest and parameter hashes verified";
  return o;
}

Outcome normalization_benefit() {
  Outcome o;
  const Dataset train = synthetic::nsl_kdd_like(5000, 1, "nsl_train");
  const Dataset test = synthetic::nsl_kdd_like(2000, 2, "nsl_test");
  const auto set = FeatureSet::mvrf().renamed(nsl_kdd_preset_renames());
  const Dataset l = project(train, set);
  const Dataset t = project(test, set);
  const classify::TrainConfig config{.k_neighbors = 5};

  const auto fitted = normalize::hybrid_normalize(l, normalize::Method::MinMax);
  const Dataset t_norm = normalize::apply_fitted(fitted.tables, fitted.params, t);
  const auto normalized =
      classify::evaluate(classify::train(classify::Algorithm::Knn, fitted.data, config), t_norm);

  const Dataset l_raw = split_by_kind(l).numeric;
  const Dataset t_raw = split_by_kind(t).numeric;
  const auto raw = classify::evaluate(classify::train(classify::Algorithm::Knn, l_raw, config), t_raw);

  o.require(normalized.detection_rate >= raw.detection_rate,
            "DR normalized " + fmt(normalized.detection_rate, 4) + " < raw " + fmt(raw.detection_rate, 4));
  if (o.pass) {
    o.detail = "Knn DR on MVRF+PMF+MN " + fmt(normalized.detection_rate, 4) + " >= raw numeric-only " +
               fmt(raw.detection_rate, 4) + " (synthetic NSL-KDD substitute)";
  }
  return o;
}

Outcome round_trip_io() {
  Outcome o;
  std::mt19937_64 rng(909);
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset d = fixtures::awkward_mixed(rng);
    std::stringstream arff;
    io::write_arff(d, arff);
    o.require(io::read_arff(arff) == d, "ARFF round trip differs on dataset " + std::to_string(trial));
    std::stringstream csv;
    io::write_csv(d, csv);
    const Dataset back = io::read_csv(csv, d.descriptors(), {.name = d.name()});
    o.require(back == d, "CSV round trip differs on dataset " + std::to_string(trial));
  }
  if (o.pass) o.detail = "50 datasets through ARFF and CSV";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "PMF worked example", 1.0, pmf_worked_example},
      {2, "entropy/IG oracle equivalence", 5.0, info_gain_oracle},
      {3, "normalization invariants", 2.0, normalization_invariants},
      {4, "discretizer balance", 2.0, discretizer_balance},
      {5, "threshold margin", 1.0, threshold_margin},
      {6, "SBS synthetic recovery", 30.0, sbs_recovery},
      {7, "dataset grid", 60.0, genda_grid},
      {8, "directional normalization benefit", 60.0, normalization_benefit},
      {9, "round-trip I/O", 5.0, round_trip_io},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.pass && elapsed > c.limit_seconds) {
      outcome.pass = false;
      outcome.detail = "exceeded " + fmt(c.limit_seconds) + " s limit";
    }
    failures += !outcome.pass;
    std::printf("%s criterion %d: %s (%.3f s, limit %.0f s) - %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.title,
                elapsed, c.limit_seconds, outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
