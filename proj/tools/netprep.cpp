#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "netprep/classifiers.hpp"
#include "netprep/dataset.hpp"
#include "netprep/dataset_gen.hpp"
#include "netprep/discretize.hpp"
#include "netprep/error.hpp"
#include "netprep/info_gain.hpp"
#include "netprep/io.hpp"
#include "netprep/normalize.hpp"
#include "netprep/parallel.hpp"
#include "netprep/pmf.hpp"
#include "netprep/sbs.hpp"
#include "netprep/synthetic.hpp"
#include "netprep/text.hpp"

namespace fs = std::filesystem;
using namespace netprep;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string in, train, test, out;
  std::string schema;
  std::size_t ignore_trailing = 0;
  std::size_t bins = discretize::kDefaultBins;
  std::string set = "all";
  std::string method;
  std::string pmf = "on";
  std::string classifiers = "nb,dt";
  std::size_t k_neighbors = 5;
  std::string mode = "strict";
  std::string metric_rule = "either";
  std::size_t workers = 1;
  std::uint64_t seed = 1;
  std::vector<std::string> renames;
  bool iana = false;
  std::string params, fitted, manifest;
  std::size_t rows = 1000;
  std::string log_level = "info";
};

class usage_error : public error {
 public:
  using error::error;
};

// Files and directories created by a command; removed unless commit() is called.
class OutputGuard {
 public:
  ~OutputGuard() {
    if (committed_) return;
    for (auto it = paths_.rbegin(); it != paths_.rend(); ++it) {
      std::error_code ec;
      fs::remove_all(*it, ec);
    }
  }
  void add(const fs::path& p) { paths_.push_back(p); }
  // Registers `dir` if it does not exist yet and creates it.
  void make_dir(const fs::path& dir) {
    if (dir.empty() || fs::exists(dir)) return;
    make_dir(dir.parent_path());
    fs::create_directory(dir);
    add(dir);
  }
  void commit() { committed_ = true; }

 private:
  std::vector<fs::path> paths_;
  bool committed_ = false;
};

void need(const std::string& value, const char* flag) {
  if (value.empty()) throw usage_error(std::string("missing required flag ") + flag);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string extension(const fs::path& p) { return lower(p.extension().string()); }

Dataset load(const fs::path& path, const Options& o) {
  const auto ext = extension(path);
  if (ext == ".arff") return io::read_arff_file(path);
  if (ext == ".csv") {
    if (o.schema.empty()) throw usage_error("reading CSV needs --schema <arff header file>");
    io::CsvOptions csv;
    csv.name = path.stem().string();
    csv.ignored_trailing = o.ignore_trailing;
    return io::read_csv_file(path, io::read_arff_schema_file(o.schema), csv);
  }
  throw usage_error("unsupported input format '" + path.string() + "' (expected .arff or .csv)");
}

void write_text(OutputGuard& guard, const fs::path& path, const std::string& content) {
  guard.make_dir(path.parent_path());
  guard.add(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out.flush()) throw error("write failed for '" + path.string() + "'");
}

void save(OutputGuard& guard, const Dataset& d, const fs::path& path) {
  std::ostringstream s;
  const auto ext = extension(path);
  if (ext == ".arff") {
    io::write_arff(d, s);
  } else if (ext == ".csv") {
    io::write_csv(d, s);
  } else {
    throw usage_error("unsupported output format '" + path.string() + "' (expected .arff or .csv)");
  }
  write_text(guard, path, s.str());
}

// Data goes to --out when given, otherwise to stdout.
void emit(OutputGuard& guard, const Options& o, const std::string& content) {
  if (o.out.empty()) {
    std::cout << content;
  } else {
    write_text(guard, o.out, content);
  }
}

std::map<std::string, std::string> rename_map(const Options& o) {
  std::map<std::string, std::string> m;
  for (const auto& r : o.renames) {
    const auto eq = r.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == r.size()) {
      throw usage_error("--rename expects from=to, got '" + r + "'");
    }
    m[r.substr(0, eq)] = r.substr(eq + 1);
  }
  return m;
}

FeatureSet feature_set(const Options& o, const Dataset& d) {
  const auto set = lower(o.set);
  if (set.empty() || set == "all") return FeatureSet::all_of(d);
  if (set == "mvf") return FeatureSet::mvf().renamed(rename_map(o));
  if (set == "mvrf") return FeatureSet::mvrf().renamed(rename_map(o));
  if (o.set.rfind("custom:", 0) == 0) {
    const fs::path file = o.set.substr(7);
    std::ifstream in(file);
    if (!in) throw error("cannot open feature list '" + file.string() + "'");
    std::vector<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream fields(line);
      std::string name;
      while (std::getline(fields, name, ',')) {
        name = std::string(text::trim(name));
        if (!name.empty()) names.push_back(name);
      }
    }
    if (names.empty()) throw error("feature list '" + file.string() + "' is empty");
    return FeatureSet::custom(std::move(names));
  }
  throw usage_error("--set expects mvf, mvrf, all or custom:<file>, got '" + o.set + "'");
}

std::vector<classify::Algorithm> algorithms(const Options& o) {
  std::vector<classify::Algorithm> out;
  std::istringstream in(o.classifiers);
  std::string name;
  while (std::getline(in, name, ',')) {
    const auto trimmed = text::trim(name);
    if (trimmed.empty()) continue;
    const auto a = classify::parse_algorithm(trimmed);
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  if (out.empty()) throw usage_error("--classifiers is empty");
  return out;
}

bool pmf_on(const Options& o) {
  const auto v = lower(o.pmf);
  if (v == "on") return true;
  if (v == "off") return false;
  throw usage_error("--pmf expects on or off, got '" + o.pmf + "'");
}

Dataset projected(const Options& o, const fs::path& path) {
  const Dataset d = load(path, o);
  return project(d, feature_set(o, d));
}

void cmd_convert(const Options& o, OutputGuard& guard) {
  need(o.in, "--in");
  need(o.out, "--out");
  const Dataset d = load(o.in, o);
  save(guard, d, o.out);
  spdlog::info("converted {} rows, {} features", d.num_rows(), d.num_features());
}

void cmd_discretize(const Options& o, OutputGuard& guard) {
  need(o.in, "--in");
  need(o.out, "--out");
  const Dataset d = load(o.in, o);
  const auto members = feature_set(o, d).members();
  std::vector<FeatureDescriptor> descriptors;
  std::vector<Column> columns;
  ordered_json cuts = ordered_json::object();
  for (std::size_t f = 0; f < d.num_features(); ++f) {
    auto desc = d.descriptor(f);
    auto column = d.column(f);
    const bool chosen = std::find(members.begin(), members.end(), desc.name) != members.end();
    if (chosen && desc.kind == FeatureKind::Numeric) {
      const auto model = discretize::fit_equal_frequency(d.numeric(f), o.bins, desc.name);
      const auto bins = discretize::apply(model, d.numeric(f));
      desc.kind = FeatureKind::Nominal;
      desc.domain.clear();
      for (std::size_t b = 0; b < model.bin_count(); ++b) desc.domain.push_back("b" + std::to_string(b));
      column = Column{};
      column.codes.assign(bins.begin(), bins.end());
      cuts[desc.name] = model.cut_points;
    }
    descriptors.push_back(std::move(desc));
    columns.push_back(std::move(column));
  }
  const Dataset out(d.name(), std::move(descriptors), std::move(columns), {d.labels().begin(), d.labels().end()});
  save(guard, out, o.out);
  if (!o.params.empty()) {
    ordered_json j;
    j["bins"] = o.bins;
    j["cut_points"] = cuts;
    write_text(guard, o.params, j.dump(2) + "\n");
  }
  spdlog::info("discretized {} numeric features into at most {} bins", cuts.size(), o.bins);
}

void cmd_rank(const Options& o, OutputGuard& guard) {
  need(o.in, "--in");
  const Dataset d = load(o.in, o);
  const auto ranking = ig::rank(d, feature_set(o, d), o.bins, o.workers);
  ordered_json j;
  j["dataset"] = d.name();
  j["bins"] = ranking.bins_used;
  j["label_entropy"] = ig::label_entropy(d);
  j["ranking"] = ordered_json::array();
  for (const auto& e : ranking.entries) j["ranking"].push_back({{"feature", e.feature}, {"gain", e.gain}});
  emit(guard, o, j.dump(2) + "\n");
}

template <typename T, typename Reader>
T read_with(const fs::path& path, Reader reader) {
  std::ifstream in(path);
  if (!in) throw error("cannot open '" + path.string() + "'");
  return reader(in);
}

template <typename Writer>
std::string written(Writer writer) {
  std::ostringstream s;
  writer(s);
  return s.str();
}

void cmd_pmf(const Options& o, OutputGuard& guard) {
  need(o.in, "--in");
  need(o.out, "--out");
  const Dataset d = projected(o, o.in);
  std::vector<pmf::PmfTable> tables;
  Dataset mapped;
  if (!o.fitted.empty()) {
    tables = read_with<std::vector<pmf::PmfTable>>(o.fitted, [](std::istream& in) { return pmf::read_tables(in); });
    mapped = pmf::apply_tables(tables, d);
  } else {
    auto result = pmf::fit_transform_dataset(d);
    tables = std::move(result.tables);
    mapped = std::move(result.data);
  }
  save(guard, mapped, o.out);
  if (!o.params.empty()) write_text(guard, o.params, written([&](std::ostream& s) { pmf::write_tables(tables, s); }));
  spdlog::info("mapped {} nominal features", tables.size());
}

void cmd_normalize(const Options& o, OutputGuard& guard) {
  need(o.in, "--in");
  need(o.out, "--out");
  const Dataset d = projected(o, o.in);
  const bool with_pmf = pmf_on(o);
  std::vector<pmf::PmfTable> tables;
  std::vector<normalize::NormalizerParams> params;
  if (!o.fitted.empty()) {
    const fs::path prefix = o.fitted;
    params = read_with<std::vector<normalize::NormalizerParams>>(
        prefix.string() + ".norm", [](std::istream& in) { return normalize::read_params(in); });
    if (with_pmf) {
      tables = read_with<std::vector<pmf::PmfTable>>(prefix.string() + ".pmf",
                                                     [](std::istream& in) { return pmf::read_tables(in); });
    }
  } else {
    need(o.method, "--method");
    const auto method = normalize::parse_method(o.method);
    const auto fitted = normalize::hybrid_normalize(with_pmf ? d : split_by_kind(d).numeric, method);
    tables = fitted.tables;
    params = fitted.params;
  }
  Dataset out;
  if (with_pmf) {
    out = normalize::apply_fitted(tables, params, d);
  } else {
    const auto split = split_by_kind(d);
    out = rejoin(split.nominal, normalize::apply_fitted({}, params, split.numeric), split.from_nominal, d.name());
  }
  save(guard, out, o.out);
  if (!o.params.empty()) {
    if (with_pmf) {
      write_text(guard, o.params + ".pmf", written([&](std::ostream& s) { pmf::write_tables(tables, s); }));
    }
    write_text(guard, o.params + ".norm", written([&](std::ostream& s) { normalize::write_params(params, s); }));
  }
  spdlog::info("normalized {} numeric features, pmf {}", params.size(), with_pmf ? "on" : "off");
}

void cmd_select(const Options& o, OutputGuard& guard) {
  need(o.train, "--train");
  need(o.test, "--test");
  const Dataset train = projected(o, o.train);
  const Dataset test = projected(o, o.test);
  sbs::SbsConfig config;
  config.classifiers = algorithms(o);
  config.train.k_neighbors = o.k_neighbors;
  config.mode = sbs::parse_mode(o.mode);
  config.rule = sbs::parse_metric_rule(o.metric_rule);
  config.k_bins = o.bins;
  config.workers = o.workers;
  const auto result = sbs::run_modified_sbs(train, test, config);
  auto json = sbs::to_json(result);
  if (json.empty() || json.back() != '\n') json += '\n';
  emit(guard, o, json);
  if (!o.params.empty()) write_text(guard, o.params, sbs::to_report(result));
  spdlog::info("f_plus {} features, f_minus {} features", result.f_plus.size(), result.f_minus.size());
}

void cmd_generate(const Options& o, OutputGuard& guard) {
  need(o.train, "--train");
  need(o.test, "--test");
  need(o.out, "--out");
  const Dataset train = load(o.train, o);
  const Dataset test = load(o.test, o);
  const fs::path out = o.out;
  if (fs::exists(out)) {
    // Only the files this command writes are removed on failure.
    for (const auto& spec : gen::all_variants()) {
      const auto name = gen::variant_name(spec);
      guard.add(out / (name + ".arff"));
      guard.add(out / "params" / (name + ".pmf"));
      guard.add(out / "params" / (name + ".norm"));
    }
    for (const char* set : {"MVF", "MVRF"}) {
      for (const char* split : {"L_", "T_"}) guard.add(out / (std::string(split) + set + "+IANA+MN.arff"));
      guard.add(out / "params" / (std::string("L_") + set + "+IANA+MN.norm"));
    }
    guard.add(out / "manifest.json");
    if (!fs::exists(out / "params")) guard.add(out / "params");
  } else {
    guard.make_dir(out);
  }
  gen::GenerateOptions options;
  options.renames = rename_map(o);
  options.workers = o.workers;
  options.iana_baseline = o.iana;
  const auto manifest = gen::generate_variants(train, test, out, options);
  spdlog::info("wrote {} datasets and {} baselines to {}", manifest.datasets.size(), manifest.baselines.size(),
               out.string());
}

struct EvalJob {
  std::string label;
  fs::path train, test;
};

std::string without_split(const std::string& name) {
  return name.size() > 2 && (name.rfind("L_", 0) == 0 || name.rfind("T_", 0) == 0) ? name.substr(2) : name;
}

void cmd_evaluate(const Options& o, OutputGuard& guard) {
  need(o.out, "--out");
  std::vector<EvalJob> jobs;
  if (!o.manifest.empty()) {
    const fs::path manifest_path = o.manifest;
    const auto manifest = gen::read_manifest_file(manifest_path);
    const auto base = manifest_path.parent_path();
    std::map<std::string, fs::path> files;
    std::vector<std::string> order;
    for (const auto* list : {&manifest.datasets, &manifest.baselines}) {
      for (const auto& e : *list) {
        if (gen::sha256_file(base / e.file) != e.sha256) throw error("hash mismatch for '" + e.file + "'");
        files[e.name] = base / e.file;
        if (e.name.rfind("L_", 0) == 0) order.push_back(e.name);
      }
    }
    for (const auto& l : order) {
      const auto t = "T_" + without_split(l);
      if (!files.contains(t)) throw error("manifest has no test file for '" + l + "'");
      jobs.push_back({without_split(l), files[l], files[t]});
    }
  } else {
    need(o.train, "--train or --manifest");
    need(o.test, "--test");
    jobs.push_back({fs::path(o.train).stem().string(), o.train, o.test});
  }
  const auto algs = algorithms(o);
  classify::TrainConfig config;
  config.k_neighbors = o.k_neighbors;

  std::vector<classify::EvaluationReport> reports(jobs.size() * algs.size());
  parallel_for(reports.size(), o.workers, [&](std::size_t i) {
    const auto& job = jobs[i / algs.size()];
    const Dataset train = load(job.train, o);
    const Dataset test = load(job.test, o);
    const auto model = classify::train(algs[i % algs.size()], train, config);
    auto report = classify::evaluate(model, test);
    report.dataset = job.label;
    reports[i] = std::move(report);
  });
  const fs::path out = o.out;
  guard.make_dir(out);
  for (const auto& r : reports) write_text(guard, out / (r.dataset + "." + r.classifier + ".json"), classify::to_json(r));
  spdlog::info("wrote {} reports ({} datasets x {} classifiers)", reports.size(), jobs.size(), algs.size());
}

void cmd_report(const Options& o, OutputGuard& guard) {
  need(o.in, "--in");
  std::vector<fs::path> files;
  if (fs::is_directory(o.in)) {
    for (const auto& entry : fs::directory_iterator(o.in)) {
      if (entry.is_regular_file() && extension(entry.path()) == ".json") files.push_back(entry.path());
    }
  } else {
    files.push_back(o.in);
  }
  std::vector<classify::EvaluationReport> reports;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw error("cannot open '" + f.string() + "'");
    std::string line;
    while (std::getline(in, line)) {
      if (!text::trim(line).empty()) reports.push_back(classify::report_from_json(line));
    }
  }
  if (reports.empty()) throw error("no reports found in '" + o.in + "'");
  std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return std::tie(a.classifier, a.dataset) < std::tie(b.classifier, b.dataset);
  });
  emit(guard, o, written([&](std::ostream& s) { classify::write_summary(reports, s); }));
}

void cmd_synth(const Options& o, OutputGuard& guard) {
  need(o.out, "--out");
  const auto name = fs::path(o.out).stem().string();
  save(guard, synthetic::nsl_kdd_like(o.rows, o.seed, name), o.out);
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_logger_st("netprep");
  logger->set_pattern("%l: %v");
  spdlog::set_default_logger(logger);

  Options o;
  CLI::App app{"Network intrusion dataset preparation"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file mirroring the long flags")->envname("NETPREP_CONFIG");

  app.add_option("--in", o.in, "Input dataset (.arff or .csv), or reports for 'report'");
  app.add_option("--train", o.train, "Training dataset");
  app.add_option("--test", o.test, "Testing dataset");
  app.add_option("--out", o.out, "Output file or directory");
  app.add_option("--schema", o.schema, "ARFF file whose header gives the schema of CSV input");
  app.add_option("--ignore-trailing", o.ignore_trailing, "Extra trailing CSV columns to skip");
  app.add_option("--bins", o.bins, "Equal-frequency bins")->check(CLI::PositiveNumber);
  app.add_option("--set", o.set, "mvf, mvrf, all or custom:<file>");
  app.add_option("--method", o.method, "dn, mn or sn");
  app.add_option("--pmf", o.pmf, "on or off");
  app.add_option("--classifiers", o.classifiers, "Comma-separated: nb, dt, knn");
  app.add_option("--k", o.k_neighbors, "Neighbours for knn")->check(CLI::PositiveNumber);
  app.add_option("--mode", o.mode, "strict or boundary");
  app.add_option("--metric-rule", o.metric_rule, "either or both");
  app.add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed for synth");
  app.add_option("--rename", o.renames, "Preset name mapping from=to (repeatable)");
  app.add_flag("--iana", o.iana, "Also emit the IANA-number baseline");
  app.add_option("--params", o.params, "Where to write fitted parameters");
  app.add_option("--fitted", o.fitted, "Previously written parameters to apply instead of fitting");
  app.add_option("--manifest", o.manifest, "manifest.json from generate");
  app.add_option("--rows", o.rows, "Rows for synth")->check(CLI::PositiveNumber);
  app.add_option("--log-level", o.log_level, "trace, debug, info, warn, error or off");

  const std::vector<std::pair<const char*, void (*)(const Options&, OutputGuard&)>> commands{
      {"convert", cmd_convert},   {"discretize", cmd_discretize}, {"rank", cmd_rank},
      {"pmf", cmd_pmf},           {"normalize", cmd_normalize},   {"select", cmd_select},
      {"generate", cmd_generate}, {"evaluate", cmd_evaluate},     {"report", cmd_report},
      {"synth", cmd_synth}};
  const std::map<std::string, std::string> help{
      {"convert", "ARFF <-> CSV"},
      {"discretize", "Equal-frequency binning of numeric features"},
      {"rank", "Information-gain ranking as JSON"},
      {"pmf", "Map nominal features to relative frequencies"},
      {"normalize", "PMF plus DN/MN/SN normalization"},
      {"select", "Leave-one-out feature selection with threshold margins"},
      {"generate", "Write the 20-variant dataset grid and manifest"},
      {"evaluate", "Train on L, test on T, one report per dataset and classifier"},
      {"report", "Tab-separated summary of evaluation reports"},
      {"synth", "Write a synthetic NSL-KDD-shaped dataset"}};
  for (const auto& [name, fn] : commands) app.add_subcommand(name, help.at(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << one_line(e.what()) << '\n';
    return 2;
  }

  const auto level = spdlog::level::from_str(o.log_level);
  if (level == spdlog::level::off && o.log_level != "off") {
    std::cerr << "error: usage: unknown --log-level '" << o.log_level << "'\n";
    return 2;
  }
  spdlog::set_level(level);

  const auto* chosen = app.get_subcommands().front();
  OutputGuard guard;
  try {
    for (const auto& [name, fn] : commands) {
      if (chosen->get_name() == name) fn(o, guard);
    }
    std::cout.flush();
    if (!std::cout) throw error("failed writing standard output");
    guard.commit();
  } catch (const usage_error& e) {
    std::cerr << "error: usage: " << one_line(e.what()) << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << chosen->get_name() << ": " << one_line(e.what()) << '\n';
    return 1;
  }
  return 0;
}
