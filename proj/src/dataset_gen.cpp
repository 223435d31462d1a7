#include "netprep/dataset_gen.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "iana_numbers_data.hpp"
#include "netprep/error.hpp"
#include "netprep/io.hpp"
#include "netprep/normalize.hpp"
#include "netprep/parallel.hpp"
#include "netprep/pmf.hpp"
#include "netprep/text.hpp"

namespace netprep::gen {

namespace fs = std::filesystem;

namespace {

constexpr std::array<std::pair<Normalization, std::string_view>, 4> kNormSuffix{
    {{Normalization::None, "-N"}, {Normalization::DN, "+DN"}, {Normalization::MN, "+MN"}, {Normalization::SN, "+SN"}}};

std::string_view set_label(PresetSet set) { return set == PresetSet::MVF ? "MVF" : "MVRF"; }

normalize::Method method_of(Normalization n) {
  switch (n) {
    case Normalization::DN:
      return normalize::Method::Decimal;
    case Normalization::MN:
      return normalize::Method::MinMax;
    case Normalization::SN:
      return normalize::Method::Statistical;
    case Normalization::None:
      break;
  }
  throw error("no normalization method for -N");
}

void write_bytes(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot open '" + path.string() + "' for writing");
  out << bytes;
  if (!out.flush()) throw error("write failed for '" + path.string() + "'");
}

ManifestEntry emit_dataset(const Dataset& data, const std::string& name, const fs::path& out) {
  std::ostringstream arff;
  io::write_arff(data.renamed(name), arff);
  const std::string bytes = arff.str();
  ManifestEntry e;
  e.name = name;
  e.file = name + ".arff";
  e.sha256 = sha256_hex(bytes);
  e.rows = data.num_rows();
  e.columns = data.num_features();
  write_bytes(out / e.file, bytes);
  return e;
}

ParamFile emit_param(const std::string& text, const std::string& relative, const fs::path& out) {
  write_bytes(out / relative, text);
  return {relative, sha256_hex(text)};
}

std::string pmf_text(const std::vector<pmf::PmfTable>& tables) {
  std::ostringstream s;
  pmf::write_tables(tables, s);
  return s.str();
}

std::string norm_text(const std::vector<normalize::NormalizerParams>& params) {
  std::ostringstream s;
  normalize::write_params(params, s);
  return s.str();
}

nlohmann::ordered_json entry_json(const ManifestEntry& e) {
  nlohmann::ordered_json j;
  j["name"] = e.name;
  j["file"] = e.file;
  j["sha256"] = e.sha256;
  j["rows"] = e.rows;
  j["columns"] = e.columns;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  if (e.pmf_params) params["pmf"] = {{"path", e.pmf_params->path}, {"sha256", e.pmf_params->sha256}};
  if (e.norm_params) params["norm"] = {{"path", e.norm_params->path}, {"sha256", e.norm_params->sha256}};
  j["params"] = std::move(params);
  return j;
}

ManifestEntry entry_from_json(const nlohmann::json& j) {
  ManifestEntry e;
  e.name = j.at("name").get<std::string>();
  e.file = j.at("file").get<std::string>();
  e.sha256 = j.at("sha256").get<std::string>();
  e.rows = j.at("rows").get<std::size_t>();
  e.columns = j.at("columns").get<std::size_t>();
  const auto& params = j.at("params");
  if (params.contains("pmf")) e.pmf_params = ParamFile{params["pmf"].at("path"), params["pmf"].at("sha256")};
  if (params.contains("norm")) e.norm_params = ParamFile{params["norm"].at("path"), params["norm"].at("sha256")};
  return e;
}

Dataset project_preset(const Dataset& d, PresetSet set, const GenerateOptions& options) {
  return project(d, preset(set).renamed(options.renames));
}

}  // namespace

std::string variant_name(const VariantSpec& spec) {
  if (!spec.valid()) throw error("invalid variant: normalization requires PMF");
  std::string name = spec.split == Split::L ? "L_" : "T_";
  name += set_label(spec.feature_set);
  name += spec.pmf ? "+PMF" : "-PMF";
  for (const auto& [n, s] : kNormSuffix) {
    if (n == spec.normalization) name += s;
  }
  return name;
}

VariantSpec parse_variant_name(std::string_view name) {
  const auto fail = [&]() -> VariantSpec { throw error("malformed variant name '" + std::string(name) + "'"); };
  std::string_view rest = name;
  VariantSpec spec;
  if (rest.starts_with("L_")) {
    spec.split = Split::L;
  } else if (rest.starts_with("T_")) {
    spec.split = Split::T;
  } else {
    return fail();
  }
  rest.remove_prefix(2);
  if (rest.starts_with("MVRF")) {
    spec.feature_set = PresetSet::MVRF;
    rest.remove_prefix(4);
  } else if (rest.starts_with("MVF")) {
    spec.feature_set = PresetSet::MVF;
    rest.remove_prefix(3);
  } else {
    return fail();
  }
  if (rest.starts_with("+PMF")) {
    spec.pmf = true;
  } else if (!rest.starts_with("-PMF")) {
    return fail();
  }
  rest.remove_prefix(4);
  bool matched = false;
  for (const auto& [n, s] : kNormSuffix) {
    if (rest == s) {
      spec.normalization = n;
      matched = true;
    }
  }
  if (!matched || !spec.valid()) return fail();
  return spec;
}

std::vector<VariantSpec> all_variants() {
  std::vector<VariantSpec> out;
  for (auto split : {Split::L, Split::T}) {
    for (auto set : {PresetSet::MVF, PresetSet::MVRF}) {
      out.push_back({split, set, false, Normalization::None});
      out.push_back({split, set, true, Normalization::None});
      for (auto n : {Normalization::DN, Normalization::MN, Normalization::SN}) out.push_back({split, set, true, n});
    }
  }
  return out;
}

FeatureSet preset(PresetSet set) { return set == PresetSet::MVF ? FeatureSet::mvf() : FeatureSet::mvrf(); }

std::string to_json(const Manifest& manifest) {
  nlohmann::ordered_json j;
  j["datasets"] = nlohmann::ordered_json::array();
  for (const auto& e : manifest.datasets) j["datasets"].push_back(entry_json(e));
  j["baselines"] = nlohmann::ordered_json::array();
  for (const auto& e : manifest.baselines) j["baselines"].push_back(entry_json(e));
  return j.dump(2) + "\n";
}

Manifest manifest_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Manifest m;
    for (const auto& e : j.at("datasets")) m.datasets.push_back(entry_from_json(e));
    if (j.contains("baselines")) {
      for (const auto& e : j.at("baselines")) m.baselines.push_back(entry_from_json(e));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw error(std::string("manifest: ") + e.what());
  }
}

Manifest read_manifest_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return manifest_from_json(s.str());
}

Manifest generate_variants(const Dataset& train, const Dataset& test, const fs::path& out,
                           const GenerateOptions& options) {
  require_same_schema(train, test);
  fs::create_directories(out / "params");

  // One job per L spec; each writes the L file and its T counterpart.
  std::vector<VariantSpec> learn;
  for (const auto& s : all_variants()) {
    if (s.split == Split::L) learn.push_back(s);
  }
  std::vector<ManifestEntry> l_entries(learn.size());
  std::vector<ManifestEntry> t_entries(learn.size());
  parallel_for(learn.size(), options.workers, [&](std::size_t job) {
    const VariantSpec spec = learn[job];
    VariantSpec test_spec = spec;
    test_spec.split = Split::T;
    const std::string l_name = variant_name(spec);
    const std::string t_name = variant_name(test_spec);
    const Dataset l_raw = project_preset(train, spec.feature_set, options);
    const Dataset t_raw = project_preset(test, spec.feature_set, options);

    ManifestEntry l_entry;
    ManifestEntry t_entry;
    if (!spec.pmf) {
      l_entry = emit_dataset(l_raw, l_name, out);
      t_entry = emit_dataset(t_raw, t_name, out);
    } else if (spec.normalization == Normalization::None) {
      const auto fitted = pmf::fit_transform_dataset(l_raw);
      const auto pmf_file = emit_param(pmf_text(fitted.tables), "params/" + l_name + ".pmf", out);
      l_entry = emit_dataset(fitted.data, l_name, out);
      t_entry = emit_dataset(pmf::apply_tables(fitted.tables, t_raw), t_name, out);
      l_entry.pmf_params = t_entry.pmf_params = pmf_file;
    } else {
      const auto fitted = normalize::hybrid_normalize(l_raw, method_of(spec.normalization));
      const auto pmf_file = emit_param(pmf_text(fitted.tables), "params/" + l_name + ".pmf", out);
      const auto norm_file = emit_param(norm_text(fitted.params), "params/" + l_name + ".norm", out);
      l_entry = emit_dataset(fitted.data, l_name, out);
      t_entry = emit_dataset(normalize::apply_fitted(fitted.tables, fitted.params, t_raw), t_name, out);
      l_entry.pmf_params = t_entry.pmf_params = pmf_file;
      l_entry.norm_params = t_entry.norm_params = norm_file;
    }
    l_entries[job] = std::move(l_entry);
    t_entries[job] = std::move(t_entry);
  });

  Manifest manifest;
  manifest.datasets = std::move(l_entries);
  manifest.datasets.insert(manifest.datasets.end(), t_entries.begin(), t_entries.end());
  if (options.iana_baseline) {
    for (auto set : {PresetSet::MVF, PresetSet::MVRF}) {
      auto entries = generate_baseline_iana(train, test, set, out, options);
      manifest.baselines.insert(manifest.baselines.end(), entries.begin(), entries.end());
    }
  }
  write_bytes(out / "manifest.json", to_json(manifest));
  return manifest;
}

IanaTable parse_iana_table(std::istream& in) {
  IanaTable table;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 3) throw parse_error(number, "expected feature<TAB>symbol<TAB>number");
    const auto value = text::parse_real(fields[2]);
    if (!value) throw parse_error(number, "bad number '" + fields[2] + "'");
    if (!table[fields[0]].emplace(fields[1], *value).second) {
      throw parse_error(number, "duplicate entry for " + fields[0] + "/" + fields[1]);
    }
  }
  return table;
}

const IanaTable& bundled_iana_table() {
  static const IanaTable table = [] {
    std::istringstream in{std::string(detail::kIanaNumbersTsv)};
    return parse_iana_table(in);
  }();
  return table;
}

Dataset iana_encode(const Dataset& dataset, const IanaTable& table) {
  std::vector<FeatureDescriptor> descriptors;
  std::vector<Column> columns;
  for (std::size_t f = 0; f < dataset.num_features(); ++f) {
    const auto& d = dataset.descriptor(f);
    if (d.kind == FeatureKind::Numeric) {
      descriptors.push_back(d);
      columns.push_back(dataset.column(f));
      continue;
    }
    const auto numbers = table.find(d.name);
    if (numbers == table.end()) throw error("IANA table has no entries for feature '" + d.name + "'");
    Column c;
    c.values.reserve(dataset.num_rows());
    for (std::size_t r = 0; r < dataset.num_rows(); ++r) {
      const auto& symbol = dataset.symbol(f, r);
      const auto it = numbers->second.find(symbol);
      if (it == numbers->second.end()) {
        throw error("IANA table has no number for " + d.name + " symbol '" + symbol + "'");
      }
      c.values.push_back(it->second);
    }
    descriptors.push_back({d.name, f, FeatureKind::Numeric, {}});
    columns.push_back(std::move(c));
  }
  return Dataset(dataset.name(), std::move(descriptors), std::move(columns),
                 {dataset.labels().begin(), dataset.labels().end()});
}

std::vector<ManifestEntry> generate_baseline_iana(const Dataset& train, const Dataset& test, PresetSet set,
                                                  const fs::path& out, const GenerateOptions& options,
                                                  const IanaTable& table) {
  require_same_schema(train, test);
  fs::create_directories(out / "params");
  const std::string suffix = std::string(set_label(set)) + "+IANA+MN";
  const Dataset l_raw = iana_encode(project_preset(train, set, options), table);
  const Dataset t_raw = iana_encode(project_preset(test, set, options), table);

  const auto fitted = normalize::hybrid_normalize(l_raw, normalize::Method::MinMax);
  const auto norm_file = emit_param(norm_text(fitted.params), "params/L_" + suffix + ".norm", out);
  auto l_entry = emit_dataset(fitted.data, "L_" + suffix, out);
  auto t_entry = emit_dataset(normalize::apply_fitted(fitted.tables, fitted.params, t_raw), "T_" + suffix, out);
  l_entry.norm_params = t_entry.norm_params = norm_file;
  return {l_entry, t_entry};
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return sha256_hex(s.str());
}

}  // namespace netprep::gen
