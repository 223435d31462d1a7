#include "netprep/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "netprep/error.hpp"
#include "netprep/text.hpp"

namespace netprep {

std::string_view to_string(FeatureKind kind) { return kind == FeatureKind::Nominal ? "nominal" : "numeric"; }

std::string_view to_string(ClassLabel label) { return label == ClassLabel::Normal ? "normal" : "anomaly"; }

ClassLabel label_from_symbol(std::string_view symbol) {
  return text::iequals(symbol, "normal") ? ClassLabel::Normal : ClassLabel::Anomaly;
}

std::optional<std::uint32_t> FeatureDescriptor::code_of(std::string_view symbol) const {
  const auto it = std::find(domain.begin(), domain.end(), symbol);
  if (it == domain.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - domain.begin());
}

Dataset::Dataset(std::string name, std::vector<FeatureDescriptor> descriptors, std::vector<Column> columns,
                 std::vector<ClassLabel> labels)
    : name_(std::move(name)),
      descriptors_(std::move(descriptors)),
      columns_(std::move(columns)),
      labels_(std::move(labels)) {
  if (descriptors_.size() != columns_.size()) {
    throw error("dataset '" + name_ + "': descriptor count does not match column count");
  }
  const std::size_t rows = labels_.size();
  std::unordered_set<std::string> names;
  for (std::size_t f = 0; f < descriptors_.size(); ++f) {
    auto& d = descriptors_[f];
    d.index = f;
    if (!names.insert(d.name).second) throw error("dataset '" + name_ + "': duplicate feature name '" + d.name + "'");
    const Column& c = columns_[f];
    if (d.kind == FeatureKind::Numeric) {
      if (!d.domain.empty()) throw error("numeric feature '" + d.name + "' must not carry a domain");
      if (c.values.size() != rows || !c.codes.empty()) {
        throw error("feature '" + d.name + "': column length does not match label count");
      }
      if (!std::all_of(c.values.begin(), c.values.end(), [](double v) { return std::isfinite(v); })) {
        throw error("feature '" + d.name + "': non-finite value");
      }
    } else {
      std::unordered_set<std::string> seen;
      for (const auto& s : d.domain) {
        if (!seen.insert(s).second) throw error("feature '" + d.name + "': duplicate domain symbol '" + s + "'");
      }
      if (c.codes.size() != rows || !c.values.empty()) {
        throw error("feature '" + d.name + "': column length does not match label count");
      }
      for (auto code : c.codes) {
        if (code >= d.domain.size()) throw error("feature '" + d.name + "': symbol code outside domain");
      }
    }
  }
}

std::optional<std::size_t> Dataset::find(std::string_view feature_name) const {
  for (const auto& d : descriptors_) {
    if (d.name == feature_name) return d.index;
  }
  return std::nullopt;
}

std::size_t Dataset::index_of(std::string_view feature_name) const {
  if (auto idx = find(feature_name)) return *idx;
  throw error("unknown feature '" + std::string(feature_name) + "' in dataset '" + name_ + "'");
}

std::span<const double> Dataset::numeric(std::size_t feature) const {
  if (descriptor(feature).kind != FeatureKind::Numeric) {
    throw error("feature '" + descriptors_[feature].name + "' is not numeric");
  }
  return columns_[feature].values;
}

std::span<const std::uint32_t> Dataset::codes(std::size_t feature) const {
  if (descriptor(feature).kind != FeatureKind::Nominal) {
    throw error("feature '" + descriptors_[feature].name + "' is not nominal");
  }
  return columns_[feature].codes;
}

const std::string& Dataset::symbol(std::size_t feature, std::size_t row) const {
  return descriptors_[feature].domain[codes(feature)[row]];
}

std::size_t Dataset::count_kind(FeatureKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(descriptors_.begin(), descriptors_.end(), [kind](const auto& d) { return d.kind == kind; }));
}

Dataset Dataset::renamed(std::string name) const {
  Dataset copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

// --- DatasetBuilder ---------------------------------------------------------

DatasetBuilder& DatasetBuilder::numeric(std::string name, std::vector<double> values) {
  descriptors_.push_back({std::move(name), descriptors_.size(), FeatureKind::Numeric, {}});
  columns_.push_back({std::move(values), {}});
  return *this;
}

DatasetBuilder& DatasetBuilder::nominal(std::string name, const std::vector<std::string>& symbols) {
  std::vector<std::string> domain;
  std::unordered_set<std::string> seen;
  for (const auto& s : symbols) {
    if (seen.insert(s).second) domain.push_back(s);
  }
  return nominal(std::move(name), std::move(domain), symbols);
}

DatasetBuilder& DatasetBuilder::nominal(std::string name, std::vector<std::string> domain,
                                        const std::vector<std::string>& symbols) {
  std::unordered_map<std::string, std::uint32_t> lookup;
  for (std::size_t i = 0; i < domain.size(); ++i) lookup.emplace(domain[i], static_cast<std::uint32_t>(i));
  Column col;
  col.codes.reserve(symbols.size());
  for (const auto& s : symbols) {
    const auto it = lookup.find(s);
    if (it == lookup.end()) throw error("feature '" + name + "': symbol '" + s + "' not in domain");
    col.codes.push_back(it->second);
  }
  descriptors_.push_back({std::move(name), descriptors_.size(), FeatureKind::Nominal, std::move(domain)});
  columns_.push_back(std::move(col));
  return *this;
}

DatasetBuilder& DatasetBuilder::labels(std::vector<ClassLabel> labels) {
  labels_ = std::move(labels);
  return *this;
}

Dataset DatasetBuilder::build() const { return Dataset(name_, descriptors_, columns_, labels_); }

// --- FeatureSet -------------------------------------------------------------

FeatureSet::FeatureSet(Kind kind, std::vector<std::string> members) : kind_(kind), members_(std::move(members)) {
  std::set<std::string> seen;
  for (const auto& m : members_) {
    if (!seen.insert(m).second) throw error("feature set: duplicate member '" + m + "'");
  }
}

FeatureSet FeatureSet::mvf() {
  return FeatureSet(Kind::MVF, {"service", "src_bytes", "dst_host_serror_rate", "error_rate",
                                "dst_host_srv_diff_host_rate", "protocol_type", "rerror_rate", "srv_rerror_rate",
                                "wrong_fragment", "num_compromised", "num_access_files"});
}

FeatureSet FeatureSet::mvrf() {
  return FeatureSet(Kind::MVRF,
                    {"service", "src_bytes", "diff_srv_rate", "same_srv_rate", "dst_host_srv_count", "logged_in",
                     "dst_host_serror_rate", "error_rate", "srv_serror_rate", "dst_host_srv_diff_host_rate",
                     "protocol_type", "rerror_rate", "srv_rerror_rate", "hot", "wrong_fragment", "num_compromised",
                     "num_access_files", "root_shell", "num_failed_logins"});
}

FeatureSet FeatureSet::custom(std::vector<std::string> members) { return FeatureSet(Kind::Custom, std::move(members)); }

FeatureSet FeatureSet::all_of(const Dataset& dataset) {
  std::vector<std::string> names;
  for (const auto& d : dataset.descriptors()) names.push_back(d.name);
  return custom(std::move(names));
}

std::string_view FeatureSet::label() const noexcept {
  switch (kind_) {
    case Kind::MVF:
      return "MVF";
    case Kind::MVRF:
      return "MVRF";
    case Kind::Custom:
      break;
  }
  return "Custom";
}

FeatureSet FeatureSet::renamed(const std::map<std::string, std::string>& mapping) const {
  std::vector<std::string> out = members_;
  for (auto& m : out) {
    if (auto it = mapping.find(m); it != mapping.end()) m = it->second;
  }
  return FeatureSet(kind_, std::move(out));
}

std::map<std::string, std::string> nsl_kdd_preset_renames() { return {{"error_rate", "serror_rate"}}; }

// --- projection / split -----------------------------------------------------

void require_same_schema(const Dataset& reference, const Dataset& other) {
  if (reference.num_features() != other.num_features()) {
    throw error("schema mismatch: '" + reference.name() + "' has " + std::to_string(reference.num_features()) +
                " features, '" + other.name() + "' has " + std::to_string(other.num_features()));
  }
  for (std::size_t f = 0; f < reference.num_features(); ++f) {
    const auto& a = reference.descriptor(f);
    const auto& b = other.descriptor(f);
    if (a.name != b.name || a.kind != b.kind) {
      throw error("schema mismatch at column " + std::to_string(f) + ": '" + a.name + "' (" +
                  std::string(to_string(a.kind)) + ") vs '" + b.name + "' (" + std::string(to_string(b.kind)) + ")");
    }
  }
}

Dataset project(const Dataset& dataset, const FeatureSet& set) {
  std::vector<FeatureDescriptor> descriptors;
  std::vector<Column> columns;
  for (const auto& member : set.members()) {
    const auto idx = dataset.find(member);
    if (!idx) {
      std::string message = "unknown feature '" + member + "' in dataset '" + dataset.name() + "'";
      if (set.kind() != FeatureSet::Kind::Custom) {
        message += " (preset " + std::string(set.label()) +
                   " uses the published spelling; supply a rename mapping such as error_rate=serror_rate)";
      }
      throw error(message);
    }
    descriptors.push_back(dataset.descriptor(*idx));
    columns.push_back(dataset.column(*idx));
  }
  return Dataset(dataset.name(), std::move(descriptors), std::move(columns),
                 {dataset.labels().begin(), dataset.labels().end()});
}

Dataset without_feature(const Dataset& dataset, std::size_t feature) {
  std::vector<FeatureDescriptor> descriptors;
  std::vector<Column> columns;
  for (std::size_t f = 0; f < dataset.num_features(); ++f) {
    if (f == feature) continue;
    descriptors.push_back(dataset.descriptor(f));
    columns.push_back(dataset.column(f));
  }
  return Dataset(dataset.name(), std::move(descriptors), std::move(columns),
                 {dataset.labels().begin(), dataset.labels().end()});
}

KindSplit split_by_kind(const Dataset& dataset) {
  std::vector<std::string> nominal_names;
  std::vector<std::string> numeric_names;
  std::vector<bool> from_nominal;
  for (const auto& d : dataset.descriptors()) {
    const bool nominal = d.kind == FeatureKind::Nominal;
    (nominal ? nominal_names : numeric_names).push_back(d.name);
    from_nominal.push_back(nominal);
  }
  return {project(dataset, FeatureSet::custom(std::move(nominal_names))),
          project(dataset, FeatureSet::custom(std::move(numeric_names))), std::move(from_nominal)};
}

Dataset rejoin(const Dataset& nominal_part, const Dataset& numeric_part, const std::vector<bool>& from_nominal,
               std::string name) {
  const auto nominal_count = static_cast<std::size_t>(std::count(from_nominal.begin(), from_nominal.end(), true));
  if (nominal_count != nominal_part.num_features() ||
      from_nominal.size() - nominal_count != numeric_part.num_features()) {
    throw error("rejoin: part widths do not match the recorded interleaving");
  }
  if (nominal_part.num_rows() != numeric_part.num_rows() ||
      !std::equal(nominal_part.labels().begin(), nominal_part.labels().end(), numeric_part.labels().begin())) {
    throw error("rejoin: parts carry different label vectors");
  }
  std::vector<FeatureDescriptor> descriptors;
  std::vector<Column> columns;
  std::size_t next_nominal = 0;
  std::size_t next_numeric = 0;
  for (bool nominal : from_nominal) {
    const Dataset& part = nominal ? nominal_part : numeric_part;
    const std::size_t f = nominal ? next_nominal++ : next_numeric++;
    descriptors.push_back(part.descriptor(f));
    columns.push_back(part.column(f));
  }
  return Dataset(std::move(name), std::move(descriptors), std::move(columns),
                 {numeric_part.labels().begin(), numeric_part.labels().end()});
}

Dataset rejoin(const KindSplit& split) {
  return rejoin(split.nominal, split.numeric, split.from_nominal, split.numeric.name());
}

}  // namespace netprep
