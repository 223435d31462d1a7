#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace netprep {

enum class FeatureKind { Nominal, Numeric };

/// Binary class label. Anomaly is the positive class everywhere.
enum class ClassLabel : std::uint8_t { Normal, Anomaly };

std::string_view to_string(FeatureKind kind);
std::string_view to_string(ClassLabel label);

/// Maps a raw label symbol to the binary alphabet: "normal" (any case) is
/// Normal, every other symbol is an attack and becomes Anomaly.
ClassLabel label_from_symbol(std::string_view symbol);

struct FeatureDescriptor {
  std::string name;
  std::size_t index = 0;
  FeatureKind kind = FeatureKind::Numeric;
  std::vector<std::string> domain;  // nominal only

  [[nodiscard]] std::optional<std::uint32_t> code_of(std::string_view symbol) const;

  friend bool operator==(const FeatureDescriptor&, const FeatureDescriptor&) = default;
};

/// One feature column. Numeric features use `values`; nominal features store
/// indices into the descriptor's domain in `codes`.
struct Column {
  std::vector<double> values;
  std::vector<std::uint32_t> codes;

  friend bool operator==(const Column&, const Column&) = default;
};

/**
 * Columnar feature table with a binary label vector.
 *
 * A Dataset is validated on construction and immutable afterwards: all columns
 * have the label vector's length, names are unique, nominal codes lie inside
 * their domain and numeric cells are finite.
 */
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::string name, std::vector<FeatureDescriptor> descriptors, std::vector<Column> columns,
          std::vector<ClassLabel> labels);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t num_rows() const noexcept { return labels_.size(); }
  [[nodiscard]] std::size_t num_features() const noexcept { return descriptors_.size(); }

  [[nodiscard]] const std::vector<FeatureDescriptor>& descriptors() const noexcept { return descriptors_; }
  [[nodiscard]] const FeatureDescriptor& descriptor(std::size_t feature) const { return descriptors_.at(feature); }
  [[nodiscard]] const Column& column(std::size_t feature) const { return columns_.at(feature); }
  [[nodiscard]] std::span<const ClassLabel> labels() const noexcept { return labels_; }

  [[nodiscard]] std::optional<std::size_t> find(std::string_view feature_name) const;
  /// Like find() but throws netprep::error for an unknown name.
  [[nodiscard]] std::size_t index_of(std::string_view feature_name) const;

  [[nodiscard]] std::span<const double> numeric(std::size_t feature) const;
  [[nodiscard]] std::span<const std::uint32_t> codes(std::size_t feature) const;
  [[nodiscard]] const std::string& symbol(std::size_t feature, std::size_t row) const;

  [[nodiscard]] std::size_t count_kind(FeatureKind kind) const;

  [[nodiscard]] Dataset renamed(std::string name) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::string name_;
  std::vector<FeatureDescriptor> descriptors_;
  std::vector<Column> columns_;
  std::vector<ClassLabel> labels_;
};

/// Incremental construction helper; validation happens in build().
class DatasetBuilder {
 public:
  explicit DatasetBuilder(std::string name = "dataset") : name_(std::move(name)) {}

  DatasetBuilder& numeric(std::string name, std::vector<double> values);
  /// Domain is the order of first appearance.
  DatasetBuilder& nominal(std::string name, const std::vector<std::string>& symbols);
  DatasetBuilder& nominal(std::string name, std::vector<std::string> domain, const std::vector<std::string>& symbols);
  DatasetBuilder& labels(std::vector<ClassLabel> labels);

  [[nodiscard]] Dataset build() const;

 private:
  std::string name_;
  std::vector<FeatureDescriptor> descriptors_;
  std::vector<Column> columns_;
  std::vector<ClassLabel> labels_;
};

/// Named, ordered list of feature names used for projection.
class FeatureSet {
 public:
  enum class Kind { MVF, MVRF, Custom };

  /// The 11 most valuable features.
  static FeatureSet mvf();
  /// The 19 most valuable and relevant features.
  static FeatureSet mvrf();
  static FeatureSet custom(std::vector<std::string> members);
  /// Every feature of `dataset` in column order.
  static FeatureSet all_of(const Dataset& dataset);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] std::string_view label() const noexcept;
  [[nodiscard]] const std::vector<std::string>& members() const noexcept { return members_; }
  [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }

  /// Applies a preset-name -> schema-name mapping; kind is kept.
  [[nodiscard]] FeatureSet renamed(const std::map<std::string, std::string>& mapping) const;

  friend bool operator==(const FeatureSet&, const FeatureSet&) = default;

 private:
  FeatureSet(Kind kind, std::vector<std::string> members);

  Kind kind_ = Kind::Custom;
  std::vector<std::string> members_;
};

/// Rename mapping that fits the presets to the canonical 41-column NSL-KDD
/// schema, which has no column literally called "error_rate".
std::map<std::string, std::string> nsl_kdd_preset_renames();

/// Throws netprep::error unless both datasets have the same feature names and
/// kinds in the same order. Nominal domains may differ.
void require_same_schema(const Dataset& reference, const Dataset& other);

/// Keeps exactly the members of `set`, in set order, plus the labels.
Dataset project(const Dataset& dataset, const FeatureSet& set);

/// Drops one feature column.
Dataset without_feature(const Dataset& dataset, std::size_t feature);

/// Result of split_by_kind. `from_nominal[i]` records whether output column i
/// of the original dataset came from the nominal part.
struct KindSplit {
  Dataset nominal;
  Dataset numeric;
  std::vector<bool> from_nominal;
};

KindSplit split_by_kind(const Dataset& dataset);

/// Interleaves the two parts back into original order. The parts may have been
/// transformed (e.g. nominal columns mapped to numeric) as long as their column
/// counts and row counts are unchanged.
Dataset rejoin(const Dataset& nominal_part, const Dataset& numeric_part, const std::vector<bool>& from_nominal,
               std::string name);
Dataset rejoin(const KindSplit& split);

}  // namespace netprep
