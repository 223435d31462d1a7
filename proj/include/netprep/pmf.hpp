#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "netprep/dataset.hpp"

namespace netprep::pmf {

/**
 * Relative-frequency mapping for one nominal feature.
 *
 * Stores the absolute count r of every symbol seen in a sample of size M; a
 * symbol's numeric value is r / M. Symbols never seen map to 0.
 */
class PmfTable {
 public:
  using SymbolCounts = std::map<std::string, std::size_t, std::less<>>;

  PmfTable() = default;
  PmfTable(std::string feature, SymbolCounts counts);

  [[nodiscard]] const std::string& feature() const noexcept { return feature_; }
  [[nodiscard]] std::size_t sample_size() const noexcept { return sample_size_; }
  [[nodiscard]] const SymbolCounts& counts() const noexcept { return counts_; }

  [[nodiscard]] std::size_t count(std::string_view symbol) const;
  [[nodiscard]] double frequency(std::string_view symbol) const;

  friend bool operator==(const PmfTable&, const PmfTable&) = default;

 private:
  std::string feature_;
  SymbolCounts counts_;
  std::size_t sample_size_ = 0;
};

PmfTable fit(std::span<const std::string> column, std::string feature = {});
/// Fit on a nominal dataset column.
PmfTable fit(const Dataset& dataset, std::size_t feature);

std::vector<double> transform(const PmfTable& table, std::span<const std::string> column);
std::vector<double> transform(const PmfTable& table, const Dataset& dataset, std::size_t feature);

struct PmfResult {
  Dataset data;
  std::vector<PmfTable> tables;  // one per nominal feature, column order
};

/// Replaces every nominal column with its relative-frequency column.
PmfResult fit_transform_dataset(const Dataset& dataset);

/// Applies previously fitted tables to every nominal column of `dataset`.
/// Throws if a nominal feature has no table.
Dataset apply_tables(const std::vector<PmfTable>& tables, const Dataset& dataset);

// --- streaming --------------------------------------------------------------

using Cell = std::variant<double, std::string>;
using Record = std::vector<Cell>;

/**
 * Sliding-window online mapping.
 *
 * Records are buffered into consecutive, non-overlapping windows of
 * `window_length` records. When a window fills, each nominal field is fitted
 * on that window alone, the window's records are mapped, and the numeric
 * records are returned in arrival order.
 */
class StreamMapper {
 public:
  StreamMapper(std::vector<FeatureKind> kinds, std::size_t window_length);

  /// Returns the mapped window when this record completes one, else nothing.
  std::vector<std::vector<double>> push(Record record);
  /// Maps a trailing partial window with its own (smaller) sample size.
  std::vector<std::vector<double>> flush();

  [[nodiscard]] std::size_t window_length() const noexcept { return window_length_; }
  [[nodiscard]] std::size_t buffered() const noexcept { return buffer_.size(); }

 private:
  std::vector<std::vector<double>> map_window();

  std::vector<FeatureKind> kinds_;
  std::size_t window_length_;
  std::vector<Record> buffer_;
};

/// Whole-stream convenience wrapper around StreamMapper.
std::vector<std::vector<double>> stream_map(std::span<const Record> records, const std::vector<FeatureKind>& kinds,
                                            std::size_t window_length);

// --- persistence ------------------------------------------------------------
// "# M=<sample_size>" followed by "feature<TAB>symbol<TAB>count<TAB>frequency"
// lines, one block per table.

void write_tables(const std::vector<PmfTable>& tables, std::ostream& out);
std::vector<PmfTable> read_tables(std::istream& in);

}  // namespace netprep::pmf
