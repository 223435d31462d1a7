#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace netprep::discretize {

inline constexpr std::size_t kDefaultBins = 20;

struct DiscretizationModel {
  std::string feature;
  std::vector<double> cut_points;  // strictly ascending, at most k-1
  std::size_t k = kDefaultBins;

  [[nodiscard]] std::size_t bin_count() const noexcept { return cut_points.size() + 1; }
  /// Number of cut points strictly below `value`.
  [[nodiscard]] std::size_t bin_of(double value) const;

  friend bool operator==(const DiscretizationModel&, const DiscretizationModel&) = default;
};

/**
 * Equal-frequency binning.
 *
 * Sorted values are split at positions floor(j*M/k), j = 1..k-1. A split that
 * would separate equal values moves to the nearest position between distinct
 * values (ties resolved toward the left); positions that collapse onto an
 * earlier split are dropped. Cut points sit at the midpoint of the two
 * neighbouring distinct values.
 */
DiscretizationModel fit_equal_frequency(std::span<const double> column, std::size_t k = kDefaultBins,
                                        std::string feature = {});

/// Bin index per value; values outside the fitted range land in the edge bins.
std::vector<std::size_t> apply(const DiscretizationModel& model, std::span<const double> column);

}  // namespace netprep::discretize
