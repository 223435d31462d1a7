#include "netprep/discretize.hpp"

#include <algorithm>

#include "netprep/error.hpp"

namespace netprep::discretize {

std::size_t DiscretizationModel::bin_of(double value) const {
  return static_cast<std::size_t>(std::lower_bound(cut_points.begin(), cut_points.end(), value) - cut_points.begin());
}

DiscretizationModel fit_equal_frequency(std::span<const double> column, std::size_t k, std::string feature) {
  if (column.empty()) throw error("discretize: empty column" + (feature.empty() ? "" : " '" + feature + "'"));
  if (k < 1) throw error("discretize: bin count must be at least 1");

  std::vector<double> sorted(column.begin(), column.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();

  // Split position p separates sorted[p-1] | sorted[p]; legal when they differ.
  std::vector<std::size_t> legal;
  for (std::size_t p = 1; p < m; ++p) {
    if (sorted[p - 1] < sorted[p]) legal.push_back(p);
  }

  DiscretizationModel model{std::move(feature), {}, k};
  std::size_t last = 0;
  for (std::size_t j = 1; j < k && !legal.empty(); ++j) {
    const std::size_t target = j * m / k;
    // Candidates must lie strictly right of the previous split.
    const auto first_usable = std::upper_bound(legal.begin(), legal.end(), last);
    if (first_usable == legal.end()) break;
    auto right = std::lower_bound(first_usable, legal.end(), target);
    std::size_t chosen = 0;
    if (right == legal.end()) {
      chosen = *std::prev(right);
    } else if (right == first_usable) {
      chosen = *right;
    } else {
      const std::size_t r = *right;
      const std::size_t l = *std::prev(right);
      chosen = (target - l <= r - target) ? l : r;
    }
    if (chosen <= last) continue;
    last = chosen;
    const double lo = sorted[chosen - 1];
    const double hi = sorted[chosen];
    double cut = lo + (hi - lo) / 2.0;
    // Adjacent doubles: keep the cut strictly below hi so hi lands right of it.
    if (!(cut < hi)) cut = lo;
    model.cut_points.push_back(cut);
  }
  return model;
}

std::vector<std::size_t> apply(const DiscretizationModel& model, std::span<const double> column) {
  std::vector<std::size_t> bins;
  bins.reserve(column.size());
  for (double v : column) bins.push_back(model.bin_of(v));
  return bins;
}

}  // namespace netprep::discretize
