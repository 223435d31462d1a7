#include "netprep/stats.hpp"

#include <cmath>

#include "netprep/error.hpp"

namespace netprep::stats {

MeanStd mean_stddev(std::span<const double> values) {
  if (values.empty()) throw error("mean/stddev of an empty vector");
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  if (values.size() < 2) return {mean, 0.0};
  double squares = 0.0;
  for (double v : values) squares += (v - mean) * (v - mean);
  return {mean, std::sqrt(squares / (n - 1.0))};
}

}  // namespace netprep::stats
