#pragma once

#include <span>

namespace netprep::stats {

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, N-1 denominator
};

/// Two-pass mean and sample standard deviation. A single value has stddev 0.
/// Throws netprep::error on empty input.
MeanStd mean_stddev(std::span<const double> values);

}  // namespace netprep::stats
