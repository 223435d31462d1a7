#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "netprep/dataset.hpp"

namespace netprep::synthetic {

/// The 41 NSL-KDD feature names in canonical column order.
const std::vector<std::string>& nsl_kdd_feature_names();

/// Column schema of NSL-KDD: protocol_type, service and flag are nominal with
/// the full NSL-KDD symbol sets, every other feature is numeric.
std::vector<FeatureDescriptor> nsl_kdd_schema();

/**
 * Seeded stand-in for an NSL-KDD sample, used when the real files are absent.
 *
 * Rows follow the NSL-KDD schema. Normal traffic and four attack families
 * (SYN flood, ICMP flood, probing, remote-to-local) are drawn from
 * family-specific distributions that overlap, with a small fraction of flipped
 * labels. Byte counts span several orders of magnitude while the rate
 * features stay in [0,1], reproducing the scale disparity of the real data.
 */
Dataset nsl_kdd_like(std::size_t rows, std::uint64_t seed, std::string name = "nsl_kdd_synthetic");

}  // namespace netprep::synthetic
