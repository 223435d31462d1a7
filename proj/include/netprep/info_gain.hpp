#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netprep/dataset.hpp"
#include "netprep/discretize.hpp"

namespace netprep::ig {

/// Shannon entropy in bits of a count histogram; empty cells contribute 0.
double entropy(std::span<const std::size_t> counts);

/// Label entropy H(D).
double label_entropy(const Dataset& dataset);

/// Per-row partition values used as Attr in the gain formula: nominal codes,
/// or equal-frequency bin indices (fitted on this column) for numeric features.
std::vector<std::size_t> partition_values(const Dataset& dataset, std::size_t feature,
                                          std::size_t k = discretize::kDefaultBins);

/// H(D) - sum_Attr |D_Attr|/|D| * H(D_Attr).
double info_gain(const Dataset& dataset, std::string_view feature, std::size_t k = discretize::kDefaultBins);

/// Gain from pre-computed partition values; shared with the decision tree.
double info_gain(std::span<const std::size_t> partition, std::span<const ClassLabel> labels);

struct IgEntry {
  std::string feature;
  double gain = 0.0;

  friend bool operator==(const IgEntry&, const IgEntry&) = default;
};

struct IgRanking {
  std::vector<IgEntry> entries;  // descending gain, ties by ascending name
  std::size_t bins_used = discretize::kDefaultBins;

  friend bool operator==(const IgRanking&, const IgRanking&) = default;
};

IgRanking rank(const Dataset& dataset, const FeatureSet& features, std::size_t k = discretize::kDefaultBins,
               std::size_t workers = 1);

}  // namespace netprep::ig
