#include "netprep/info_gain.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "netprep/error.hpp"
#include "netprep/parallel.hpp"

namespace netprep::ig {

double entropy(std::span<const std::size_t> counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw error("entropy of an all-zero histogram");
  const auto n = static_cast<double>(total);
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

double label_entropy(const Dataset& dataset) {
  std::array<std::size_t, 2> counts{};
  for (auto l : dataset.labels()) ++counts[static_cast<std::size_t>(l)];
  return entropy(counts);
}

std::vector<std::size_t> partition_values(const Dataset& dataset, std::size_t feature, std::size_t k) {
  const auto& d = dataset.descriptor(feature);
  if (d.kind == FeatureKind::Nominal) {
    const auto codes = dataset.codes(feature);
    return {codes.begin(), codes.end()};
  }
  const auto column = dataset.numeric(feature);
  return discretize::apply(discretize::fit_equal_frequency(column, k, d.name), column);
}

double info_gain(std::span<const std::size_t> partition, std::span<const ClassLabel> labels) {
  if (partition.size() != labels.size()) throw error("info_gain: partition and label lengths differ");
  if (labels.empty()) throw error("info_gain: empty dataset");
  const std::size_t groups = *std::max_element(partition.begin(), partition.end()) + 1;
  std::vector<std::array<std::size_t, 2>> joint(groups, {0, 0});
  std::array<std::size_t, 2> totals{};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto l = static_cast<std::size_t>(labels[i]);
    ++joint[partition[i]][l];
    ++totals[l];
  }
  const auto n = static_cast<double>(labels.size());
  double conditional = 0.0;
  for (const auto& cell : joint) {
    const std::size_t size = cell[0] + cell[1];
    if (size == 0) continue;
    conditional += static_cast<double>(size) / n * entropy(cell);
  }
  // Rounding can push the difference a hair below zero.
  return std::max(0.0, entropy(totals) - conditional);
}

double info_gain(const Dataset& dataset, std::string_view feature, std::size_t k) {
  const std::size_t f = dataset.index_of(feature);
  if (dataset.num_rows() == 0) throw error("info_gain: empty dataset");
  const auto partition = partition_values(dataset, f, k);
  return info_gain(partition, dataset.labels());
}

IgRanking rank(const Dataset& dataset, const FeatureSet& features, std::size_t k, std::size_t workers) {
  const auto& members = features.members();
  for (const auto& m : members) (void)dataset.index_of(m);
  IgRanking ranking;
  ranking.bins_used = k;
  ranking.entries.resize(members.size());
  parallel_for(members.size(), workers, [&](std::size_t i) {
    ranking.entries[i] = {members[i], info_gain(dataset, members[i], k)};
  });
  std::sort(ranking.entries.begin(), ranking.entries.end(), [](const IgEntry& a, const IgEntry& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    return a.feature < b.feature;
  });
  return ranking;
}

}  // namespace netprep::ig
