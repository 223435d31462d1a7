#pragma once

// Reference computations written independently of the library, used to check it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "netprep/dataset.hpp"

namespace oracle {

inline double entropy_of(const std::vector<netprep::ClassLabel>& labels) {
  std::map<int, double> counts;
  for (auto l : labels) counts[static_cast<int>(l)] += 1.0;
  double h = 0.0;
  for (const auto& [label, c] : counts) {
    const double p = c / static_cast<double>(labels.size());
    h -= p * (std::log(p) / std::log(2.0));
  }
  return h;
}

// Groups rows by key and sums weighted child entropies.
template <typename Key>
double info_gain(const std::vector<Key>& keys, const std::vector<netprep::ClassLabel>& labels) {
  std::map<Key, std::vector<netprep::ClassLabel>> groups;
  for (std::size_t i = 0; i < keys.size(); ++i) groups[keys[i]].push_back(labels[i]);
  double remainder = 0.0;
  for (const auto& [key, members] : groups) {
    remainder += static_cast<double>(members.size()) / static_cast<double>(labels.size()) * entropy_of(members);
  }
  return entropy_of(labels) - remainder;
}

struct Moments {
  long double mean = 0;
  long double sample_sd = 0;
};

inline Moments moments(const std::vector<double>& v) {
  long double sum = 0;
  for (double x : v) sum += x;
  const long double mean = sum / static_cast<long double>(v.size());
  long double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  Moments m;
  m.mean = mean;
  m.sample_sd = v.size() > 1 ? std::sqrt(ss / static_cast<long double>(v.size() - 1)) : 0;
  return m;
}

inline std::map<std::string, double> relative_frequencies(const std::vector<std::string>& column) {
  std::map<std::string, double> counts;
  for (const auto& s : column) counts[s] += 1.0;
  for (auto& [s, c] : counts) c /= static_cast<double>(column.size());
  return counts;
}

// Number of values in each bin label.
inline std::map<std::size_t, std::size_t> bin_sizes(const std::vector<std::size_t>& bins) {
  std::map<std::size_t, std::size_t> sizes;
  for (auto b : bins) ++sizes[b];
  return sizes;
}

struct Tally {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
};

inline Tally tally(const std::vector<netprep::ClassLabel>& truth, const std::vector<netprep::ClassLabel>& predicted) {
  using netprep::ClassLabel;
  Tally t;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool actual = truth[i] == ClassLabel::Anomaly;
    const bool flagged = predicted[i] == ClassLabel::Anomaly;
    if (actual && flagged) ++t.tp;
    if (!actual && flagged) ++t.fp;
    if (!actual && !flagged) ++t.tn;
    if (actual && !flagged) ++t.fn;
  }
  return t;
}

}  // namespace oracle
