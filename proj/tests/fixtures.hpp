#pragma once

// Seeded dataset factories shared by the unit tests and the acceptance suite.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "netprep/dataset.hpp"

namespace fixtures {

inline netprep::ClassLabel random_label(std::mt19937_64& rng) {
  return std::bernoulli_distribution(0.5)(rng) ? netprep::ClassLabel::Anomaly : netprep::ClassLabel::Normal;
}

// Small all-nominal dataset: up to `max_rows` rows, `max_features` features, `max_symbols` symbols each.
inline netprep::Dataset small_nominal(std::mt19937_64& rng, std::size_t max_rows = 30, std::size_t max_features = 4,
                                      std::size_t max_symbols = 4) {
  const auto rows = std::uniform_int_distribution<std::size_t>(1, max_rows)(rng);
  const auto features = std::uniform_int_distribution<std::size_t>(1, max_features)(rng);
  netprep::DatasetBuilder b("random");
  for (std::size_t f = 0; f < features; ++f) {
    const auto symbols = std::uniform_int_distribution<std::size_t>(1, max_symbols)(rng);
    std::uniform_int_distribution<std::size_t> pick(0, symbols - 1);
    std::vector<std::string> column;
    for (std::size_t r = 0; r < rows; ++r) column.push_back("s" + std::to_string(pick(rng)));
    b.nominal("f" + std::to_string(f), column);
  }
  std::vector<netprep::ClassLabel> labels;
  for (std::size_t r = 0; r < rows; ++r) labels.push_back(random_label(rng));
  return b.labels(labels).build();
}

// Mixed dataset whose names and symbols exercise quoting in ARFF and CSV.
inline netprep::Dataset awkward_mixed(std::mt19937_64& rng) {
  static const std::vector<std::string> alphabet{"tcp",  "udp",   "a b",  "x,y", "it's", "say \"hi\"",
                                                 "?",    "",      "{br}", "50%", "back\\slash", "UDP"};
  static const std::vector<std::string> names{"duration", "proto type", "svc,name", "it's", "weird\"col", "rate%"};
  const auto rows = std::uniform_int_distribution<std::size_t>(0, 40)(rng);
  const auto features = std::uniform_int_distribution<std::size_t>(1, names.size())(rng);
  netprep::DatasetBuilder b("rt " + std::to_string(rows));
  for (std::size_t f = 0; f < features; ++f) {
    if (std::bernoulli_distribution(0.5)(rng)) {
      std::vector<double> values;
      std::uniform_real_distribution<double> u(-1e6, 1e6);
      const int scale = std::uniform_int_distribution<int>(-8, 8)(rng);
      for (std::size_t r = 0; r < rows; ++r) values.push_back(u(rng) * std::pow(10.0, scale));
      b.numeric(names[f], values);
    } else {
      std::vector<std::string> domain;
      for (const auto& s : alphabet) {
        if (std::bernoulli_distribution(0.5)(rng)) domain.push_back(s);
      }
      if (domain.empty()) domain.push_back("only");
      std::uniform_int_distribution<std::size_t> pick(0, domain.size() - 1);
      std::vector<std::string> column;
      for (std::size_t r = 0; r < rows; ++r) column.push_back(domain[pick(rng)]);
      b.nominal(names[f], domain, column);
    }
  }
  std::vector<netprep::ClassLabel> labels;
  for (std::size_t r = 0; r < rows; ++r) labels.push_back(random_label(rng));
  return b.labels(labels).build();
}

// Label is anomaly iff x1 + x2 > 1; noise1..noise4 are independent uniform columns.
inline netprep::Dataset joint_sum(std::size_t rows, std::uint64_t seed, const std::string& name) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> cols(6, std::vector<double>(rows));
  std::vector<netprep::ClassLabel> labels(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (auto& c : cols) c[r] = u(rng);
    labels[r] = cols[0][r] + cols[1][r] > 1.0 ? netprep::ClassLabel::Anomaly : netprep::ClassLabel::Normal;
  }
  netprep::DatasetBuilder b(name);
  b.numeric("x1", cols[0]).numeric("noise1", cols[2]).numeric("noise2", cols[3]);
  b.numeric("x2", cols[1]).numeric("noise3", cols[4]).numeric("noise4", cols[5]);
  return b.labels(labels).build();
}

}  // namespace fixtures
