#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netprep/classifiers.hpp"
#include "netprep/dataset.hpp"
#include "netprep/info_gain.hpp"

namespace netprep::sbs {

enum class Metric { DetectionRate, FalsePositiveRate };
enum class Mode { Strict, WithBoundary };
enum class MetricRule { Either, Both };

std::string_view to_string(Metric metric);
std::string_view to_string(Mode mode);
std::string_view to_string(MetricRule rule);
Mode parse_mode(std::string_view text);
MetricRule parse_metric_rule(std::string_view text);

/// Relative tolerance for "on the margin".
inline constexpr double kBoundaryTolerance = 1e-6;

struct ThresholdMargin {
  std::string classifier;
  Metric metric = Metric::DetectionRate;
  double mu = 0.0;
  double sigma = 0.0;
  double lower = 0.0;
  double upper = 0.0;

  friend bool operator==(const ThresholdMargin&, const ThresholdMargin&) = default;
};

/// mu, sample sigma (N-1) and the interval [mu - sigma, mu + sigma].
/// Requires at least two values.
ThresholdMargin compute_threshold_margin(std::span<const double> values);

/// Metrics of one classifier trained and tested without one feature.
struct RunRecord {
  std::string feature;
  std::string classifier;
  double detection_rate = 0.0;
  double false_positive_rate = 0.0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct SbsConfig {
  std::vector<classify::Algorithm> classifiers{classify::Algorithm::NaiveBayes, classify::Algorithm::DecisionTree};
  classify::TrainConfig train;
  Mode mode = Mode::Strict;
  MetricRule rule = MetricRule::Either;
  std::size_t k_bins = discretize::kDefaultBins;
  std::size_t workers = 1;
};

/**
 * Leave-one-feature-out runs. For every feature, each classifier is trained on
 * `train` without that feature and evaluated on `test` without it. Inputs are
 * hybrid-normalized (PMF + min-max, fitted on `train`) first so every
 * classifier sees numeric data. Records are ordered by feature, then by
 * classifier in configuration order.
 */
std::vector<RunRecord> leave_one_out_runs(const Dataset& train, const Dataset& test,
                                          std::span<const classify::Algorithm> classifiers,
                                          const classify::TrainConfig& config = {}, std::size_t workers = 1);

/// One margin per (classifier, metric) over that classifier's removal runs.
std::vector<ThresholdMargin> compute_margins(std::span<const RunRecord> runs);

struct Partition {
  std::vector<std::string> f_plus;
  std::vector<std::string> f_minus;
};

/// Selects a feature when, for every classifier, its removal-run metrics fall
/// outside the margins (either metric or both, per `rule`). WithBoundary also
/// accepts values on a margin endpoint.
Partition partition(std::span<const RunRecord> runs, std::span<const ThresholdMargin> margins, Mode mode,
                    MetricRule rule = MetricRule::Either);

struct FeatureSelectionResult {
  std::vector<std::string> f_plus;
  std::vector<std::string> f_minus;
  std::vector<RunRecord> runs;
  std::vector<ThresholdMargin> margins;
  ig::IgRanking ranking;  // over f_plus
  Mode mode = Mode::Strict;
  MetricRule rule = MetricRule::Either;
};

FeatureSelectionResult run_modified_sbs(const Dataset& train, const Dataset& test, const SbsConfig& config);

/// Deterministic JSON; contains no timing fields.
std::string to_json(const FeatureSelectionResult& result);
/// Fixed-width text table for people.
std::string to_report(const FeatureSelectionResult& result);

}  // namespace netprep::sbs
