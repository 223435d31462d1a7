#include "netprep/sbs.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

#include "netprep/error.hpp"
#include "netprep/normalize.hpp"
#include "netprep/parallel.hpp"
#include "netprep/stats.hpp"
#include "netprep/text.hpp"

namespace netprep::sbs {

std::string_view to_string(Metric metric) {
  return metric == Metric::DetectionRate ? "detection_rate" : "false_positive_rate";
}
std::string_view to_string(Mode mode) { return mode == Mode::Strict ? "strict" : "boundary"; }
std::string_view to_string(MetricRule rule) { return rule == MetricRule::Either ? "either" : "both"; }

Mode parse_mode(std::string_view text) {
  const auto t = text::to_lower(text::trim(text));
  if (t == "strict") return Mode::Strict;
  if (t == "boundary" || t == "withboundary") return Mode::WithBoundary;
  throw error("unknown selection mode '" + std::string(text) + "'");
}

MetricRule parse_metric_rule(std::string_view text) {
  const auto t = text::to_lower(text::trim(text));
  if (t == "either") return MetricRule::Either;
  if (t == "both") return MetricRule::Both;
  throw error("unknown metric rule '" + std::string(text) + "'");
}

ThresholdMargin compute_threshold_margin(std::span<const double> values) {
  if (values.size() < 2) throw error("threshold margin needs at least two values");
  const auto s = stats::mean_stddev(values);
  ThresholdMargin m;
  m.mu = s.mean;
  m.sigma = s.stddev;
  m.lower = s.mean - s.stddev;
  m.upper = s.mean + s.stddev;
  return m;
}

std::vector<RunRecord> leave_one_out_runs(const Dataset& train, const Dataset& test,
                                          std::span<const classify::Algorithm> classifiers,
                                          const classify::TrainConfig& config, std::size_t workers) {
  if (classifiers.empty()) throw error("leave-one-out: no classifiers configured");
  if (train.num_features() < 2) throw error("leave-one-out: need at least two features");
  require_same_schema(train, test);

  // PMF and min-max act column by column, so normalizing once and then dropping
  // a column equals normalizing each reduced dataset separately.
  const auto fitted = normalize::hybrid_normalize(train, normalize::Method::MinMax);
  const Dataset norm_test = normalize::apply_fitted(fitted.tables, fitted.params, test);
  const Dataset& norm_train = fitted.data;

  const std::size_t features = train.num_features();
  const std::size_t per_feature = classifiers.size();
  std::vector<RunRecord> runs(features * per_feature);
  parallel_for(runs.size(), workers, [&](std::size_t job) {
    const std::size_t f = job / per_feature;
    const auto algorithm = classifiers[job % per_feature];
    const Dataset reduced_train = without_feature(norm_train, f);
    const Dataset reduced_test = without_feature(norm_test, f);
    const auto model = classify::train(algorithm, reduced_train, config);
    const auto report = classify::evaluate(model, reduced_test);
    runs[job] = {train.descriptor(f).name, std::string(classify::to_string(algorithm)), report.detection_rate,
                 report.false_positive_rate};
  });
  return runs;
}

namespace {

std::vector<std::string> ordered_unique(std::span<const RunRecord> runs, std::string RunRecord::*field) {
  std::vector<std::string> out;
  for (const auto& r : runs) {
    if (std::find(out.begin(), out.end(), r.*field) == out.end()) out.push_back(r.*field);
  }
  return out;
}

bool on_boundary(double v, double endpoint) {
  return v == endpoint || std::fabs(v - endpoint) <= kBoundaryTolerance * std::max(std::fabs(v), std::fabs(endpoint));
}

bool outside(double v, const ThresholdMargin& m, Mode mode) {
  const bool on = on_boundary(v, m.lower) || on_boundary(v, m.upper);
  const bool beyond = v < m.lower || v > m.upper;
  return mode == Mode::Strict ? beyond && !on : beyond || on;
}

}  // namespace

std::vector<ThresholdMargin> compute_margins(std::span<const RunRecord> runs) {
  std::vector<ThresholdMargin> margins;
  for (const auto& classifier : ordered_unique(runs, &RunRecord::classifier)) {
    std::vector<double> dr;
    std::vector<double> fpr;
    for (const auto& r : runs) {
      if (r.classifier != classifier) continue;
      dr.push_back(r.detection_rate);
      fpr.push_back(r.false_positive_rate);
    }
    auto m = compute_threshold_margin(dr);
    m.classifier = classifier;
    m.metric = Metric::DetectionRate;
    margins.push_back(m);
    m = compute_threshold_margin(fpr);
    m.classifier = classifier;
    m.metric = Metric::FalsePositiveRate;
    margins.push_back(m);
  }
  return margins;
}

Partition partition(std::span<const RunRecord> runs, std::span<const ThresholdMargin> margins, Mode mode,
                    MetricRule rule) {
  auto find_margin = [&](const std::string& classifier, Metric metric) -> const ThresholdMargin& {
    for (const auto& m : margins) {
      if (m.classifier == classifier && m.metric == metric) return m;
    }
    throw error("no " + std::string(to_string(metric)) + " margin for classifier '" + classifier + "'");
  };
  std::vector<std::string> classifiers;
  for (const auto& m : margins) {
    if (std::find(classifiers.begin(), classifiers.end(), m.classifier) == classifiers.end()) {
      classifiers.push_back(m.classifier);
    }
  }

  Partition out;
  for (const auto& feature : ordered_unique(runs, &RunRecord::feature)) {
    bool selected = !classifiers.empty();
    for (const auto& classifier : classifiers) {
      const auto it = std::find_if(runs.begin(), runs.end(), [&](const RunRecord& r) {
        return r.feature == feature && r.classifier == classifier;
      });
      if (it == runs.end()) {
        throw error("missing run record for feature '" + feature + "' and classifier '" + classifier + "'");
      }
      const bool dr_out = outside(it->detection_rate, find_margin(classifier, Metric::DetectionRate), mode);
      const bool fpr_out = outside(it->false_positive_rate, find_margin(classifier, Metric::FalsePositiveRate), mode);
      const bool ok = rule == MetricRule::Either ? (dr_out || fpr_out) : (dr_out && fpr_out);
      if (!ok) {
        selected = false;
        break;
      }
    }
    (selected ? out.f_plus : out.f_minus).push_back(feature);
  }
  return out;
}

FeatureSelectionResult run_modified_sbs(const Dataset& train, const Dataset& test, const SbsConfig& config) {
  FeatureSelectionResult result;
  result.mode = config.mode;
  result.rule = config.rule;
  result.runs = leave_one_out_runs(train, test, config.classifiers, config.train, config.workers);
  result.margins = compute_margins(result.runs);
  auto parts = partition(result.runs, result.margins, config.mode, config.rule);
  result.f_plus = std::move(parts.f_plus);
  result.f_minus = std::move(parts.f_minus);
  result.ranking = ig::rank(train, FeatureSet::custom(result.f_plus), config.k_bins, config.workers);
  return result;
}

std::string to_json(const FeatureSelectionResult& result) {
  nlohmann::ordered_json j;
  j["mode"] = to_string(result.mode);
  j["metric_rule"] = to_string(result.rule);
  j["f_plus"] = result.f_plus;
  j["f_minus"] = result.f_minus;
  auto& runs = j["runs"] = nlohmann::ordered_json::array();
  for (const auto& r : result.runs) {
    runs.push_back({{"feature", r.feature},
                    {"classifier", r.classifier},
                    {"detection_rate", r.detection_rate},
                    {"false_positive_rate", r.false_positive_rate}});
  }
  auto& margins = j["margins"] = nlohmann::ordered_json::array();
  for (const auto& m : result.margins) {
    margins.push_back({{"classifier", m.classifier},
                       {"metric", to_string(m.metric)},
                       {"mu", m.mu},
                       {"sigma", m.sigma},
                       {"lower", m.lower},
                       {"upper", m.upper}});
  }
  nlohmann::ordered_json ranking;
  ranking["bins"] = result.ranking.bins_used;
  ranking["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : result.ranking.entries) ranking["entries"].push_back({{"feature", e.feature}, {"ig", e.gain}});
  j["ranking"] = std::move(ranking);
  return j.dump(2);
}

std::string to_report(const FeatureSelectionResult& result) {
  std::ostringstream out;
  out << "mode: " << to_string(result.mode) << ", metric rule: " << to_string(result.rule) << "\n\n";
  out << "margins\n";
  for (const auto& m : result.margins) {
    out << "  " << std::left << std::setw(5) << m.classifier << std::setw(20) << to_string(m.metric) << std::fixed
        << std::setprecision(4) << "mu=" << m.mu << " sigma=" << m.sigma << " [" << m.lower << ", " << m.upper
        << "]\n";
  }
  out << "\nremoval runs\n";
  for (const auto& r : result.runs) {
    const bool plus = std::find(result.f_plus.begin(), result.f_plus.end(), r.feature) != result.f_plus.end();
    out << "  " << (plus ? '+' : '-') << ' ' << std::left << std::setw(28) << r.feature << std::setw(5)
        << r.classifier << " DR=" << std::fixed << std::setprecision(4) << r.detection_rate
        << " FPR=" << r.false_positive_rate << '\n';
  }
  out << "\nF_plus ranked by information gain (" << result.ranking.bins_used << " bins)\n";
  for (const auto& e : result.ranking.entries) {
    out << "  " << std::left << std::setw(28) << e.feature << std::fixed << std::setprecision(6) << e.gain << '\n';
  }
  out << "\nF_minus: ";
  for (std::size_t i = 0; i < result.f_minus.size(); ++i) out << (i ? ", " : "") << result.f_minus[i];
  out << '\n';
  return out.str();
}

}  // namespace netprep::sbs
