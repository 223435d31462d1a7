#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "netprep/dataset.hpp"

namespace netprep::classify {

enum class Algorithm { NaiveBayes, DecisionTree, Knn };

std::string_view to_string(Algorithm algorithm);
/// Accepts "nb", "dt", "knn" or the full names (any case).
Algorithm parse_algorithm(std::string_view text);

struct TrainConfig {
  std::size_t k_neighbors = 5;
  double sigma_floor = 1e-9;
};

/// A single instance to classify: reals for numeric features and symbols for
/// nominal ones, in schema order.
using Cell = std::variant<double, std::string>;
using Instance = std::vector<Cell>;

namespace detail {

struct NaiveBayesState {
  std::array<double, 2> log_prior{};
  // Per feature, per class: Gaussian parameters (numeric) or log P(symbol|class)
  // for every domain code plus one trailing slot for unseen symbols (nominal).
  std::vector<std::array<double, 2>> mean;
  std::vector<std::array<double, 2>> sigma;
  std::vector<std::array<std::vector<double>, 2>> log_symbol;
};

struct TreeNode {
  // Leaf when feature < 0.
  std::int32_t feature = -1;
  double threshold = 0.0;  // numeric split: left iff value <= threshold
  ClassLabel majority = ClassLabel::Normal;
  // Numeric: {left, right}. Nominal: child per training-domain code, -1 when
  // the symbol did not reach this node.
  std::vector<std::int32_t> children;
};

struct DecisionTreeState {
  std::vector<TreeNode> nodes;  // root at 0
};

struct KnnState {
  std::size_t k = 5;
  std::size_t width = 0;
  std::vector<double> rows;  // row-major encoded training matrix
  std::vector<ClassLabel> labels;
};

}  // namespace detail

/**
 * A trained, immutable classifier together with the schema it was trained on.
 *
 * Rows are encoded as reals: numeric cells as-is and nominal cells as their
 * code in the training domain (-1 for unseen symbols).
 */
class ClassifierModel {
 public:
  [[nodiscard]] Algorithm algorithm() const noexcept { return static_cast<Algorithm>(state_.index()); }
  [[nodiscard]] const std::vector<FeatureDescriptor>& schema() const noexcept { return schema_; }

  [[nodiscard]] ClassLabel predict(const Instance& instance) const;
  /// Predicts every row of a dataset whose schema matches the training schema
  /// (same names and kinds; nominal domains may differ).
  [[nodiscard]] std::vector<ClassLabel> predict_all(const Dataset& dataset) const;

  [[nodiscard]] ClassLabel predict_encoded(std::span<const double> row) const;

 private:
  friend ClassifierModel train(Algorithm, const Dataset&, const TrainConfig&);

  std::vector<FeatureDescriptor> schema_;
  std::variant<detail::NaiveBayesState, detail::DecisionTreeState, detail::KnnState> state_;
};

/// Deterministic training. Throws on an empty dataset.
ClassifierModel train(Algorithm algorithm, const Dataset& dataset, const TrainConfig& config = {});

inline ClassLabel predict(const ClassifierModel& model, const Instance& instance) { return model.predict(instance); }

struct EvaluationReport {
  std::string classifier;
  std::string dataset;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  double detection_rate = 0.0;       // tp / (tp + fn)
  double false_positive_rate = 0.0;  // fp / (fp + tn)
  bool detection_rate_undefined = false;
  bool false_positive_rate_undefined = false;
  double test_time = 0.0;  // seconds

  [[nodiscard]] std::size_t total() const noexcept { return tp + fp + tn + fn; }
};

/// Fills rates from counts; zero denominators give 0 and set the flag.
EvaluationReport make_report(std::string classifier, std::string dataset, std::size_t tp, std::size_t fp,
                             std::size_t tn, std::size_t fn);

/// Predicts every test row (Anomaly positive) and times the prediction pass.
EvaluationReport evaluate(const ClassifierModel& model, const Dataset& test);

/// One JSON object per line.
std::string to_json(const EvaluationReport& report);
EvaluationReport report_from_json(std::string_view json);

/// Tab-separated summary: one row per report.
void write_summary(const std::vector<EvaluationReport>& reports, std::ostream& out);

/// Row-major encoding of `dataset` against a training schema. Throws
/// netprep::error when names or kinds differ.
std::vector<double> encode_rows(const std::vector<FeatureDescriptor>& schema, const Dataset& dataset);

}  // namespace netprep::classify
