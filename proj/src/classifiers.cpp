#include "netprep/classifiers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <queue>

#include <json.hpp>

#include "netprep/error.hpp"
#include "netprep/info_gain.hpp"
#include "netprep/text.hpp"

namespace netprep::classify {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::NaiveBayes:
      return "NB";
    case Algorithm::DecisionTree:
      return "DT";
    case Algorithm::Knn:
      break;
  }
  return "KNN";
}

Algorithm parse_algorithm(std::string_view text) {
  const std::string t = text::to_lower(text::trim(text));
  if (t == "nb" || t == "naivebayes" || t == "naive_bayes") return Algorithm::NaiveBayes;
  if (t == "dt" || t == "decisiontree" || t == "decision_tree") return Algorithm::DecisionTree;
  if (t == "knn") return Algorithm::Knn;
  throw error("unknown classifier '" + std::string(text) + "'");
}

std::vector<double> encode_rows(const std::vector<FeatureDescriptor>& schema, const Dataset& dataset) {
  if (dataset.num_features() != schema.size()) {
    throw error("schema mismatch: model has " + std::to_string(schema.size()) + " features, dataset '" +
                dataset.name() + "' has " + std::to_string(dataset.num_features()));
  }
  const std::size_t width = schema.size();
  std::vector<double> rows(dataset.num_rows() * width);
  for (std::size_t f = 0; f < width; ++f) {
    const auto& d = dataset.descriptor(f);
    if (d.name != schema[f].name || d.kind != schema[f].kind) {
      throw error("schema mismatch at column " + std::to_string(f) + ": expected '" + schema[f].name + "' (" +
                  std::string(to_string(schema[f].kind)) + "), found '" + d.name + "' (" +
                  std::string(to_string(d.kind)) + ")");
    }
    if (d.kind == FeatureKind::Numeric) {
      const auto values = dataset.numeric(f);
      for (std::size_t r = 0; r < values.size(); ++r) rows[r * width + f] = values[r];
    } else {
      std::vector<double> remap;
      for (const auto& s : d.domain) {
        const auto code = schema[f].code_of(s);
        remap.push_back(code ? static_cast<double>(*code) : -1.0);
      }
      const auto codes = dataset.codes(f);
      for (std::size_t r = 0; r < codes.size(); ++r) rows[r * width + f] = remap[codes[r]];
    }
  }
  return rows;
}

namespace {

using detail::DecisionTreeState;
using detail::KnnState;
using detail::NaiveBayesState;
using detail::TreeNode;

constexpr std::size_t kNormal = 0;
constexpr std::size_t kAnomaly = 1;

ClassLabel majority_of(const std::array<std::size_t, 2>& counts) {
  return counts[kAnomaly] > counts[kNormal] ? ClassLabel::Anomaly : ClassLabel::Normal;
}

// --- naive Bayes ------------------------------------------------------------

NaiveBayesState train_nb(const Dataset& data, const TrainConfig& config) {
  NaiveBayesState s;
  const auto labels = data.labels();
  std::array<std::size_t, 2> class_counts{};
  for (auto l : labels) ++class_counts[static_cast<std::size_t>(l)];
  const auto n = static_cast<double>(labels.size());
  for (std::size_t c = 0; c < 2; ++c) {
    s.log_prior[c] = class_counts[c] ? std::log(static_cast<double>(class_counts[c]) / n)
                                     : -std::numeric_limits<double>::infinity();
  }

  const std::size_t width = data.num_features();
  s.mean.assign(width, {0.0, 0.0});
  s.sigma.assign(width, {1.0, 1.0});
  s.log_symbol.resize(width);
  for (std::size_t f = 0; f < width; ++f) {
    const auto& d = data.descriptor(f);
    if (d.kind == FeatureKind::Numeric) {
      const auto values = data.numeric(f);
      std::array<double, 2> sum{};
      for (std::size_t r = 0; r < values.size(); ++r) sum[static_cast<std::size_t>(labels[r])] += values[r];
      for (std::size_t c = 0; c < 2; ++c) {
        if (class_counts[c]) s.mean[f][c] = sum[c] / static_cast<double>(class_counts[c]);
      }
      std::array<double, 2> squares{};
      for (std::size_t r = 0; r < values.size(); ++r) {
        const auto c = static_cast<std::size_t>(labels[r]);
        squares[c] += (values[r] - s.mean[f][c]) * (values[r] - s.mean[f][c]);
      }
      for (std::size_t c = 0; c < 2; ++c) {
        const double sd = class_counts[c] ? std::sqrt(squares[c] / static_cast<double>(class_counts[c])) : 1.0;
        s.sigma[f][c] = std::max(sd, config.sigma_floor);
      }
    } else {
      if (d.domain.empty()) throw error("naive Bayes: nominal feature '" + d.name + "' has an empty domain");
      const auto codes = data.codes(f);
      const std::size_t k = d.domain.size();
      std::array<std::vector<std::size_t>, 2> counts{std::vector<std::size_t>(k, 0), std::vector<std::size_t>(k, 0)};
      for (std::size_t r = 0; r < codes.size(); ++r) ++counts[static_cast<std::size_t>(labels[r])][codes[r]];
      for (std::size_t c = 0; c < 2; ++c) {
        const double denom = static_cast<double>(class_counts[c] + k);
        auto& table = s.log_symbol[f][c];
        table.resize(k + 1);
        for (std::size_t i = 0; i < k; ++i) table[i] = std::log((static_cast<double>(counts[c][i]) + 1.0) / denom);
        table[k] = std::log(1.0 / denom);
      }
    }
  }
  return s;
}

ClassLabel predict_nb(const NaiveBayesState& s, const std::vector<FeatureDescriptor>& schema,
                      std::span<const double> row) {
  constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5 * ln(2*pi)
  std::array<double, 2> score = s.log_prior;
  for (std::size_t f = 0; f < schema.size(); ++f) {
    for (std::size_t c = 0; c < 2; ++c) {
      if (schema[f].kind == FeatureKind::Numeric) {
        const double z = (row[f] - s.mean[f][c]) / s.sigma[f][c];
        score[c] += -kHalfLog2Pi - std::log(s.sigma[f][c]) - 0.5 * z * z;
      } else {
        const auto& table = s.log_symbol[f][c];
        const double code = row[f];
        score[c] += code < 0 ? table.back() : table[static_cast<std::size_t>(code)];
      }
    }
  }
  return score[kAnomaly] > score[kNormal] ? ClassLabel::Anomaly : ClassLabel::Normal;
}

// --- decision tree ----------------------------------------------------------

struct Split {
  bool found = false;
  double gain = -1.0;
  std::size_t feature = 0;
  double threshold = 0.0;
};

std::array<std::size_t, 2> label_counts(std::span<const std::size_t> idx, std::span<const ClassLabel> labels) {
  std::array<std::size_t, 2> counts{};
  for (auto i : idx) ++counts[static_cast<std::size_t>(labels[i])];
  return counts;
}

Split best_split(const Dataset& data, std::span<const std::size_t> idx, std::span<const ClassLabel> labels,
                 const std::array<std::size_t, 2>& parent) {
  Split best;
  const double parent_h = ig::entropy(parent);
  const auto n = static_cast<double>(idx.size());
  std::vector<std::pair<double, ClassLabel>> sorted;
  std::vector<std::size_t> partition;
  std::vector<ClassLabel> node_labels;

  for (std::size_t f = 0; f < data.num_features(); ++f) {
    if (data.descriptor(f).kind == FeatureKind::Nominal) {
      const auto codes = data.codes(f);
      partition.clear();
      node_labels.clear();
      bool varies = false;
      for (auto i : idx) {
        if (!partition.empty() && codes[i] != partition.front()) varies = true;
        partition.push_back(codes[i]);
        node_labels.push_back(labels[i]);
      }
      if (!varies) continue;
      const double gain = ig::info_gain(partition, node_labels);
      if (!best.found || gain > best.gain) best = {true, gain, f, 0.0};
      continue;
    }
    const auto values = data.numeric(f);
    sorted.clear();
    for (auto i : idx) sorted.emplace_back(values[i], labels[i]);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::array<std::size_t, 2> left{};
    for (std::size_t p = 1; p < sorted.size(); ++p) {
      ++left[static_cast<std::size_t>(sorted[p - 1].second)];
      if (!(sorted[p - 1].first < sorted[p].first)) continue;
      const std::array<std::size_t, 2> right{parent[0] - left[0], parent[1] - left[1]};
      const double pl = static_cast<double>(p) / n;
      const double gain = parent_h - pl * ig::entropy(left) - (1.0 - pl) * ig::entropy(right);
      if (!best.found || gain > best.gain) {
        const double lo = sorted[p - 1].first;
        const double hi = sorted[p].first;
        double cut = lo + (hi - lo) / 2.0;
        if (!(cut < hi)) cut = lo;
        best = {true, gain, f, cut};
      }
    }
  }
  return best;
}

DecisionTreeState train_dt(const Dataset& data) {
  DecisionTreeState tree;
  const auto labels = data.labels();
  struct Pending {
    std::int32_t node;
    std::vector<std::size_t> idx;
  };
  std::vector<std::size_t> all(data.num_rows());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  tree.nodes.emplace_back();
  std::vector<Pending> stack;
  stack.push_back({0, std::move(all)});

  while (!stack.empty()) {
    Pending job = std::move(stack.back());
    stack.pop_back();
    const auto counts = label_counts(job.idx, labels);
    tree.nodes[job.node].majority = majority_of(counts);
    if (counts[0] == 0 || counts[1] == 0) continue;
    const Split split = best_split(data, job.idx, labels, counts);
    if (!split.found) continue;  // identical feature vectors with mixed labels

    TreeNode& node = tree.nodes[job.node];
    node.feature = static_cast<std::int32_t>(split.feature);
    std::vector<std::vector<std::size_t>> parts;
    if (data.descriptor(split.feature).kind == FeatureKind::Numeric) {
      node.threshold = split.threshold;
      parts.resize(2);
      const auto values = data.numeric(split.feature);
      for (auto i : job.idx) parts[values[i] <= split.threshold ? 0 : 1].push_back(i);
    } else {
      parts.resize(data.descriptor(split.feature).domain.size());
      const auto codes = data.codes(split.feature);
      for (auto i : job.idx) parts[codes[i]].push_back(i);
    }
    std::vector<std::int32_t> children(parts.size(), -1);
    for (std::size_t p = 0; p < parts.size(); ++p) {
      if (parts[p].empty()) continue;
      children[p] = static_cast<std::int32_t>(tree.nodes.size());
      tree.nodes.emplace_back();
    }
    tree.nodes[job.node].children = children;
    // Reverse push keeps node numbering independent of traversal details.
    for (std::size_t p = parts.size(); p-- > 0;) {
      if (children[p] >= 0) stack.push_back({children[p], std::move(parts[p])});
    }
  }
  return tree;
}

ClassLabel predict_dt(const DecisionTreeState& tree, const std::vector<FeatureDescriptor>& schema,
                      std::span<const double> row) {
  std::int32_t at = 0;
  while (true) {
    const TreeNode& node = tree.nodes[static_cast<std::size_t>(at)];
    if (node.feature < 0) return node.majority;
    const auto f = static_cast<std::size_t>(node.feature);
    std::int32_t next = -1;
    if (schema[f].kind == FeatureKind::Numeric) {
      next = node.children[row[f] <= node.threshold ? 0 : 1];
    } else if (row[f] >= 0) {
      next = node.children[static_cast<std::size_t>(row[f])];
    }
    if (next < 0) return node.majority;
    at = next;
  }
}

// --- k nearest neighbours ---------------------------------------------------

KnnState train_knn(const Dataset& data, const TrainConfig& config) {
  if (config.k_neighbors < 1) throw error("knn: k_neighbors must be at least 1");
  KnnState s;
  s.k = config.k_neighbors;
  s.width = data.num_features();
  s.rows = encode_rows(data.descriptors(), data);
  s.labels.assign(data.labels().begin(), data.labels().end());
  return s;
}

ClassLabel predict_knn(const KnnState& s, const std::vector<FeatureDescriptor>& schema, std::span<const double> row) {
  using Candidate = std::pair<double, std::size_t>;  // (squared distance, training row)
  std::priority_queue<Candidate> nearest;            // max-heap: worst candidate on top
  const std::size_t n = s.labels.size();
  const std::size_t k = std::min(s.k, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* train_row = s.rows.data() + i * s.width;
    double d = 0.0;
    for (std::size_t f = 0; f < s.width; ++f) {
      if (schema[f].kind == FeatureKind::Numeric) {
        const double diff = row[f] - train_row[f];
        d += diff * diff;
      } else if (row[f] < 0 || row[f] != train_row[f]) {
        d += 1.0;
      }
    }
    const Candidate c{d, i};
    if (nearest.size() < k) {
      nearest.push(c);
    } else if (c < nearest.top()) {
      nearest.pop();
      nearest.push(c);
    }
  }
  std::size_t anomalies = 0;
  const std::size_t votes = nearest.size();
  while (!nearest.empty()) {
    if (s.labels[nearest.top().second] == ClassLabel::Anomaly) ++anomalies;
    nearest.pop();
  }
  return 2 * anomalies > votes ? ClassLabel::Anomaly : ClassLabel::Normal;
}

}  // namespace

ClassifierModel train(Algorithm algorithm, const Dataset& dataset, const TrainConfig& config) {
  if (dataset.num_rows() == 0) throw error("cannot train on empty dataset '" + dataset.name() + "'");
  ClassifierModel model;
  model.schema_ = dataset.descriptors();
  switch (algorithm) {
    case Algorithm::NaiveBayes:
      model.state_ = train_nb(dataset, config);
      break;
    case Algorithm::DecisionTree:
      model.state_ = train_dt(dataset);
      break;
    case Algorithm::Knn:
      model.state_ = train_knn(dataset, config);
      break;
  }
  return model;
}

ClassLabel ClassifierModel::predict_encoded(std::span<const double> row) const {
  if (row.size() != schema_.size()) throw error("schema mismatch: instance arity differs from the model");
  return std::visit(
      [&](const auto& s) -> ClassLabel {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NaiveBayesState>) {
          return predict_nb(s, schema_, row);
        } else if constexpr (std::is_same_v<T, DecisionTreeState>) {
          return predict_dt(s, schema_, row);
        } else {
          return predict_knn(s, schema_, row);
        }
      },
      state_);
}

ClassLabel ClassifierModel::predict(const Instance& instance) const {
  if (instance.size() != schema_.size()) throw error("schema mismatch: instance arity differs from the model");
  std::vector<double> row(instance.size());
  for (std::size_t f = 0; f < instance.size(); ++f) {
    if (schema_[f].kind == FeatureKind::Numeric) {
      const auto* v = std::get_if<double>(&instance[f]);
      if (!v) throw error("schema mismatch: feature '" + schema_[f].name + "' expects a number");
      row[f] = *v;
    } else {
      const auto* s = std::get_if<std::string>(&instance[f]);
      if (!s) throw error("schema mismatch: feature '" + schema_[f].name + "' expects a symbol");
      const auto code = schema_[f].code_of(*s);
      row[f] = code ? static_cast<double>(*code) : -1.0;
    }
  }
  return predict_encoded(row);
}

std::vector<ClassLabel> ClassifierModel::predict_all(const Dataset& dataset) const {
  const auto rows = encode_rows(schema_, dataset);
  const std::size_t width = schema_.size();
  std::vector<ClassLabel> out;
  out.reserve(dataset.num_rows());
  for (std::size_t r = 0; r < dataset.num_rows(); ++r) {
    out.push_back(predict_encoded(std::span<const double>(rows.data() + r * width, width)));
  }
  return out;
}

EvaluationReport make_report(std::string classifier, std::string dataset, std::size_t tp, std::size_t fp,
                             std::size_t tn, std::size_t fn) {
  EvaluationReport r;
  r.classifier = std::move(classifier);
  r.dataset = std::move(dataset);
  r.tp = tp;
  r.fp = fp;
  r.tn = tn;
  r.fn = fn;
  r.detection_rate_undefined = tp + fn == 0;
  r.false_positive_rate_undefined = fp + tn == 0;
  r.detection_rate = r.detection_rate_undefined ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  r.false_positive_rate =
      r.false_positive_rate_undefined ? 0.0 : static_cast<double>(fp) / static_cast<double>(fp + tn);
  return r;
}

EvaluationReport evaluate(const ClassifierModel& model, const Dataset& test) {
  const auto start = std::chrono::steady_clock::now();
  const auto predicted = model.predict_all(test);
  const auto stop = std::chrono::steady_clock::now();

  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  const auto truth = test.labels();
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const bool actual = truth[i] == ClassLabel::Anomaly;
    const bool flagged = predicted[i] == ClassLabel::Anomaly;
    if (actual && flagged) ++tp;
    else if (actual) ++fn;
    else if (flagged) ++fp;
    else ++tn;
  }
  auto report = make_report(std::string(to_string(model.algorithm())), test.name(), tp, fp, tn, fn);
  report.test_time = std::chrono::duration<double>(stop - start).count();
  return report;
}

std::string to_json(const EvaluationReport& r) {
  nlohmann::ordered_json j;
  j["classifier"] = r.classifier;
  j["dataset"] = r.dataset;
  j["tp"] = r.tp;
  j["fp"] = r.fp;
  j["tn"] = r.tn;
  j["fn"] = r.fn;
  j["detection_rate"] = r.detection_rate;
  j["false_positive_rate"] = r.false_positive_rate;
  j["detection_rate_undefined"] = r.detection_rate_undefined;
  j["false_positive_rate_undefined"] = r.false_positive_rate_undefined;
  j["test_time"] = r.test_time;
  return j.dump();
}

EvaluationReport report_from_json(std::string_view json) {
  try {
    const auto j = nlohmann::json::parse(json);
    auto r = make_report(j.at("classifier").get<std::string>(), j.at("dataset").get<std::string>(),
                         j.at("tp").get<std::size_t>(), j.at("fp").get<std::size_t>(), j.at("tn").get<std::size_t>(),
                         j.at("fn").get<std::size_t>());
    r.test_time = j.at("test_time").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw error(std::string("bad evaluation report: ") + e.what());
  }
}

void write_summary(const std::vector<EvaluationReport>& reports, std::ostream& out) {
  out << "classifier\tdataset\ttp\tfp\ttn\tfn\tdetection_rate\tfalse_positive_rate\ttest_time\n";
  for (const auto& r : reports) {
    out << r.classifier << '\t' << r.dataset << '\t' << r.tp << '\t' << r.fp << '\t' << r.tn << '\t' << r.fn << '\t'
        << text::format_real(r.detection_rate) << '\t' << text::format_real(r.false_positive_rate) << '\t'
        << text::format_real(r.test_time) << '\n';
  }
}

}  // namespace netprep::classify
