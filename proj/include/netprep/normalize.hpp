#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "netprep/dataset.hpp"
#include "netprep/pmf.hpp"

namespace netprep::normalize {

enum class Method { Decimal, MinMax, Statistical };

std::string_view to_string(Method method);
/// Short suffix used in dataset variant names: DN, MN, SN.
std::string_view suffix(Method method);
/// Accepts "dn"/"mn"/"sn" or "decimal"/"minmax"/"statistical" (any case).
Method parse_method(std::string_view text);

struct DecimalParams {
  int exponent = 0;  // v / 10^exponent
  friend bool operator==(const DecimalParams&, const DecimalParams&) = default;
};

struct MinMaxParams {
  double min = 0.0;
  double max = 0.0;
  friend bool operator==(const MinMaxParams&, const MinMaxParams&) = default;
};

struct StatisticalParams {
  double mu = 0.0;
  double sigma = 0.0;  // N-1 denominator
  friend bool operator==(const StatisticalParams&, const StatisticalParams&) = default;
};

struct NormalizerParams {
  std::string feature;
  std::variant<DecimalParams, MinMaxParams, StatisticalParams> params;

  [[nodiscard]] Method method() const noexcept { return static_cast<Method>(params.index()); }

  friend bool operator==(const NormalizerParams&, const NormalizerParams&) = default;
};

NormalizerParams fit_decimal(std::span<const double> column, std::string feature = {});
NormalizerParams fit_minmax(std::span<const double> column, std::string feature = {});
NormalizerParams fit_statistical(std::span<const double> column, std::string feature = {});
NormalizerParams fit(Method method, std::span<const double> column, std::string feature = {});

/**
 * Applies fitted parameters.
 *
 * Decimal divides by 10^e. MinMax maps to (v-min)/(max-min) clamped to [0,1],
 * with constant columns mapping to 0. Statistical computes (v-mu)/sigma and is
 * not rescaled; sigma = 0 maps to 0.
 */
std::vector<double> apply(const NormalizerParams& params, std::span<const double> column);

struct HybridResult {
  Dataset data;
  std::vector<pmf::PmfTable> tables;
  std::vector<NormalizerParams> params;  // one per numeric feature, column order
};

/// PMF mapping on the nominal part, `method` on the numeric part, rejoined in
/// the original column order.
HybridResult hybrid_normalize(const Dataset& dataset, Method method);

/// Re-applies training-fitted transforms to another dataset (e.g. the test
/// split). Every nominal feature needs a table and every numeric feature needs
/// params; unseen symbols map to 0.
Dataset apply_fitted(const std::vector<pmf::PmfTable>& tables, const std::vector<NormalizerParams>& params,
                     const Dataset& dataset);

// "feature<TAB>method<TAB>param=value,..." per line.
void write_params(const std::vector<NormalizerParams>& params, std::ostream& out);
std::vector<NormalizerParams> read_params(std::istream& in);

}  // namespace netprep::normalize
