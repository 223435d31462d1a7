#include "netprep/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "netprep/error.hpp"
#include "netprep/stats.hpp"
#include "netprep/text.hpp"

namespace netprep::normalize {
namespace {

double pow10(int e) {
  double p = 1.0;
  for (int i = 0; i < e; ++i) p *= 10.0;
  return p;
}

void require_nonempty(std::span<const double> column, const std::string& feature) {
  if (column.empty()) throw error("normalize: empty column" + (feature.empty() ? "" : " '" + feature + "'"));
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Decimal:
      return "decimal";
    case Method::MinMax:
      return "minmax";
    case Method::Statistical:
      break;
  }
  return "statistical";
}

std::string_view suffix(Method method) {
  switch (method) {
    case Method::Decimal:
      return "DN";
    case Method::MinMax:
      return "MN";
    case Method::Statistical:
      break;
  }
  return "SN";
}

Method parse_method(std::string_view text) {
  const std::string t = text::to_lower(text::trim(text));
  if (t == "dn" || t == "decimal") return Method::Decimal;
  if (t == "mn" || t == "minmax") return Method::MinMax;
  if (t == "sn" || t == "statistical") return Method::Statistical;
  throw error("unknown normalization method '" + std::string(text) + "'");
}

NormalizerParams fit_decimal(std::span<const double> column, std::string feature) {
  require_nonempty(column, feature);
  double max_abs = 0.0;
  for (double v : column) max_abs = std::max(max_abs, std::fabs(v));
  int e = 0;
  while (max_abs / pow10(e) > 1.0) ++e;
  return {std::move(feature), DecimalParams{e}};
}

NormalizerParams fit_minmax(std::span<const double> column, std::string feature) {
  require_nonempty(column, feature);
  const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
  return {std::move(feature), MinMaxParams{*lo, *hi}};
}

NormalizerParams fit_statistical(std::span<const double> column, std::string feature) {
  require_nonempty(column, feature);
  const auto s = stats::mean_stddev(column);
  return {std::move(feature), StatisticalParams{s.mean, s.stddev}};
}

NormalizerParams fit(Method method, std::span<const double> column, std::string feature) {
  switch (method) {
    case Method::Decimal:
      return fit_decimal(column, std::move(feature));
    case Method::MinMax:
      return fit_minmax(column, std::move(feature));
    case Method::Statistical:
      break;
  }
  return fit_statistical(column, std::move(feature));
}

std::vector<double> apply(const NormalizerParams& params, std::span<const double> column) {
  std::vector<double> out;
  out.reserve(column.size());
  if (const auto* d = std::get_if<DecimalParams>(&params.params)) {
    const double scale = pow10(d->exponent);
    for (double v : column) out.push_back(v / scale);
  } else if (const auto* m = std::get_if<MinMaxParams>(&params.params)) {
    const double range = m->max - m->min;
    for (double v : column) {
      out.push_back(range > 0.0 ? std::clamp((v - m->min) / range, 0.0, 1.0) : 0.0);
    }
  } else {
    const auto& s = std::get<StatisticalParams>(params.params);
    for (double v : column) out.push_back(s.sigma > 0.0 ? (v - s.mu) / s.sigma : 0.0);
  }
  return out;
}

namespace {

Dataset apply_numeric(const std::vector<NormalizerParams>& params, const Dataset& numeric_part) {
  std::vector<FeatureDescriptor> descriptors = numeric_part.descriptors();
  std::vector<Column> columns;
  for (std::size_t f = 0; f < numeric_part.num_features(); ++f) {
    const auto& name = numeric_part.descriptor(f).name;
    const auto it = std::find_if(params.begin(), params.end(), [&](const auto& p) { return p.feature == name; });
    if (it == params.end()) throw error("no normalizer params fitted for numeric feature '" + name + "'");
    columns.push_back({apply(*it, numeric_part.numeric(f)), {}});
  }
  return Dataset(numeric_part.name(), std::move(descriptors), std::move(columns),
                 {numeric_part.labels().begin(), numeric_part.labels().end()});
}

}  // namespace

HybridResult hybrid_normalize(const Dataset& dataset, Method method) {
  const KindSplit split = split_by_kind(dataset);
  auto mapped = pmf::fit_transform_dataset(split.nominal);

  HybridResult result;
  result.tables = std::move(mapped.tables);
  for (std::size_t f = 0; f < split.numeric.num_features(); ++f) {
    result.params.push_back(fit(method, split.numeric.numeric(f), split.numeric.descriptor(f).name));
  }
  const Dataset normalized = apply_numeric(result.params, split.numeric);
  result.data = rejoin(mapped.data, normalized, split.from_nominal, dataset.name());
  return result;
}

Dataset apply_fitted(const std::vector<pmf::PmfTable>& tables, const std::vector<NormalizerParams>& params,
                     const Dataset& dataset) {
  const KindSplit split = split_by_kind(dataset);
  const Dataset mapped = pmf::apply_tables(tables, split.nominal);
  const Dataset normalized = apply_numeric(params, split.numeric);
  return rejoin(mapped, normalized, split.from_nominal, dataset.name());
}

// --- persistence ------------------------------------------------------------

void write_params(const std::vector<NormalizerParams>& params, std::ostream& out) {
  for (const auto& p : params) {
    out << p.feature << '\t' << to_string(p.method()) << '\t';
    if (const auto* d = std::get_if<DecimalParams>(&p.params)) {
      out << "e=" << d->exponent;
    } else if (const auto* m = std::get_if<MinMaxParams>(&p.params)) {
      out << "min=" << text::format_real(m->min) << ",max=" << text::format_real(m->max);
    } else {
      const auto& s = std::get<StatisticalParams>(p.params);
      out << "mu=" << text::format_real(s.mu) << ",sigma=" << text::format_real(s.sigma);
    }
    out << '\n';
  }
  if (!out) throw error("write failure while emitting normalizer params");
}

std::vector<NormalizerParams> read_params(std::istream& in) {
  std::vector<NormalizerParams> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 3) throw parse_error(line_no, "expected 3 tab-separated fields");

    std::vector<std::pair<std::string, double>> kv;
    for (const auto& item : text::split(fields[2], ',')) {
      const auto eq = item.find('=');
      const auto value = eq == std::string::npos ? std::nullopt : text::parse_real(item.substr(eq + 1));
      if (!value) throw parse_error(line_no, "bad parameter '" + item + "'");
      kv.emplace_back(item.substr(0, eq), *value);
    }
    auto get = [&](std::string_view key) {
      for (const auto& [k, v] : kv) {
        if (k == key) return v;
      }
      throw parse_error(line_no, "missing parameter '" + std::string(key) + "'");
    };

    Method method{};
    try {
      method = parse_method(fields[1]);
    } catch (const error& e) {
      throw parse_error(line_no, e.what());
    }
    NormalizerParams p{fields[0], {}};
    switch (method) {
      case Method::Decimal: {
        const double e = get("e");
        if (e < 0 || e != std::floor(e)) throw parse_error(line_no, "decimal exponent must be a nonnegative integer");
        p.params = DecimalParams{static_cast<int>(e)};
        break;
      }
      case Method::MinMax:
        p.params = MinMaxParams{get("min"), get("max")};
        if (std::get<MinMaxParams>(p.params).min > std::get<MinMaxParams>(p.params).max) {
          throw parse_error(line_no, "min exceeds max");
        }
        break;
      case Method::Statistical:
        p.params = StatisticalParams{get("mu"), get("sigma")};
        if (std::get<StatisticalParams>(p.params).sigma < 0) throw parse_error(line_no, "negative sigma");
        break;
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace netprep::normalize
