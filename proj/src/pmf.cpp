#include "netprep/pmf.hpp"

#include <istream>
#include <ostream>

#include "netprep/error.hpp"
#include "netprep/text.hpp"

namespace netprep::pmf {

PmfTable::PmfTable(std::string feature, SymbolCounts counts) : feature_(std::move(feature)), counts_(std::move(counts)) {
  for (const auto& [symbol, c] : counts_) {
    if (c == 0) throw error("pmf table '" + feature_ + "': symbol '" + symbol + "' has zero count");
    sample_size_ += c;
  }
  if (sample_size_ == 0) throw error("pmf table '" + feature_ + "': empty sample");
}

std::size_t PmfTable::count(std::string_view symbol) const {
  const auto it = counts_.find(symbol);
  return it == counts_.end() ? 0 : it->second;
}

double PmfTable::frequency(std::string_view symbol) const {
  return static_cast<double>(count(symbol)) / static_cast<double>(sample_size_);
}

PmfTable fit(std::span<const std::string> column, std::string feature) {
  if (column.empty()) throw error("pmf fit: empty column" + (feature.empty() ? "" : " '" + feature + "'"));
  PmfTable::SymbolCounts counts;
  for (const auto& s : column) ++counts[s];
  return PmfTable(std::move(feature), std::move(counts));
}

PmfTable fit(const Dataset& dataset, std::size_t feature) {
  const auto& d = dataset.descriptor(feature);
  const auto codes = dataset.codes(feature);
  if (codes.empty()) throw error("pmf fit: empty column '" + d.name + "'");
  std::vector<std::size_t> per_code(d.domain.size(), 0);
  for (auto c : codes) ++per_code[c];
  PmfTable::SymbolCounts counts;
  for (std::size_t i = 0; i < per_code.size(); ++i) {
    if (per_code[i] > 0) counts.emplace(d.domain[i], per_code[i]);
  }
  return PmfTable(d.name, std::move(counts));
}

std::vector<double> transform(const PmfTable& table, std::span<const std::string> column) {
  std::vector<double> out;
  out.reserve(column.size());
  for (const auto& s : column) out.push_back(table.frequency(s));
  return out;
}

std::vector<double> transform(const PmfTable& table, const Dataset& dataset, std::size_t feature) {
  const auto& d = dataset.descriptor(feature);
  std::vector<double> per_code;
  per_code.reserve(d.domain.size());
  for (const auto& s : d.domain) per_code.push_back(table.frequency(s));
  const auto codes = dataset.codes(feature);
  std::vector<double> out;
  out.reserve(codes.size());
  for (auto c : codes) out.push_back(per_code[c]);
  return out;
}

namespace {

Dataset replace_nominal(const Dataset& dataset, const std::vector<const PmfTable*>& table_for) {
  std::vector<FeatureDescriptor> descriptors;
  std::vector<Column> columns;
  for (std::size_t f = 0; f < dataset.num_features(); ++f) {
    const auto& d = dataset.descriptor(f);
    if (d.kind == FeatureKind::Numeric) {
      descriptors.push_back(d);
      columns.push_back(dataset.column(f));
      continue;
    }
    descriptors.push_back({d.name, f, FeatureKind::Numeric, {}});
    columns.push_back({transform(*table_for[f], dataset, f), {}});
  }
  return Dataset(dataset.name(), std::move(descriptors), std::move(columns),
                 {dataset.labels().begin(), dataset.labels().end()});
}

}  // namespace

PmfResult fit_transform_dataset(const Dataset& dataset) {
  PmfResult result;
  std::vector<std::size_t> nominal;
  for (std::size_t f = 0; f < dataset.num_features(); ++f) {
    if (dataset.descriptor(f).kind == FeatureKind::Nominal) nominal.push_back(f);
  }
  if (nominal.empty()) {
    result.data = dataset;
    return result;
  }
  for (auto f : nominal) result.tables.push_back(fit(dataset, f));
  result.data = apply_tables(result.tables, dataset);
  return result;
}

Dataset apply_tables(const std::vector<PmfTable>& tables, const Dataset& dataset) {
  std::vector<const PmfTable*> table_for(dataset.num_features(), nullptr);
  for (std::size_t f = 0; f < dataset.num_features(); ++f) {
    const auto& d = dataset.descriptor(f);
    if (d.kind != FeatureKind::Nominal) continue;
    for (const auto& t : tables) {
      if (t.feature() == d.name) table_for[f] = &t;
    }
    if (!table_for[f]) throw error("no pmf table fitted for nominal feature '" + d.name + "'");
  }
  return replace_nominal(dataset, table_for);
}

// --- streaming --------------------------------------------------------------

StreamMapper::StreamMapper(std::vector<FeatureKind> kinds, std::size_t window_length)
    : kinds_(std::move(kinds)), window_length_(window_length) {
  if (window_length_ < 1) throw error("stream window length must be at least 1");
  buffer_.reserve(window_length_);
}

std::vector<std::vector<double>> StreamMapper::push(Record record) {
  if (record.size() != kinds_.size()) throw error("stream record arity does not match the schema");
  for (std::size_t f = 0; f < kinds_.size(); ++f) {
    const bool nominal = kinds_[f] == FeatureKind::Nominal;
    if (nominal != std::holds_alternative<std::string>(record[f])) {
      throw error("stream record field " + std::to_string(f) + " has the wrong kind");
    }
  }
  buffer_.push_back(std::move(record));
  if (buffer_.size() < window_length_) return {};
  return map_window();
}

std::vector<std::vector<double>> StreamMapper::flush() {
  if (buffer_.empty()) return {};
  return map_window();
}

std::vector<std::vector<double>> StreamMapper::map_window() {
  std::vector<std::vector<double>> out(buffer_.size(), std::vector<double>(kinds_.size()));
  std::vector<std::string> symbols;
  for (std::size_t f = 0; f < kinds_.size(); ++f) {
    if (kinds_[f] == FeatureKind::Numeric) {
      for (std::size_t r = 0; r < buffer_.size(); ++r) out[r][f] = std::get<double>(buffer_[r][f]);
      continue;
    }
    symbols.clear();
    for (const auto& rec : buffer_) symbols.push_back(std::get<std::string>(rec[f]));
    const auto table = fit(symbols);
    const auto mapped = transform(table, symbols);
    for (std::size_t r = 0; r < buffer_.size(); ++r) out[r][f] = mapped[r];
  }
  buffer_.clear();
  return out;
}

std::vector<std::vector<double>> stream_map(std::span<const Record> records, const std::vector<FeatureKind>& kinds,
                                            std::size_t window_length) {
  StreamMapper mapper(kinds, window_length);
  std::vector<std::vector<double>> out;
  for (const auto& rec : records) {
    for (auto& row : mapper.push(rec)) out.push_back(std::move(row));
  }
  for (auto& row : mapper.flush()) out.push_back(std::move(row));
  return out;
}

// --- persistence ------------------------------------------------------------

void write_tables(const std::vector<PmfTable>& tables, std::ostream& out) {
  for (const auto& t : tables) {
    out << "# M=" << t.sample_size() << '\n';
    for (const auto& [symbol, c] : t.counts()) {
      if (symbol.find_first_of("\t\r\n") != std::string::npos) {
        throw error("pmf table '" + t.feature() + "': symbol contains a tab or line break");
      }
      out << t.feature() << '\t' << symbol << '\t' << c << '\t' << text::format_real(t.frequency(symbol)) << '\n';
    }
  }
  if (!out) throw error("write failure while emitting pmf tables");
}

std::vector<PmfTable> read_tables(std::istream& in) {
  std::vector<PmfTable> tables;
  std::string feature;
  PmfTable::SymbolCounts counts;
  std::size_t declared = 0;
  bool open = false;
  std::size_t line_no = 0;

  auto close = [&] {
    if (!open) return;
    PmfTable t(feature, std::move(counts));
    if (t.sample_size() != declared) {
      throw parse_error(line_no, "pmf table '" + feature + "': counts sum to " + std::to_string(t.sample_size()) +
                                     ", header says M=" + std::to_string(declared));
    }
    tables.push_back(std::move(t));
    counts = {};
    feature.clear();
    open = false;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# M=", 0) == 0) {
      close();
      const auto m = text::parse_real(line.substr(4));
      if (!m || *m < 1 || *m != static_cast<double>(static_cast<std::size_t>(*m))) {
        throw parse_error(line_no, "bad sample size");
      }
      declared = static_cast<std::size_t>(*m);
      open = true;
      continue;
    }
    if (!open) throw parse_error(line_no, "table row before '# M=' header");
    const auto fields = text::split(line, '\t');
    if (fields.size() != 4) throw parse_error(line_no, "expected 4 tab-separated fields");
    if (feature.empty()) {
      feature = fields[0];
    } else if (feature != fields[0]) {
      throw parse_error(line_no, "feature name changes inside one table");
    }
    const auto c = text::parse_real(fields[2]);
    if (!c || *c < 1 || *c != static_cast<double>(static_cast<std::size_t>(*c))) {
      throw parse_error(line_no, "bad count");
    }
    if (!counts.emplace(fields[1], static_cast<std::size_t>(*c)).second) {
      throw parse_error(line_no, "duplicate symbol '" + fields[1] + "'");
    }
  }
  close();
  return tables;
}

}  // namespace netprep::pmf
