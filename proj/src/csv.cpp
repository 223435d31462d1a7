#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "netprep/error.hpp"
#include "netprep/io.hpp"
#include "netprep/text.hpp"

namespace netprep::io {
namespace {

// RFC-4180 record reader. Quoted fields may span lines; "" escapes a quote.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Returns false at end of input. `line` is the line the record started on.
  bool next(std::vector<std::string>& fields, std::vector<bool>& quoted_fields, std::size_t& line) {
    fields.clear();
    quoted_fields.clear();
    int c = in_.get();
    if (c == EOF) return false;
    ++line_;
    line = line_;
    std::string field;
    bool quoted = false;
    bool after_quote = false;
    while (true) {
      if (c == EOF) {
        if (quoted) throw parse_error(line, "unterminated quoted field");
        fields.push_back(std::move(field));
        quoted_fields.push_back(after_quote);
        return true;
      }
      const char ch = static_cast<char>(c);
      if (quoted) {
        if (ch == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            quoted = false;
            after_quote = true;
          }
        } else {
          if (ch == '\n') ++line_;
          field.push_back(ch);
        }
      } else if (ch == ',') {
        fields.push_back(std::move(field));
        quoted_fields.push_back(after_quote);
        field.clear();
        after_quote = false;
      } else if (ch == '\n' || (ch == '\r' && in_.peek() == '\n')) {
        if (ch == '\r') in_.get();
        fields.push_back(std::move(field));
        quoted_fields.push_back(after_quote);
        return true;
      } else if (ch == '"' && field.empty() && !after_quote) {
        quoted = true;
      } else {
        if (after_quote) throw parse_error(line, "text after closing quote");
        field.push_back(ch);
      }
      c = in_.get();
    }
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::string quote_csv(std::string_view s) {
  if (!s.empty() && s != "?" && s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

Dataset read_csv(std::istream& in, const std::vector<FeatureDescriptor>& schema, const CsvOptions& options) {
  const std::size_t width = schema.size() + 1 + options.ignored_trailing;
  std::vector<std::unordered_map<std::string, std::uint32_t>> lookups(schema.size());
  for (std::size_t f = 0; f < schema.size(); ++f) {
    for (std::size_t i = 0; i < schema[f].domain.size(); ++i) {
      lookups[f].emplace(schema[f].domain[i], static_cast<std::uint32_t>(i));
    }
  }

  std::vector<Column> columns(schema.size());
  std::vector<ClassLabel> labels;
  CsvReader reader(in);
  std::vector<std::string> fields;
  std::vector<bool> quoted;
  std::size_t line = 0;
  while (reader.next(fields, quoted, line)) {
    if (fields.size() == 1 && fields[0].empty() && !quoted[0]) continue;  // blank line
    if (fields.size() != width) {
      throw parse_error(line, "expected " + std::to_string(width) + " fields, found " + std::to_string(fields.size()));
    }
    for (std::size_t f = 0; f < schema.size(); ++f) {
      const auto& d = schema[f];
      const std::string& cell = fields[f];
      if (!quoted[f] && (cell.empty() || cell == "?")) throw parse_error(line, "missing value for '" + d.name + "'");
      if (d.kind == FeatureKind::Numeric) {
        const auto v = text::parse_real(text::trim(cell));
        if (!v) throw parse_error(line, "non-numeric value '" + cell + "' for '" + d.name + "'");
        columns[f].values.push_back(*v);
      } else {
        const auto it = lookups[f].find(cell);
        if (it == lookups[f].end()) throw parse_error(line, "undeclared symbol '" + cell + "' for '" + d.name + "'");
        columns[f].codes.push_back(it->second);
      }
    }
    const std::string& label = fields[schema.size()];
    if (label.empty()) throw parse_error(line, "missing class label");
    labels.push_back(label_from_symbol(label));
  }
  return Dataset(options.name, schema, std::move(columns), std::move(labels));
}

Dataset read_csv_file(const std::filesystem::path& path, const std::vector<FeatureDescriptor>& schema,
                      const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open '" + path.string() + "'");
  return read_csv(in, schema, options);
}

void write_csv(const Dataset& dataset, std::ostream& out) {
  const auto labels = dataset.labels();
  std::string row;
  for (std::size_t r = 0; r < dataset.num_rows(); ++r) {
    row.clear();
    for (std::size_t f = 0; f < dataset.num_features(); ++f) {
      const auto& d = dataset.descriptor(f);
      if (d.kind == FeatureKind::Numeric) {
        row += text::format_real(dataset.column(f).values[r]);
      } else {
        row += quote_csv(d.domain[dataset.column(f).codes[r]]);
      }
      row += ',';
    }
    row += to_string(labels[r]);
    row += '\n';
    out << row;
  }
  if (!out) throw error("write failure while emitting CSV");
}

void write_csv_file(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot create '" + path.string() + "'");
  write_csv(dataset, out);
  out.flush();
  if (!out) throw error("write failure on '" + path.string() + "'");
}

}  // namespace netprep::io
