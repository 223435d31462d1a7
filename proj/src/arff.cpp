#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <unordered_map>

#include "netprep/error.hpp"
#include "netprep/io.hpp"
#include "netprep/text.hpp"

namespace netprep::io {
namespace {

struct Token {
  std::string value;
  bool quoted = false;
};

// Reads one possibly quoted token starting at `pos`; stops at `stop` (outside
// quotes) or end of input. Leaves `pos` on the stop character.
Token read_token(std::string_view s, std::size_t& pos, std::string_view stops, std::size_t line) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  Token tok;
  if (pos < s.size() && (s[pos] == '\'' || s[pos] == '"')) {
    const char quote = s[pos++];
    tok.quoted = true;
    bool closed = false;
    while (pos < s.size()) {
      const char c = s[pos++];
      if (c == '\\' && pos < s.size()) {
        tok.value.push_back(s[pos++]);
      } else if (c == quote) {
        closed = true;
        break;
      } else {
        tok.value.push_back(c);
      }
    }
    if (!closed) throw parse_error(line, "unterminated quoted token");
    if (pos < s.size() && stops.find(s[pos]) != std::string_view::npos) return tok;
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    if (pos < s.size() && stops.find(s[pos]) == std::string_view::npos) {
      throw parse_error(line, "unexpected text after quoted token");
    }
    return tok;
  }
  const std::size_t start = pos;
  while (pos < s.size() && stops.find(s[pos]) == std::string_view::npos) ++pos;
  tok.value = std::string(text::trim(s.substr(start, pos - start)));
  return tok;
}

std::vector<Token> split_tokens(std::string_view s, std::size_t line) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (true) {
    out.push_back(read_token(s, pos, ",", line));
    if (pos >= s.size()) break;
    ++pos;  // comma
  }
  return out;
}

bool needs_quoting(std::string_view s) {
  if (s.empty() || s == "?") return true;
  return s.find_first_of(" \t,'\"{}%\\") != std::string_view::npos;
}

std::string quote(std::string_view s) {
  if (!needs_quoting(s)) return std::string(s);
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

struct Attribute {
  std::string name;
  bool nominal = false;
  std::vector<std::string> domain;
  std::unordered_map<std::string, std::uint32_t> lookup;
};

Attribute parse_attribute(std::string_view rest, std::size_t line) {
  Attribute attr;
  std::size_t pos = 0;
  const Token name = read_token(rest, pos, " \t{", line);
  if (name.value.empty()) throw parse_error(line, "attribute without a name");
  attr.name = name.value;
  const std::string_view type = text::trim(rest.substr(pos));
  if (type.empty()) throw parse_error(line, "attribute '" + attr.name + "' has no type");
  if (type.front() == '{') {
    if (type.back() != '}') throw parse_error(line, "unterminated nominal domain for '" + attr.name + "'");
    attr.nominal = true;
    const std::string_view inner = type.substr(1, type.size() - 2);
    if (!text::trim(inner).empty()) {
      for (auto& tok : split_tokens(inner, line)) {
        if (tok.value.empty() && !tok.quoted) throw parse_error(line, "empty symbol in domain of '" + attr.name + "'");
        const auto code = static_cast<std::uint32_t>(attr.domain.size());
        if (!attr.lookup.emplace(tok.value, code).second) {
          throw parse_error(line, "duplicate symbol '" + tok.value + "' in domain of '" + attr.name + "'");
        }
        attr.domain.push_back(tok.value);
      }
    }
    return attr;
  }
  if (text::iequals(type, "numeric") || text::iequals(type, "real") || text::iequals(type, "integer")) {
    return attr;
  }
  throw parse_error(line, "unsupported attribute type '" + std::string(type) + "' for '" + attr.name + "'");
}

// Returns the keyword (lower-cased) of an '@' line and the remainder.
std::pair<std::string, std::string_view> split_keyword(std::string_view line) {
  std::size_t end = 0;
  while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
  return {text::to_lower(line.substr(0, end)), text::trim(line.substr(end))};
}

struct Header {
  std::string relation;
  std::vector<Attribute> attributes;
  std::size_t class_index = 0;
};

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no, std::string_view& content) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    content = text::trim(line);
    if (content.empty() || content.front() == '%') continue;
    return true;
  }
  return false;
}

Header read_header(std::istream& in, std::size_t& line_no) {
  Header header;
  bool have_relation = false;
  std::string line;
  std::string_view content;
  while (true) {
    if (!next_content_line(in, line, line_no, content)) {
      throw parse_error(line_no, "missing @data section");
    }
    if (content.front() != '@') throw parse_error(line_no, "expected a header declaration");
    auto [keyword, rest] = split_keyword(content);
    if (keyword == "@relation") {
      if (have_relation) throw parse_error(line_no, "duplicate @relation");
      std::size_t pos = 0;
      header.relation = read_token(rest, pos, "", line_no).value;
      have_relation = true;
    } else if (keyword == "@attribute") {
      if (!have_relation) throw parse_error(line_no, "@attribute before @relation");
      header.attributes.push_back(parse_attribute(rest, line_no));
      for (std::size_t i = 0; i + 1 < header.attributes.size(); ++i) {
        if (header.attributes[i].name == header.attributes.back().name) {
          throw parse_error(line_no, "duplicate attribute '" + header.attributes.back().name + "'");
        }
      }
    } else if (keyword == "@data") {
      break;
    } else {
      throw parse_error(line_no, "unknown declaration '" + keyword + "'");
    }
  }
  std::optional<std::size_t> class_index;
  for (std::size_t i = 0; i < header.attributes.size(); ++i) {
    if (text::iequals(header.attributes[i].name, "class")) class_index = i;
  }
  if (!class_index) throw parse_error(line_no, "no attribute named 'class'");
  if (!header.attributes[*class_index].nominal) throw parse_error(line_no, "class attribute must be nominal");
  header.class_index = *class_index;
  return header;
}

}  // namespace

Dataset read_arff(std::istream& in) {
  std::size_t line_no = 0;
  Header header = read_header(in, line_no);
  const std::size_t width = header.attributes.size();

  std::vector<Column> columns(width);
  std::vector<ClassLabel> labels;
  std::string line;
  std::string_view content;
  while (next_content_line(in, line, line_no, content)) {
    if (content.front() == '{') throw parse_error(line_no, "sparse rows are not supported");
    const auto tokens = split_tokens(content, line_no);
    if (tokens.size() != width) {
      throw parse_error(line_no, "expected " + std::to_string(width) + " values, found " +
                                     std::to_string(tokens.size()));
    }
    for (std::size_t a = 0; a < width; ++a) {
      const Token& tok = tokens[a];
      const Attribute& attr = header.attributes[a];
      if (!tok.quoted && (tok.value == "?" || tok.value.empty())) {
        throw parse_error(line_no, "missing value for '" + attr.name + "'");
      }
      if (attr.nominal) {
        const auto it = attr.lookup.find(tok.value);
        if (it == attr.lookup.end()) {
          throw parse_error(line_no, "undeclared symbol '" + tok.value + "' for '" + attr.name + "'");
        }
        if (a == header.class_index) {
          labels.push_back(label_from_symbol(tok.value));
        } else {
          columns[a].codes.push_back(it->second);
        }
      } else {
        const auto v = text::parse_real(tok.value);
        if (!v) throw parse_error(line_no, "non-numeric value '" + tok.value + "' for '" + attr.name + "'");
        columns[a].values.push_back(*v);
      }
    }
  }

  std::vector<FeatureDescriptor> descriptors;
  std::vector<Column> feature_columns;
  for (std::size_t a = 0; a < width; ++a) {
    if (a == header.class_index) continue;
    auto& attr = header.attributes[a];
    descriptors.push_back({attr.name, descriptors.size(),
                           attr.nominal ? FeatureKind::Nominal : FeatureKind::Numeric, std::move(attr.domain)});
    feature_columns.push_back(std::move(columns[a]));
  }
  return Dataset(header.relation, std::move(descriptors), std::move(feature_columns), std::move(labels));
}

Dataset read_arff_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open '" + path.string() + "'");
  return read_arff(in);
}

std::vector<FeatureDescriptor> read_arff_schema(std::istream& in) {
  std::size_t line_no = 0;
  Header header = read_header(in, line_no);
  std::vector<FeatureDescriptor> out;
  for (std::size_t a = 0; a < header.attributes.size(); ++a) {
    if (a == header.class_index) continue;
    auto& attr = header.attributes[a];
    out.push_back({attr.name, out.size(), attr.nominal ? FeatureKind::Nominal : FeatureKind::Numeric,
                   std::move(attr.domain)});
  }
  return out;
}

std::vector<FeatureDescriptor> read_arff_schema_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open '" + path.string() + "'");
  return read_arff_schema(in);
}

void write_arff(const Dataset& dataset, std::ostream& out) {
  out << "@relation " << quote(dataset.name()) << "\n\n";
  for (const auto& d : dataset.descriptors()) {
    out << "@attribute " << quote(d.name) << ' ';
    if (d.kind == FeatureKind::Numeric) {
      out << "numeric\n";
      continue;
    }
    out << '{';
    for (std::size_t i = 0; i < d.domain.size(); ++i) {
      if (i) out << ',';
      out << quote(d.domain[i]);
    }
    out << "}\n";
  }
  out << "@attribute class {normal,anomaly}\n\n@data\n";

  const auto labels = dataset.labels();
  std::string row;
  for (std::size_t r = 0; r < dataset.num_rows(); ++r) {
    row.clear();
    for (std::size_t f = 0; f < dataset.num_features(); ++f) {
      const auto& d = dataset.descriptor(f);
      if (d.kind == FeatureKind::Numeric) {
        row += text::format_real(dataset.column(f).values[r]);
      } else {
        row += quote(d.domain[dataset.column(f).codes[r]]);
      }
      row += ',';
    }
    row += to_string(labels[r]);
    row += '\n';
    out << row;
  }
  if (!out) throw error("write failure while emitting ARFF");
}

void write_arff_file(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot create '" + path.string() + "'");
  write_arff(dataset, out);
  out.flush();
  if (!out) throw error("write failure on '" + path.string() + "'");
}

}  // namespace netprep::io
