#include <qdft/csv.hpp>
#include <qdft/errors.hpp>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

namespace qdft {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      out_ << f;
      continue;
    }
    out_ << '"';
    for (char c : f) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  }
  out_ << '\n';
}

bool CsvTable::has_column(const std::string& name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

namespace {

// Splits one record; quoted fields may span lines, so more input is pulled
// from `in` as needed.
bool read_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line, const std::string& module) {
  std::string text;
  if (!std::getline(in, text)) return false;
  ++line;
  fields.clear();
  std::string cur;
  bool quoted = false;
  std::size_t i = 0;
  while (true) {
    if (i == text.size()) {
      if (!quoted) break;
      std::string more;
      if (!std::getline(in, more)) throw ParseError(module, line, "unterminated quoted field");
      ++line;
      cur += '\n';
      text = more;
      i = 0;
      continue;
    }
    const char c = text[i++];
    if (quoted) {
      if (c == '"') {
        if (i < text.size() && text[i] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return true;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

CsvTable parse_csv(std::istream& in, const std::string& module) {
  CsvTable t;
  std::vector<std::string> fields;
  std::size_t line = 0;
  // Leading '#' lines are comments.
  while (true) {
    const auto pos = in.tellg();
    std::string peek;
    if (!std::getline(in, peek)) return t;
    if (!peek.empty() && peek[0] == '#') {
      ++line;
      continue;
    }
    in.clear();
    in.seekg(pos);
    break;
  }
  if (!read_record(in, fields, line, module)) return t;
  for (auto& f : fields) t.header.push_back(trim(f));
  while (read_record(in, fields, line, module)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    if (!fields.empty() && !fields[0].empty() && fields[0][0] == '#') continue;
    if (fields.size() != t.header.size()) {
      throw ParseError(module, line,
                       "expected " + std::to_string(t.header.size()) + " fields, found " + std::to_string(fields.size()));
    }
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < fields.size(); ++i) row[t.header[i]] = trim(fields[i]);
    t.rows.push_back(std::move(row));
    t.lines.push_back(line);
  }
  return t;
}

CsvTable read_csv_file(const std::string& path, const std::string& module) {
  std::ifstream in(path);
  if (!in) throw ConfigError(module, "cannot open '" + path + "'");
  return parse_csv(in, module);
}

double parse_double(std::string_view text, const std::string& module, std::size_t line) {
  const std::string s(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw ParseError(module, line, "'" + s + "' is not a number");
  }
  return v;
}

int parse_int(std::string_view text, const std::string& module, std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError(module, line, "'" + std::string(text) + "' is not an integer");
  }
  return v;
}

}  // namespace qdft
