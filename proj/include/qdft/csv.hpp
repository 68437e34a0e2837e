#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qdft {

/// Ten significant digits, '.' decimal separator ("%.10g").
std::string format_number(double v);

/// RFC 4180 style writer: fields containing a comma, quote or line break are
/// quoted, embedded quotes doubled.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

/// Parsed CSV with a header row. Rows are keyed by column name.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
  std::vector<std::size_t> lines;  ///< 1-based source line of each row

  bool has_column(const std::string& name) const;
};

CsvTable parse_csv(std::istream& in, const std::string& module = "workbench");
CsvTable read_csv_file(const std::string& path, const std::string& module = "workbench");

double parse_double(std::string_view text, const std::string& module, std::size_t line);
int parse_int(std::string_view text, const std::string& module, std::size_t line);

}  // namespace qdft
