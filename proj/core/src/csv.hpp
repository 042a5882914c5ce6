#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace convograph::detail {

struct CsvRow {
  std::size_t line = 0;  // 1-based line where the row starts
  std::vector<std::string> fields;
  bool well_formed = true;  // false on an unterminated quote
};

/// Minimal RFC 4180 reader: quoted fields may contain commas, doubled quotes
/// and line breaks. CRLF and LF line endings are both accepted.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  std::optional<CsvRow> next();

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

}  // namespace convograph::detail
