#include "csv.hpp"

#include <istream>

namespace convograph::detail {

std::optional<CsvRow> CsvReader::next() {
  std::string physical;
  while (true) {
    if (!std::getline(in_, physical)) return std::nullopt;
    ++line_;
    if (!physical.empty() && physical.back() == '\r') physical.pop_back();
    if (!physical.empty()) break;  // blank lines carry no row
  }

  CsvRow row;
  row.line = line_;
  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;
  std::size_t pos = 0;

  while (true) {
    if (pos == physical.size()) {
      if (!quoted) break;
      // Quoted field continues on the next physical line.
      if (!std::getline(in_, physical)) {
        row.well_formed = false;
        break;
      }
      ++line_;
      if (!physical.empty() && physical.back() == '\r') physical.pop_back();
      field.push_back('\n');
      pos = 0;
      continue;
    }
    const char c = physical[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < physical.size() && physical[pos] == '"') {
          field.push_back('"');
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == ',') {
      row.fields.push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
    } else if (c == '"' && field.empty() && !field_was_quoted) {
      quoted = true;
      field_was_quoted = true;
    } else if (field_was_quoted) {
      // Characters after a closing quote are not RFC 4180.
      row.well_formed = false;
      field.push_back(c);
    } else {
      field.push_back(c);
    }
  }
  row.fields.push_back(std::move(field));
  return row;
}

}  // namespace convograph::detail
