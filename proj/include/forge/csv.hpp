#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace forge::csv {

// Quotes a field when it contains a comma, quote, CR or LF (RFC 4180).
std::string field(std::string_view s);
std::string number(double v);

// Joins already-escaped fields and terminates the record with CRLF.
std::string record(const std::vector<std::string>& fields);

template <class Matrix>
std::string grid(const Matrix& m, const std::vector<std::string>& labels, std::string_view corner) {
  std::string out;
  std::vector<std::string> header{field(corner)};
  for (const auto& l : labels) header.push_back(field(l));
  out += record(header);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::vector<std::string> row{field(labels[i])};
    for (std::size_t j = 0; j < labels.size(); ++j) row.push_back(number(static_cast<double>(m[i][j])));
    out += record(row);
  }
  return out;
}

}  // namespace forge::csv
