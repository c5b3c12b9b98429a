#pragma once

#include <string>

#include "tropreg/patterns.hpp"
#include "tropreg/sysid.hpp"

namespace tropreg {

/// Parse failure with 1-based line/column diagnostics.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// 17-significant-digit rendering; -inf prints as the literal token "-inf".
/// Finite values round-trip bit-exactly through parse_scalar.
std::string format_scalar(double v);

/// Matrix text format: header "maxplus n d", then n whitespace-separated rows.
std::string matrix_to_text(const MaxPlusMatrix& m);
MaxPlusMatrix matrix_from_text(const std::string& text);

/// Vectors are stored as n x 1 matrices.
std::string vector_to_text(const MaxPlusVector& v);
MaxPlusVector vector_from_text(const std::string& text);

/// Trace serialization: 1-based indices, rows joined by ';', indices within a
/// row joined by ',' (e.g. "1,2;1;2").
std::string pattern_to_string(const Pattern& p);
Pattern pattern_from_string(const std::string& text);

/// Orbit file: header "orbit d N sigma seed", then d rows of N+1 values.
std::string orbit_to_text(const Orbit& orbit);
Orbit orbit_from_text(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tropreg
