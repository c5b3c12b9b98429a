#include "tropreg/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace tropreg {

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

// Whitespace tokenizer keeping 1-based line/column positions.
std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t line = 1, col = 1;
  std::string cur;
  std::size_t cur_line = 0, cur_col = 0;
  auto flush = [&]() {
    if (!cur.empty()) {
      tokens.push_back({cur, cur_line, cur_col});
      cur.clear();
    }
  };
  for (char c : text) {
    if (c == '\n') {
      flush();
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      flush();
      ++col;
      continue;
    }
    if (cur.empty()) {
      cur_line = line;
      cur_col = col;
    }
    cur.push_back(c);
    ++col;
  }
  flush();
  return tokens;
}

class TokenReader {
 public:
  explicit TokenReader(const std::string& text) : tokens_(tokenize(text)) {}

  const Token& next(const char* what) {
    if (pos_ >= tokens_.size()) {
      const std::size_t line = tokens_.empty() ? 1 : tokens_.back().line;
      throw ParseError(std::string("unexpected end of input, expected ") + what, line, 1);
    }
    return tokens_[pos_++];
  }

  bool exhausted() const noexcept { return pos_ >= tokens_.size(); }
  const Token& last() const { return tokens_[pos_ - 1]; }

  void expect_keyword(const char* kw) {
    const Token& t = next(kw);
    if (t.text != kw) {
      throw ParseError(std::string("expected '") + kw + "', found '" + t.text + "'", t.line,
                       t.column);
    }
  }

  std::size_t next_count(const char* what) {
    const Token& t = next(what);
    char* end = nullptr;
    const unsigned long long v = std::strtoull(t.text.c_str(), &end, 10);
    const bool digits_only = t.text.find_first_not_of("0123456789") == std::string::npos;
    if (end == t.text.c_str() || *end != '\0' || !digits_only || t.text.empty()) {
      throw ParseError(std::string("expected ") + what + ", found '" + t.text + "'", t.line,
                       t.column);
    }
    return static_cast<std::size_t>(v);
  }

  double next_scalar(const char* what) {
    const Token& t = next(what);
    if (t.text == "-inf") return kNegInf;
    char* end = nullptr;
    const double v = std::strtod(t.text.c_str(), &end);
    if (end == t.text.c_str() || *end != '\0' || v != v ||
        v == std::numeric_limits<double>::infinity() || v == kNegInf) {
      throw ParseError(std::string("expected ") + what + ", found '" + t.text + "'", t.line,
                       t.column);
    }
    return v;
  }

  void expect_end() {
    if (!exhausted()) {
      const Token& t = tokens_[pos_];
      throw ParseError("trailing content '" + t.text + "'", t.line, t.column);
    }
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

std::string format_scalar(double v) {
  if (v == kNegInf) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string matrix_to_text(const MaxPlusMatrix& m) {
  std::string out = "maxplus " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += format_scalar(m(i, j).value());
    }
    out += '\n';
  }
  return out;
}

MaxPlusMatrix matrix_from_text(const std::string& text) {
  TokenReader r(text);
  r.expect_keyword("maxplus");
  const std::size_t n = r.next_count("row count");
  const std::size_t d = r.next_count("column count");
  MaxPlusMatrix m(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double v = r.next_scalar("matrix entry");
      if (v != kNegInf) m(i, j) = ExtReal(v);
    }
  }
  r.expect_end();
  return m;
}

std::string vector_to_text(const MaxPlusVector& v) {
  MaxPlusMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return matrix_to_text(m);
}

MaxPlusVector vector_from_text(const std::string& text) {
  const MaxPlusMatrix m = matrix_from_text(text);
  if (m.cols() != 1) throw ParseError("expected a single-column matrix", 1, 1);
  return m.col(0);
}

std::string pattern_to_string(const Pattern& p) {
  std::string out;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (i > 0) out += ';';
    for (std::size_t t = 0; t < p.row_sets[i].size(); ++t) {
      if (t > 0) out += ',';
      out += std::to_string(p.row_sets[i][t] + 1);
    }
  }
  return out;
}

Pattern pattern_from_string(const std::string& text) {
  Pattern p;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<int> set;
    std::stringstream items(row);
    std::string item;
    while (std::getline(items, item, ',')) {
      char* end = nullptr;
      const long v = std::strtol(item.c_str(), &end, 10);
      if (end == item.c_str() || *end != '\0' || v < 1) {
        throw std::invalid_argument("pattern_from_string: bad index '" + item + "'");
      }
      set.push_back(static_cast<int>(v) - 1);
    }
    if (set.empty()) throw std::invalid_argument("pattern_from_string: empty row set");
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    p.row_sets.push_back(std::move(set));
  }
  if (p.row_sets.empty()) throw std::invalid_argument("pattern_from_string: empty pattern");
  return p;
}

std::string orbit_to_text(const Orbit& orbit) {
  std::string out = "orbit " + std::to_string(orbit.dim()) + " " +
                    std::to_string(orbit.transitions()) + " " + format_scalar(orbit.sigma) + " " +
                    std::to_string(orbit.seed) + "\n";
  for (std::size_t i = 0; i < orbit.dim(); ++i) {
    for (std::size_t t = 0; t < orbit.states.cols(); ++t) {
      if (t > 0) out += ' ';
      out += format_scalar(orbit.states(i, t).value());
    }
    out += '\n';
  }
  return out;
}

Orbit orbit_from_text(const std::string& text) {
  TokenReader r(text);
  r.expect_keyword("orbit");
  const std::size_t d = r.next_count("dimension");
  const std::size_t n = r.next_count("transition count");
  const double sigma = r.next_scalar("sigma");
  const std::size_t seed = r.next_count("seed");
  if (sigma < 0.0) throw ParseError("sigma must be >= 0", r.last().line, r.last().column);
  Orbit orbit;
  orbit.sigma = sigma;
  orbit.seed = static_cast<std::uint64_t>(seed);
  orbit.source = Orbit::Source::ingested;
  orbit.states = MaxPlusMatrix(d, n + 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t t = 0; t <= n; ++t) {
      const double v = r.next_scalar("orbit entry");
      if (v != kNegInf) orbit.states(i, t) = ExtReal(v);
    }
  }
  r.expect_end();
  return orbit;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace tropreg
