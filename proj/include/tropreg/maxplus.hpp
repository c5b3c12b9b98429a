#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tropreg {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Absolute tolerance when comparing a maximum cycle mean against zero.
inline constexpr double kCycleMeanTol = 1e-9;

/// Absolute tolerance for argmax ties and pattern fixed-point comparisons.
inline constexpr double kPatternTol = 1e-9;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by kleene_star when the input has a positive maximum cycle mean,
/// i.e. the star does not exist.
class PositiveCycleMean : public std::domain_error {
 public:
  PositiveCycleMean()
      : std::domain_error("kleene_star: positive maximum cycle mean, star does not exist") {}
};

class InfeasiblePattern : public std::domain_error {
 public:
  InfeasiblePattern() : std::domain_error("pattern is infeasible") {}
};

/// Scalar of the max-plus semiring: a finite real or -infinity.
/// NaN and +infinity are rejected at construction, so arithmetic on stored
/// values can never produce NaN (there is no +inf to collide with -inf).
class ExtReal {
 public:
  constexpr ExtReal() noexcept : v_(kNegInf) {}
  ExtReal(double v) : v_(v) {
    if (v != v || v == std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument("ExtReal: value must be finite or -inf");
    }
  }

  static constexpr ExtReal neg_inf() noexcept { return ExtReal(); }

  constexpr bool finite() const noexcept { return v_ != kNegInf; }
  constexpr double value() const noexcept { return v_; }

  friend constexpr bool operator==(ExtReal a, ExtReal b) noexcept { return a.v_ == b.v_; }
  friend constexpr bool operator!=(ExtReal a, ExtReal b) noexcept { return a.v_ != b.v_; }
  friend constexpr bool operator<(ExtReal a, ExtReal b) noexcept { return a.v_ < b.v_; }
  friend constexpr bool operator<=(ExtReal a, ExtReal b) noexcept { return a.v_ <= b.v_; }
  friend constexpr bool operator>(ExtReal a, ExtReal b) noexcept { return a.v_ > b.v_; }
  friend constexpr bool operator>=(ExtReal a, ExtReal b) noexcept { return a.v_ >= b.v_; }

 private:
  double v_;
};

/// Semiring addition: max.
constexpr ExtReal oplus(ExtReal a, ExtReal b) noexcept { return a < b ? b : a; }

/// Semiring multiplication: +, with -inf absorbing.
inline ExtReal otimes(ExtReal a, ExtReal b) {
  if (!a.finite() || !b.finite()) return ExtReal::neg_inf();
  return ExtReal(a.value() + b.value());
}

/// Nonnegative residual magnitude; the infinite value encodes a support
/// mismatch between the compared vectors.
class ResidualValue {
 public:
  constexpr ResidualValue() noexcept : v_(std::numeric_limits<double>::infinity()) {}
  ResidualValue(double v) : v_(v) {
    if (v != v || v < 0.0) {
      throw std::invalid_argument("ResidualValue: value must be nonnegative");
    }
  }

  static constexpr ResidualValue infinity() noexcept { return ResidualValue(); }

  constexpr bool finite() const noexcept {
    return v_ != std::numeric_limits<double>::infinity();
  }
  constexpr double value() const noexcept { return v_; }

  friend constexpr bool operator==(ResidualValue a, ResidualValue b) noexcept {
    return a.v_ == b.v_;
  }
  friend constexpr bool operator<(ResidualValue a, ResidualValue b) noexcept {
    return a.v_ < b.v_;
  }
  friend constexpr bool operator<=(ResidualValue a, ResidualValue b) noexcept {
    return a.v_ <= b.v_;
  }

 private:
  double v_;
};

enum class Norm { one, two, inf };

class MaxPlusVector {
 public:
  MaxPlusVector() = default;
  /// len entries, all -inf.
  explicit MaxPlusVector(std::size_t len) : e_(len) {}
  MaxPlusVector(std::initializer_list<double> values) {
    e_.reserve(values.size());
    for (double v : values) e_.emplace_back(v);
  }

  static MaxPlusVector all_neg_inf(std::size_t len) { return MaxPlusVector(len); }
  static MaxPlusVector constant(std::size_t len, double v) {
    MaxPlusVector x(len);
    for (std::size_t i = 0; i < len; ++i) x[i] = ExtReal(v);
    return x;
  }

  std::size_t size() const noexcept { return e_.size(); }
  ExtReal operator[](std::size_t i) const { return e_[i]; }
  ExtReal& operator[](std::size_t i) { return e_[i]; }

  friend bool operator==(const MaxPlusVector&, const MaxPlusVector&) = default;

 private:
  std::vector<ExtReal> e_;
};

/// Dense row-major max-plus matrix. The shape is fixed at construction.
class MaxPlusMatrix {
 public:
  MaxPlusMatrix() = default;
  /// rows x cols entries, all -inf.
  MaxPlusMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}
  MaxPlusMatrix(std::initializer_list<std::initializer_list<double>> rows);

  /// Max-plus identity: zero diagonal, -inf elsewhere.
  static MaxPlusMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  ExtReal operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  ExtReal& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

  MaxPlusVector row(std::size_t i) const;
  MaxPlusVector col(std::size_t j) const;

  friend bool operator==(const MaxPlusMatrix&, const MaxPlusMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ExtReal> e_;
};

/// Indices of finite entries, ascending.
std::vector<std::size_t> support(const MaxPlusVector& x);

MaxPlusVector mat_vec(const MaxPlusMatrix& a, const MaxPlusVector& x);
MaxPlusMatrix mat_mat(const MaxPlusMatrix& a, const MaxPlusMatrix& b);

/// Extended p-norm distance: the classical p-norm of the finite sub-vectors
/// when supports coincide, +inf otherwise. Matching empty supports give 0.
ResidualValue pnorm_distance(const MaxPlusVector& x, const MaxPlusVector& y, Norm p);

/// Half the squared extended 2-norm of A (x) x - y.
ResidualValue residual(const MaxPlusMatrix& a, const MaxPlusVector& y, const MaxPlusVector& x);

/// Maximum mean edge weight over directed cycles of the finite-weight
/// digraph of a square matrix; -inf when that digraph is acyclic.
/// Karp's algorithm, O(d^3).
ExtReal max_cycle_mean(const MaxPlusMatrix& b);

/// I (+) B (+) B^2 (+) ..., computed as a longest-path closure.
/// Throws PositiveCycleMean when max_cycle_mean(B) > 0 (beyond tolerance).
MaxPlusMatrix kleene_star(const MaxPlusMatrix& b);

/// Entrywise arithmetic mean of the columns, averaging only finite entries
/// per row; a row with no finite entry yields -inf.
MaxPlusVector star_column_mean(const MaxPlusMatrix& bstar);

}  // namespace tropreg
