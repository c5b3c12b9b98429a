#include "tropreg/maxplus.hpp"

#include <cmath>
#include <cstdlib>

namespace tropreg {

MaxPlusMatrix::MaxPlusMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  e_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("matrix initializer rows have unequal lengths");
    for (double v : r) e_.emplace_back(v);
  }
}

MaxPlusMatrix MaxPlusMatrix::identity(std::size_t n) {
  MaxPlusMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ExtReal(0.0);
  return m;
}

MaxPlusVector MaxPlusMatrix::row(std::size_t i) const {
  MaxPlusVector r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

MaxPlusVector MaxPlusMatrix::col(std::size_t j) const {
  MaxPlusVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<std::size_t> support(const MaxPlusVector& x) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].finite()) s.push_back(i);
  }
  return s;
}

MaxPlusVector mat_vec(const MaxPlusMatrix& a, const MaxPlusVector& x) {
  if (a.cols() != x.size()) throw DimensionMismatch("mat_vec: A.cols != x.len");
  MaxPlusVector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    ExtReal acc = ExtReal::neg_inf();
    for (std::size_t j = 0; j < a.cols(); ++j) {
      acc = oplus(acc, otimes(a(i, j), x[j]));
    }
    r[i] = acc;
  }
  return r;
}

MaxPlusMatrix mat_mat(const MaxPlusMatrix& a, const MaxPlusMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("mat_mat: A.cols != B.rows");
  MaxPlusMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      ExtReal acc = ExtReal::neg_inf();
      for (std::size_t k = 0; k < a.cols(); ++k) {
        acc = oplus(acc, otimes(a(i, k), b(k, j)));
      }
      r(i, j) = acc;
    }
  }
  return r;
}

ResidualValue pnorm_distance(const MaxPlusVector& x, const MaxPlusVector& y, Norm p) {
  if (x.size() != y.size()) throw DimensionMismatch("pnorm_distance: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].finite() != y[i].finite()) return ResidualValue::infinity();
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].finite()) continue;
    const double d = std::fabs(x[i].value() - y[i].value());
    switch (p) {
      case Norm::one:
        acc += d;
        break;
      case Norm::two:
        acc += d * d;
        break;
      case Norm::inf:
        acc = d > acc ? d : acc;
        break;
    }
  }
  if (p == Norm::two) acc = std::sqrt(acc);
  return ResidualValue(acc);
}

ResidualValue residual(const MaxPlusMatrix& a, const MaxPlusVector& y, const MaxPlusVector& x) {
  ResidualValue d = pnorm_distance(mat_vec(a, x), y, Norm::two);
  if (!d.finite()) return ResidualValue::infinity();
  return ResidualValue(d.value() * d.value() * 0.5);
}

ExtReal max_cycle_mean(const MaxPlusMatrix& b) {
  if (b.rows() != b.cols()) throw DimensionMismatch("max_cycle_mean: matrix must be square");
  const std::size_t d = b.rows();
  if (d == 0) return ExtReal::neg_inf();

  // walk[k][v]: best weight of a walk with exactly k edges ending at v,
  // from any start vertex (multi-source Karp).
  std::vector<std::vector<double>> walk(d + 1, std::vector<double>(d, kNegInf));
  walk[0].assign(d, 0.0);
  for (std::size_t k = 1; k <= d; ++k) {
    for (std::size_t v = 0; v < d; ++v) {
      double best = kNegInf;
      for (std::size_t u = 0; u < d; ++u) {
        const ExtReal w = b(v, u);  // edge u -> v
        if (!w.finite() || walk[k - 1][u] == kNegInf) continue;
        const double cand = walk[k - 1][u] + w.value();
        if (cand > best) best = cand;
      }
      walk[k][v] = best;
    }
  }

  double lambda = kNegInf;
  for (std::size_t v = 0; v < d; ++v) {
    if (walk[d][v] == kNegInf) continue;
    double inner = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < d; ++k) {
      if (walk[k][v] == kNegInf) continue;
      const double cand = (walk[d][v] - walk[k][v]) / static_cast<double>(d - k);
      if (cand < inner) inner = cand;
    }
    if (inner > lambda) lambda = inner;
  }
  if (lambda == kNegInf) return ExtReal::neg_inf();
  return ExtReal(lambda);
}

MaxPlusMatrix kleene_star(const MaxPlusMatrix& b) {
  if (b.rows() != b.cols()) throw DimensionMismatch("kleene_star: matrix must be square");
  const std::size_t d = b.rows();

  // Start from I (+) B, then Floyd-Warshall longest-path closure. A diagonal
  // entry drifting above zero witnesses a positive cycle: abort.
  std::vector<double> s(d * d, kNegInf);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const ExtReal v = b(i, j);
      s[i * d + j] = (i == j) ? (v.finite() && v.value() > 0.0 ? v.value() : 0.0)
                              : (v.finite() ? v.value() : kNegInf);
    }
    if (s[i * d + i] > kCycleMeanTol) throw PositiveCycleMean();
  }
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      const double sik = s[i * d + k];
      if (sik == kNegInf) continue;
      for (std::size_t j = 0; j < d; ++j) {
        const double skj = s[k * d + j];
        if (skj == kNegInf) continue;
        const double cand = sik + skj;
        if (cand > s[i * d + j]) s[i * d + j] = cand;
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (s[i * d + i] > kCycleMeanTol) throw PositiveCycleMean();
    }
  }
  MaxPlusMatrix star(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (s[i * d + j] != kNegInf) star(i, j) = ExtReal(s[i * d + j]);
    }
  }
  return star;
}

MaxPlusVector star_column_mean(const MaxPlusMatrix& bstar) {
  if (bstar.rows() != bstar.cols()) {
    throw DimensionMismatch("star_column_mean: matrix must be square");
  }
  const std::size_t d = bstar.rows();
  MaxPlusVector mean(d);
  for (std::size_t i = 0; i < d; ++i) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (bstar(i, j).finite()) {
        sum += bstar(i, j).value();
        ++count;
      }
    }
    if (count > 0) mean[i] = ExtReal(sum / static_cast<double>(count));
  }
  return mean;
}

}  // namespace tropreg
