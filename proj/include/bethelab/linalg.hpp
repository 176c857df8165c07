#pragma once

#include <utility>
#include <vector>

#include "bethelab/errors.hpp"
#include "bethelab/scalar.hpp"

namespace bethelab {

/// Dense square-or-rectangular matrix over a coefficient field.  Everything in
/// this project is desk-scale (dimension <= a few hundred), so a dense
/// row-major store with zero-skipping products is the whole story.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(long rows, long cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), scalar_traits<S>::zero()) {}

  static Matrix identity(long n) {
    Matrix m(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::one();
    return m;
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  S& operator()(long r, long c) { return a_[static_cast<std::size_t>(r * cols_ + c)]; }
  const S& operator()(long r, long c) const { return a_[static_cast<std::size_t>(r * cols_ + c)]; }

  Matrix operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix out(rows_, other.cols_);
    for (long i = 0; i < rows_; ++i)
      for (long k = 0; k < cols_; ++k) {
        const S& x = (*this)(i, k);
        if (is_zero(x)) continue;
        for (long j = 0; j < other.cols_; ++j) {
          const S& y = other(k, j);
          if (is_zero(y)) continue;
          out(i, j) += x * y;
        }
      }
    return out;
  }

  Matrix operator+(const Matrix& other) const {
    check_same_shape(other);
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + other.a_[i];
    return out;
  }

  Matrix operator-(const Matrix& other) const {
    check_same_shape(other);
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - other.a_[i];
    return out;
  }

  Matrix& operator+=(const Matrix& other) {
    check_same_shape(other);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
    return *this;
  }

  Matrix scaled(const S& c) const {
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = c * a_[i];
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  bool is_zero_matrix() const {
    for (const S& x : a_)
      if (!is_zero(x)) return false;
    return true;
  }

  /// Entry of largest magnitude, returned as |entry| in the field.
  S max_abs_entry() const {
    S best = scalar_traits<S>::zero();
    for (const S& x : a_) {
      S ax = scalar_traits<S>::abs(x);
      if (scalar_traits<S>::less(best, ax)) best = ax;
    }
    return best;
  }

  double max_abs_approx() const {
    double best = 0.0;
    for (const S& x : a_) best = std::max(best, scalar_traits<S>::abs_approx(x));
    return best;
  }

  static Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (long i = 0; i < a.rows_; ++i)
      for (long j = 0; j < a.cols_; ++j) {
        if (is_zero(a(i, j))) continue;
        for (long k = 0; k < b.rows_; ++k)
          for (long l = 0; l < b.cols_; ++l)
            out(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::vector<S> apply(const std::vector<S>& v) const {
    if (static_cast<long>(v.size()) != cols_) throw DimensionMismatch("matrix apply shape mismatch");
    std::vector<S> out(static_cast<std::size_t>(rows_), scalar_traits<S>::zero());
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j) {
        const S& x = (*this)(i, j);
        if (!is_zero(x)) out[i] += x * v[j];
      }
    return out;
  }

  /// Row-covector application w -> w M.
  std::vector<S> apply_left(const std::vector<S>& w) const {
    if (static_cast<long>(w.size()) != rows_) throw DimensionMismatch("matrix apply_left shape mismatch");
    std::vector<S> out(static_cast<std::size_t>(cols_), scalar_traits<S>::zero());
    for (long i = 0; i < rows_; ++i) {
      const S& x = w[i];
      if (is_zero(x)) continue;
      for (long j = 0; j < cols_; ++j) {
        const S& y = (*this)(i, j);
        if (!is_zero(y)) out[j] += x * y;
      }
    }
    return out;
  }

 private:
  void check_same_shape(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw DimensionMismatch("matrix shape mismatch");
  }

  long rows_ = 0;
  long cols_ = 0;
  std::vector<S> a_;
};

/// Determinant.  Exact backend: Bareiss fraction-free elimination (divisions
/// are exact at every step).  Float backend: partial-pivoted elimination.
template <class S>
S determinant(Matrix<S> m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
  const long n = m.rows();
  if (n == 0) return scalar_traits<S>::one();
  int sign = 1;
  if constexpr (scalar_traits<S>::is_exact) {
    S prev = scalar_traits<S>::one();
    for (long k = 0; k + 1 < n; ++k) {
      long pivot = -1;
      for (long r = k; r < n; ++r)
        if (!is_zero(m(r, k))) {
          pivot = r;
          break;
        }
      if (pivot < 0) return scalar_traits<S>::zero();
      if (pivot != k) {
        for (long j = 0; j < n; ++j) std::swap(m(pivot, j), m(k, j));
        sign = -sign;
      }
      for (long i = k + 1; i < n; ++i) {
        for (long j = k + 1; j < n; ++j)
          m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
        m(i, k) = scalar_traits<S>::zero();
      }
      prev = m(k, k);
    }
    S det = m(n - 1, n - 1);
    return sign < 0 ? S(-det) : det;
  } else {
    S det = scalar_traits<S>::one();
    for (long k = 0; k < n; ++k) {
      long pivot = k;
      double best = scalar_traits<S>::abs_approx(m(k, k));
      for (long r = k + 1; r < n; ++r) {
        double cand = scalar_traits<S>::abs_approx(m(r, k));
        if (cand > best) {
          best = cand;
          pivot = r;
        }
      }
      if (best == 0.0) return scalar_traits<S>::zero();
      if (pivot != k) {
        for (long j = 0; j < n; ++j) std::swap(m(pivot, j), m(k, j));
        sign = -sign;
      }
      det *= m(k, k);
      for (long i = k + 1; i < n; ++i) {
        S factor = m(i, k) / m(k, k);
        if (is_zero(factor)) continue;
        for (long j = k; j < n; ++j) m(i, j) -= factor * m(k, j);
      }
    }
    return sign < 0 ? S(-det) : det;
  }
}

/// Solves M x = b by pivoted elimination; throws DegenerateJacobian when the
/// pivot collapses.  Used by the Bethe-equation Newton iteration.
template <class S>
std::vector<S> solve_linear(Matrix<S> m, std::vector<S> b) {
  if (m.rows() != m.cols() || static_cast<long>(b.size()) != m.rows())
    throw DimensionMismatch("solve_linear shape mismatch");
  const long n = m.rows();
  for (long k = 0; k < n; ++k) {
    long pivot = k;
    double best = scalar_traits<S>::abs_approx(m(k, k));
    for (long r = k + 1; r < n; ++r) {
      double cand = scalar_traits<S>::abs_approx(m(r, k));
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best < 1e-300) throw DegenerateJacobian("singular linear system");
    if (pivot != k) {
      for (long j = 0; j < n; ++j) std::swap(m(pivot, j), m(k, j));
      std::swap(b[pivot], b[k]);
    }
    for (long i = k + 1; i < n; ++i) {
      S factor = m(i, k) / m(k, k);
      if (is_zero(factor)) continue;
      for (long j = k; j < n; ++j) m(i, j) -= factor * m(k, j);
      b[i] -= factor * b[k];
    }
  }
  std::vector<S> x(static_cast<std::size_t>(n), scalar_traits<S>::zero());
  for (long i = n - 1; i >= 0; --i) {
    S acc = b[i];
    for (long j = i + 1; j < n; ++j) acc -= m(i, j) * x[j];
    x[i] = acc / m(i, i);
  }
  return x;
}

template <class S>
double max_abs_approx(const std::vector<S>& v) {
  double best = 0.0;
  for (const S& x : v) best = std::max(best, scalar_traits<S>::abs_approx(x));
  return best;
}

template <class S>
S max_abs_entry(const std::vector<S>& v) {
  S best = scalar_traits<S>::zero();
  for (const S& x : v) {
    S ax = scalar_traits<S>::abs(x);
    if (scalar_traits<S>::less(best, ax)) best = ax;
  }
  return best;
}

}  // namespace bethelab
