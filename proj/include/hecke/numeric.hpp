#ifndef HECKE_NUMERIC_HPP
#define HECKE_NUMERIC_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hecke/core.hpp"
#include "hecke/laurent.hpp"

namespace hecke {

using Complex = std::complex<double>;
/// 50 significant digits; used where truncated series sit near 1e-16.
using Real50 = boost::multiprecision::cpp_bin_float_50;

/// Per-field glue: conversion from exact rationals, conjugation, magnitude,
/// and the zero test used for pivots and pole detection.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static Rational from_rational(const Rational& q) { return q; }
  static Rational conj(const Rational& x) { return x; }
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
  static bool is_zero(const Rational& x) { return x == 0; }
  static std::string str(const Rational& x) { return x.get_str(); }
};

template <>
struct FieldTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr double kZeroTol = 1e-12;
  static Complex from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static bool is_zero(const Complex& x) { return std::abs(x) < kZeroTol; }
  static std::string str(const Complex& x) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", x.real(), x.imag());
    return buf;
  }
};

template <>
struct FieldTraits<Real50> {
  static constexpr bool exact = false;
  static Real50 from_rational(const Rational& q) {
    return Real50(q.get_num().get_str()) / Real50(q.get_den().get_str());
  }
  static Real50 conj(const Real50& x) { return x; }
  static double magnitude(const Real50& x) { return static_cast<double>(abs(x)); }
  static bool is_zero(const Real50& x) { return abs(x) < Real50("1e-40"); }
  static std::string str(const Real50& x) { return x.str(30); }
};

/// Evaluates a Laurent polynomial with exact coefficients in the field F.
template <class F>
F eval_poly(const LaurentPoly& p, const std::vector<F>& vars) {
  return p.evaluate(vars, [](const Rational& c) { return FieldTraits<F>::from_rational(c); });
}

/// Dense row-major matrix over F.
template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, F(0)) {}
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  F& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.c_ != y.r_) throw std::invalid_argument("matrix shape mismatch");
    Matrix z(x.r_, y.c_);
    for (std::size_t i = 0; i < x.r_; ++i)
      for (std::size_t k = 0; k < x.c_; ++k) {
        const F& xik = x(i, k);
        if (FieldTraits<F>::is_zero(xik) && FieldTraits<F>::exact) continue;
        for (std::size_t j = 0; j < y.c_; ++j) z(i, j) += xik * y(k, j);
      }
    return z;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }
  friend Matrix operator*(const F& s, Matrix x) {
    for (auto& v : x.a_) v *= s;
    return x;
  }
  std::vector<F> apply(const std::vector<F>& v) const {
    std::vector<F> out(r_, F(0));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }
  F trace() const {
    F s(0);
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) s += (*this)(i, i);
    return s;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }
  double max_abs_diff(const Matrix& y) const {
    double m = 0;
    for (std::size_t i = 0; i < a_.size(); ++i)
      m = std::max(m, FieldTraits<F>::magnitude(a_[i] - y.a_[i]));
    return m;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<F> a_;
};

/// Rank by Gaussian elimination with partial pivoting. For inexact fields a
/// pivot counts as zero below tol times the largest entry.
template <class F>
std::size_t rank(Matrix<F> m, double tol = 1e-9) {
  std::size_t rank = 0;
  double scale = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      scale = std::max(scale, FieldTraits<F>::magnitude(m(i, j)));
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    double best = -1;
    for (std::size_t i = rank; i < m.rows(); ++i) {
      double mag = FieldTraits<F>::magnitude(m(i, col));
      if (FieldTraits<F>::exact) {
        if (!FieldTraits<F>::is_zero(m(i, col))) {
          piv = i;
          best = 1;
          break;
        }
      } else if (mag > best) {
        best = mag;
        piv = i;
      }
    }
    if (FieldTraits<F>::exact ? best < 0 : best <= tol * scale) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(rank, j), m(piv, j));
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (FieldTraits<F>::exact && FieldTraits<F>::is_zero(m(i, col))) continue;
      F f = m(i, col) / m(rank, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

/// Sign of a + b*sqrt(2) for rationals a, b, decided exactly.
inline int sign_a_plus_b_sqrt2(const Rational& a, const Rational& b) {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with 2 b^2.
  Rational d = a * a - 2 * b * b;
  return sgn(d) * sa;
}

}  // namespace hecke

#endif  // HECKE_NUMERIC_HPP
