#ifndef HECKE_CORE_HPP
#define HECKE_CORE_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hecke {

/// Largest lattice rank supported. Coordinates past a datum's rank stay zero.
inline constexpr std::size_t kMaxRank = 8;

using Rational = mpq_class;

// Error taxonomy. Everything derives from std::runtime_error or
// std::domain_error so callers can catch broadly.

/// Input violates the root datum axioms or is otherwise malformed.
class DatumError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Label assignment is inconsistent or ambiguous.
class LabelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A size or iteration guard tripped.
class GuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Evaluation hit a pole (denominator vanished).
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A torus point lies outside the convergence region.
class RegionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Elements from different algebras or data were combined.
class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integer coordinate vector in X or Y.
struct Vec {
  std::array<std::int32_t, kMaxRank> c{};

  constexpr Vec() = default;
  constexpr Vec(std::initializer_list<int> v) {
    if (v.size() > kMaxRank) throw DatumError("vector exceeds maximum rank");
    std::size_t i = 0;
    for (int a : v) c[i++] = a;
  }
  static Vec from(std::span<const int> v) {
    if (v.size() > kMaxRank) throw DatumError("vector exceeds maximum rank");
    Vec r;
    for (std::size_t i = 0; i < v.size(); ++i) r.c[i] = v[i];
    return r;
  }
  static Vec from(const std::vector<long>& v) {
    if (v.size() > kMaxRank) throw DatumError("vector exceeds maximum rank");
    Vec r;
    for (std::size_t i = 0; i < v.size(); ++i) r.c[i] = static_cast<std::int32_t>(v[i]);
    return r;
  }
  static constexpr Vec unit(std::size_t i) {
    Vec r;
    r.c[i] = 1;
    return r;
  }

  constexpr std::int32_t& operator[](std::size_t i) { return c[i]; }
  constexpr std::int32_t operator[](std::size_t i) const { return c[i]; }

  constexpr bool is_zero() const {
    for (auto a : c)
      if (a != 0) return false;
    return true;
  }

  constexpr Vec& operator+=(const Vec& o) {
    for (std::size_t i = 0; i < kMaxRank; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Vec& operator-=(const Vec& o) {
    for (std::size_t i = 0; i < kMaxRank; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Vec& operator*=(std::int32_t k) {
    for (auto& a : c) a *= k;
    return *this;
  }
  friend constexpr Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend constexpr Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend constexpr Vec operator-(Vec a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  friend constexpr Vec operator*(std::int32_t k, Vec a) { return a *= k; }

  friend constexpr bool operator==(const Vec&, const Vec&) = default;
  friend constexpr auto operator<=>(const Vec&, const Vec&) = default;

  std::vector<long> to_vector(std::size_t rank) const {
    return std::vector<long>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(rank));
  }
};

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct VecHash {
  std::size_t operator()(const Vec& v) const noexcept {
    std::size_t h = 0;
    for (auto a : v.c) h = hash_combine(h, std::hash<std::int32_t>{}(a));
    return h;
  }
};

/// Square integer matrix acting on column vectors; entries past rank are zero.
struct IntMatrix {
  std::array<std::int32_t, kMaxRank * kMaxRank> a{};

  constexpr std::int32_t& operator()(std::size_t i, std::size_t j) { return a[i * kMaxRank + j]; }
  constexpr std::int32_t operator()(std::size_t i, std::size_t j) const {
    return a[i * kMaxRank + j];
  }
  static constexpr IntMatrix identity(std::size_t rank) {
    IntMatrix m;
    for (std::size_t i = 0; i < rank; ++i) m(i, i) = 1;
    return m;
  }
  Vec apply(const Vec& v, std::size_t rank) const {
    Vec r;
    for (std::size_t i = 0; i < rank; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < rank; ++j) s += std::int64_t{(*this)(i, j)} * v[j];
      r[i] = static_cast<std::int32_t>(s);
    }
    return r;
  }
  IntMatrix times(const IntMatrix& o, std::size_t rank) const {
    IntMatrix r;
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t k = 0; k < rank; ++k) {
        auto aik = (*this)(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < rank; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }
  IntMatrix transposed() const {
    IntMatrix r;
    for (std::size_t i = 0; i < kMaxRank; ++i)
      for (std::size_t j = 0; j < kMaxRank; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
  friend constexpr bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

inline std::int64_t dot(const Vec& a, const Vec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < kMaxRank; ++i) s += std::int64_t{a[i]} * b[i];
  return s;
}

/// Parses "p/q" or "p" into an exact rational.
inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: '" + s + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace hecke

#endif  // HECKE_CORE_HPP
