#ifndef HECKE_LAURENT_HPP
#define HECKE_LAURENT_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hecke/core.hpp"

namespace hecke {

/// Maximum number of formal parameters (label classes) in one ring.
inline constexpr std::size_t kMaxVars = 8;

using Exponents = std::array<std::int32_t, kMaxVars>;

inline Exponents operator+(const Exponents& a, const Exponents& b) {
  Exponents r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r[i] = a[i] + b[i];
  return r;
}
inline Exponents operator-(const Exponents& a, const Exponents& b) {
  Exponents r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r[i] = a[i] - b[i];
  return r;
}
inline Exponents scaled(const Exponents& a, std::int32_t k) {
  Exponents r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r[i] = a[i] * k;
  return r;
}

/// Sparse Laurent polynomial in up to kMaxVars variables. Terms are kept
/// sorted by lexicographic exponent with no zero coefficients, so equality
/// is structural.
template <class Coeff>
class LaurentPolynomial {
 public:
  using Term = std::pair<Exponents, Coeff>;

  LaurentPolynomial() = default;
  LaurentPolynomial(int c) : LaurentPolynomial(Coeff(c)) {}  // NOLINT
  LaurentPolynomial(const Coeff& c) {                        // NOLINT
    if (c != 0) terms_.push_back({Exponents{}, c});
  }

  static LaurentPolynomial monomial(const Exponents& e, const Coeff& c = Coeff(1)) {
    LaurentPolynomial p;
    if (c != 0) p.terms_.push_back({e, c});
    return p;
  }
  static LaurentPolynomial variable(std::size_t i, std::int32_t power = 1) {
    Exponents e{};
    e[i] = power;
    return monomial(e);
  }
  /// Builds from unsorted terms, merging duplicates.
  static LaurentPolynomial from_terms(std::vector<Term> terms) {
    LaurentPolynomial p;
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Exponents{});
  }
  Coeff constant_term() const {
    for (const auto& [e, c] : terms_)
      if (e == Exponents{}) return c;
    return Coeff(0);
  }
  Coeff coefficient(const Exponents& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponents& k) { return t.first < k; });
    if (it != terms_.end() && it->first == e) return it->second;
    return Coeff(0);
  }
  const Term& leading() const { return terms_.back(); }
  const Term& trailing() const { return terms_.front(); }

  /// Number of variables actually referenced (highest index + 1).
  std::size_t used_vars() const {
    std::size_t n = 0;
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < kMaxVars; ++i)
        if (t.first[i] != 0) n = std::max(n, i + 1);
    return n;
  }

  LaurentPolynomial operator-() const {
    LaurentPolynomial r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), b = o.terms_.begin();
    while (a != terms_.end() && b != o.terms_.end()) {
      if (a->first < b->first) {
        out.push_back(std::move(*a++));
      } else if (b->first < a->first) {
        out.push_back(*b++);
      } else {
        Coeff c = a->second + b->second;
        if (c != 0) out.push_back({a->first, std::move(c)});
        ++a;
        ++b;
      }
    }
    for (; a != terms_.end(); ++a) out.push_back(std::move(*a));
    for (; b != o.terms_.end(); ++b) out.push_back(*b);
    terms_ = std::move(out);
    return *this;
  }
  LaurentPolynomial& operator-=(const LaurentPolynomial& o) { return *this += -o; }

  LaurentPolynomial& operator*=(const LaurentPolynomial& o) { return *this = *this * o; }

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) {
    return a += b;
  }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) {
    return a -= b;
  }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.terms_.empty() || b.terms_.empty()) return {};
    if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].first, a.terms_[0].second);
    if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].first, b.terms_[0].second);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.push_back({ea + eb, ca * cb});
    return from_terms(std::move(out));
  }
  friend LaurentPolynomial operator*(const Coeff& c, const LaurentPolynomial& p) {
    if (c == 0) return {};
    LaurentPolynomial r = p;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }

  /// Multiplication by c * v^e; preserves term order.
  LaurentPolynomial times_monomial(const Exponents& e, const Coeff& c) const {
    LaurentPolynomial r;
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [ea, ca] : terms_) r.terms_.push_back({ea + e, ca * c});
    return r;
  }

  /// Non-negative powers for any polynomial; negative powers for monomials.
  LaurentPolynomial pow(std::int64_t n) const {
    if (n < 0) {
      if (!is_monomial()) throw std::domain_error("negative power of a non-monomial");
      return monomial(scaled(terms_[0].first, static_cast<std::int32_t>(n)),
                      power_of(Coeff(Coeff(1) / terms_[0].second), -n));
    }
    if (is_monomial())
      return monomial(scaled(terms_[0].first, static_cast<std::int32_t>(n)),
                      power_of(terms_[0].second, n));
    LaurentPolynomial r(1), base = *this;
    while (n > 0) {
      if (n & 1) r *= base;
      n >>= 1;
      if (n > 0) base *= base;
    }
    return r;
  }

  /// Inverse of a monomial.
  LaurentPolynomial inverse_monomial() const { return pow(-1); }

  /// Exact division; throws std::domain_error when d does not divide *this.
  LaurentPolynomial divide_exact(const LaurentPolynomial& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    if (is_zero()) return {};
    if (d.is_monomial())
      return times_monomial(Exponents{} - d.terms_[0].first, Coeff(1) / d.terms_[0].second);
    // Lex order is a group order on exponents, so every quotient term lies
    // between trailing(n) - trailing(d) and leading(n) - leading(d).
    const Exponents lo = trailing().first - d.trailing().first;
    const auto& [dl, dc] = d.leading();
    LaurentPolynomial rem = *this;
    std::vector<Term> quotient;
    std::size_t guard = 0;
    while (!rem.is_zero()) {
      if (++guard > 1'000'000) throw GuardError("exact division iteration cap");
      const auto [rl, rc] = rem.leading();
      Exponents qe = rl - dl;
      if (qe < lo) throw std::domain_error("inexact Laurent division");
      Coeff qc = rc / dc;
      rem -= d.times_monomial(qe, qc);
      quotient.push_back({qe, qc});
    }
    return from_terms(std::move(quotient));
  }

  /// Substitutes numeric values for the variables. Values must be nonzero
  /// where a negative exponent occurs.
  template <class F>
  F evaluate(const std::vector<F>& values) const {
    F sum = F(0);
    for (const auto& [e, c] : terms_) {
      F term = F(c);
      for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (e[i] == 0) continue;
        if (i >= values.size()) throw std::invalid_argument("assignment misses a variable");
        if (e[i] < 0 && values[i] == F(0)) throw PoleError("negative power of zero");
        term *= power_of(values[i], e[i]);
      }
      sum += term;
    }
    return sum;
  }

  /// Evaluation with a converter from Coeff to F (for fields without a
  /// constructor from Coeff).
  template <class F, class Convert>
  F evaluate(const std::vector<F>& values, Convert conv) const {
    F sum = F(0);
    for (const auto& [e, c] : terms_) {
      F term = conv(c);
      for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (e[i] == 0) continue;
        if (i >= values.size()) throw std::invalid_argument("assignment misses a variable");
        if (e[i] < 0 && values[i] == F(0)) throw PoleError("negative power of zero");
        term *= power_of(values[i], e[i]);
      }
      sum += term;
    }
    return sum;
  }

  /// Sets every variable to v and collects by total degree.
  std::vector<std::pair<std::int64_t, Coeff>> collapse() const {
    std::vector<std::pair<std::int64_t, Coeff>> out;
    for (const auto& [e, c] : terms_) {
      std::int64_t d = 0;
      for (auto x : e) d += x;
      out.push_back({d, c});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<std::int64_t, Coeff>> merged;
    for (auto& [d, c] : out) {
      if (!merged.empty() && merged.back().first == d)
        merged.back().second += c;
      else
        merged.push_back({d, c});
    }
    std::erase_if(merged, [](const auto& p) { return p.second == 0; });
    return merged;
  }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.terms_ == b.terms_;
  }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string cs = coeff_string(c);
      bool neg = !cs.empty() && cs[0] == '-';
      if (neg) cs.erase(0, 1);
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += i < names.size() ? names[i] : "x" + std::to_string(i);
        if (e[i] != 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty())
        os << cs;
      else if (cs == "1")
        os << mono;
      else
        os << cs << "*" << mono;
    }
    return os.str();
  }

  /// Canonical JSON form; exponent lists are truncated to nvars entries.
  nlohmann::json to_json(const std::vector<std::string>& vars) const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : terms_) {
      std::vector<int> exps(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(vars.size()));
      terms.push_back({{"exp", exps}, {"num", integer_json(num_string(c))}, {"den", integer_json(den_string(c))}});
    }
    return {{"vars", vars}, {"terms", terms}};
  }

  static LaurentPolynomial from_json(const nlohmann::json& j) {
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      Exponents e{};
      const auto& exps = t.at("exp");
      if (exps.size() > kMaxVars) throw std::invalid_argument("too many variables");
      for (std::size_t i = 0; i < exps.size(); ++i) e[i] = exps[i].get<int>();
      auto field = [](const nlohmann::json& v) {
        return v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>());
      };
      terms.push_back({e, Coeff(parse_rational(field(t.at("num")) + "/" + field(t.at("den"))))});
    }
    return from_terms(std::move(terms));
  }

 private:
  std::vector<Term> terms_;

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return t.second == 0; });
    terms_ = std::move(out);
  }

  template <class F>
  static F power_of(const F& x, std::int64_t n) {
    if (n < 0) return power_of<F>(F(F(1) / x), -n);
    F r = F(1), b = x;
    while (n > 0) {
      if (n & 1) r *= b;
      n >>= 1;
      if (n > 0) b *= b;
    }
    return r;
  }

  // Integers that fit in 64 bits are emitted as JSON numbers, larger ones as
  // decimal strings.
  static nlohmann::json integer_json(const std::string& s) {
    mpz_class z(s, 10);
    if (z.fits_slong_p()) return z.get_si();
    return s;
  }

  static std::string coeff_string(const Coeff& c) {
    if constexpr (std::is_same_v<Coeff, Rational>)
      return c.get_str();
    else {
      std::ostringstream os;
      os << c;
      return os.str();
    }
  }
  static std::string num_string(const Coeff& c) {
    if constexpr (std::is_same_v<Coeff, Rational>)
      return c.get_num().get_str();
    else
      return coeff_string(c);
  }
  static std::string den_string(const Coeff& c) {
    if constexpr (std::is_same_v<Coeff, Rational>)
      return c.get_den().get_str();
    else
      return "1";
  }
};

using LaurentPoly = LaurentPolynomial<Rational>;

}  // namespace hecke

#endif  // HECKE_LAURENT_HPP
