#ifndef HECKE_HECKE_HPP
#define HECKE_HECKE_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hecke/core.hpp"
#include "hecke/labels.hpp"
#include "hecke/laurent.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

/// Finite sum of c_w T_w with Laurent coefficients.
class HeckeElem {
 public:
  using Map = std::unordered_map<AffineWeylElem, LaurentPoly, AffineWeylElemHash>;

  HeckeElem() = default;
  explicit HeckeElem(std::uint64_t ctx) : ctx_(ctx) {}

  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  std::uint64_t context() const { return ctx_; }
  void set_context(std::uint64_t c) { ctx_ = c; }

  LaurentPoly coefficient(const AffineWeylElem& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? LaurentPoly() : it->second;
  }

  void add(const AffineWeylElem& g, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(g, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void add(const AffineWeylElem& g, LaurentPoly&& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(g, std::move(c));
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  HeckeElem& operator+=(const HeckeElem& o) {
    check(o);
    for (const auto& [g, c] : o.terms_) add(g, c);
    return *this;
  }
  HeckeElem& operator-=(const HeckeElem& o) {
    check(o);
    for (const auto& [g, c] : o.terms_) add(g, -c);
    return *this;
  }
  friend HeckeElem operator+(HeckeElem a, const HeckeElem& b) { return a += b; }
  friend HeckeElem operator-(HeckeElem a, const HeckeElem& b) { return a -= b; }
  friend HeckeElem operator*(const LaurentPoly& c, const HeckeElem& h) {
    HeckeElem r(h.ctx_);
    if (c.is_zero()) return r;
    for (const auto& [g, d] : h.terms_) r.add(g, c * d);
    return r;
  }
  HeckeElem operator-() const { return LaurentPoly(-1) * *this; }

  friend bool operator==(const HeckeElem& a, const HeckeElem& b) { return a.terms_ == b.terms_; }

  /// Terms sorted by (finite part, translation) for reproducible output.
  std::vector<std::pair<AffineWeylElem, LaurentPoly>> sorted() const {
    std::vector<std::pair<AffineWeylElem, LaurentPoly>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  void check(const HeckeElem& o) const {
    if (ctx_ != 0 && o.ctx_ != 0 && ctx_ != o.ctx_)
      throw ContextMismatch("Hecke elements belong to different algebras");
  }

 private:
  Map terms_;
  std::uint64_t ctx_ = 0;
};

/// The affine Hecke algebra of a labelled root datum in the T_w basis.
class HeckeAlgebra {
 public:
  static constexpr std::size_t kMaxSupport = 1'000'000;

  explicit HeckeAlgebra(const LabelSet& labels)
      : labels_(&labels), aff_(&labels.affine()), ctx_(next_context()) {
    for (std::size_t i = 0; i < aff_->nodes().size(); ++i) {
      Exponents q = labels.q_node(i);
      q_.push_back(q);
      q_inv_.push_back(Exponents{} - q);
    }
  }

  const LabelSet& labels() const { return *labels_; }
  const AffineWeylGroup& group() const { return *aff_; }
  std::uint64_t context() const { return ctx_; }

  HeckeElem zero() const { return HeckeElem(ctx_); }
  HeckeElem one() const { return basis(AffineWeylGroup::identity()); }
  HeckeElem basis(const AffineWeylElem& g, const LaurentPoly& c = LaurentPoly(1)) const {
    HeckeElem h(ctx_);
    h.add(g, c);
    return h;
  }
  HeckeElem finite_basis(std::uint32_t w) const { return basis(AffineWeylGroup::finite_elem(w)); }
  HeckeElem scalar(const LaurentPoly& c) const { return basis(AffineWeylGroup::identity(), c); }

  /// h T_s for the fundamental node s.
  HeckeElem right_mul_node(const HeckeElem& h, std::size_t node) const {
    check(h);
    HeckeElem out(ctx_);
    const Exponents& q = q_[node];
    for (const auto& [u, c] : h.terms()) {
      AffineWeylElem us = aff_->right_mul_node(u, node);
      if (!aff_->is_right_descent(u, node)) {
        out.add(us, c);
      } else {
        out.add(u, c.times_monomial(q, 1) - c);
        out.add(us, c.times_monomial(q, 1));
      }
    }
    guard(out);
    return out;
  }
  /// T_s h.
  HeckeElem left_mul_node(std::size_t node, const HeckeElem& h) const {
    check(h);
    HeckeElem out(ctx_);
    const Exponents& q = q_[node];
    for (const auto& [u, c] : h.terms()) {
      AffineWeylElem su = aff_->left_mul_node(node, u);
      if (!aff_->is_left_descent(u, node)) {
        out.add(su, c);
      } else {
        out.add(u, c.times_monomial(q, 1) - c);
        out.add(su, c.times_monomial(q, 1));
      }
    }
    guard(out);
    return out;
  }
  /// h T_s^{-1}.
  HeckeElem right_mul_node_inv(const HeckeElem& h, std::size_t node) const {
    check(h);
    HeckeElem out(ctx_);
    const Exponents& qi = q_inv_[node];
    for (const auto& [u, c] : h.terms()) {
      AffineWeylElem us = aff_->right_mul_node(u, node);
      if (aff_->is_right_descent(u, node)) {
        out.add(us, c);
      } else {
        out.add(us, c.times_monomial(qi, 1));
        out.add(u, c.times_monomial(qi, 1) - c);
      }
    }
    guard(out);
    return out;
  }
  /// T_s^{-1} h.
  HeckeElem left_mul_node_inv(std::size_t node, const HeckeElem& h) const {
    check(h);
    HeckeElem out(ctx_);
    const Exponents& qi = q_inv_[node];
    for (const auto& [u, c] : h.terms()) {
      AffineWeylElem su = aff_->left_mul_node(node, u);
      if (aff_->is_left_descent(u, node)) {
        out.add(su, c);
      } else {
        out.add(su, c.times_monomial(qi, 1));
        out.add(u, c.times_monomial(qi, 1) - c);
      }
    }
    guard(out);
    return out;
  }
  /// h T_omega for a length-zero omega.
  HeckeElem right_mul_omega(const HeckeElem& h, const AffineWeylElem& omega) const {
    check(h);
    HeckeElem out(ctx_);
    for (const auto& [u, c] : h.terms()) out.add(aff_->multiply(u, omega), c);
    return out;
  }
  HeckeElem left_mul_omega(const AffineWeylElem& omega, const HeckeElem& h) const {
    check(h);
    HeckeElem out(ctx_);
    for (const auto& [u, c] : h.terms()) out.add(aff_->multiply(omega, u), c);
    return out;
  }

  /// h T_g, stepping through the factorization of g.
  HeckeElem right_mul_basis(const HeckeElem& h, const AffineWeylElem& g) const {
    auto f = aff_->factor_extended(g);
    HeckeElem r = right_mul_omega(h, f.omega);
    for (auto node : f.word) r = right_mul_node(r, node);
    return r;
  }
  /// T_g h.
  HeckeElem left_mul_basis(const AffineWeylElem& g, const HeckeElem& h) const {
    auto f = aff_->factor_extended(g);
    HeckeElem r = h;
    for (auto it = f.word.rbegin(); it != f.word.rend(); ++it) r = left_mul_node(*it, r);
    return left_mul_omega(f.omega, r);
  }

  HeckeElem mul(const HeckeElem& a, const HeckeElem& b) const {
    check(a);
    check(b);
    HeckeElem out(ctx_);
    if (a.size() <= b.size()) {
      for (const auto& [g, c] : a.terms()) out += c * left_mul_basis(g, b);
    } else {
      for (const auto& [g, c] : b.terms()) out += c * right_mul_basis(a, g);
    }
    guard(out);
    return out;
  }

  /// T_w^* = T_{w^{-1}}; coefficients are real symbols, so conjugation is trivial.
  HeckeElem star(const HeckeElem& h) const {
    check(h);
    HeckeElem out(ctx_);
    for (const auto& [g, c] : h.terms()) out.add(aff_->inverse(g), c);
    return out;
  }

  LaurentPoly tau(const HeckeElem& h) const { return h.coefficient(AffineWeylGroup::identity()); }

  /// tau(a^* b), using the orthogonality of the T basis.
  LaurentPoly inner(const HeckeElem& a, const HeckeElem& b) const {
    check(a);
    check(b);
    const HeckeElem& small = a.size() <= b.size() ? a : b;
    const HeckeElem& other = a.size() <= b.size() ? b : a;
    LaurentPoly s;
    for (const auto& [g, c] : small.terms()) {
      auto it = other.terms().find(g);
      if (it == other.terms().end()) continue;
      s += (c * it->second).times_monomial(labels_->q_of_w(g), 1);
    }
    return s;
  }

  /// T_g^{-1}.
  HeckeElem invert_basis(const AffineWeylElem& g) const { return mul_basis_inverse(one(), g); }

  /// h T_g^{-1}. Each step peels a right descent of the remaining element,
  /// preferring one that shortens the longest terms of h.
  HeckeElem mul_basis_inverse(const HeckeElem& h, const AffineWeylElem& g) const {
    HeckeElem cur = h;
    AffineWeylElem rem = g;
    while (auto node = choose_descent(cur, rem)) {
      cur = right_mul_node_inv(cur, *node);
      rem = aff_->right_mul_node(rem, *node);
    }
    return right_mul_omega(cur, aff_->inverse(rem));
  }

  /// tau(h T_g^{-1}) without forming the full product: terms longer than the
  /// remaining number of steps can no longer reach the identity.
  LaurentPoly trace_mul_basis_inverse(const HeckeElem& h, const AffineWeylElem& g) const {
    HeckeElem cur = h;
    AffineWeylElem rem = g;
    std::size_t remaining = aff_->length(g);
    prune(cur, remaining);
    while (auto node = choose_descent(cur, rem)) {
      cur = right_mul_node_inv(cur, *node);
      rem = aff_->right_mul_node(rem, *node);
      --remaining;
      prune(cur, remaining);
    }
    // The final factor T_{rem^{-1}} maps T_rem to T_e.
    return cur.coefficient(rem);
  }

  nlohmann::json to_json(const HeckeElem& h) const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [g, c] : h.sorted()) arr.push_back({{"element", aff_->to_json(g)}, {"coeff", labels_->to_json(c)}});
    return arr;
  }

  void check(const HeckeElem& h) const {
    if (h.context() != 0 && h.context() != ctx_)
      throw ContextMismatch("Hecke element belongs to a different algebra");
  }

 private:
  const LabelSet* labels_;
  const AffineWeylGroup* aff_;
  std::uint64_t ctx_;
  std::vector<Exponents> q_, q_inv_;

  static std::uint64_t next_context() {
    static std::atomic<std::uint64_t> counter{0};
    return ++counter;
  }

  static void guard(const HeckeElem& h) {
    if (h.size() > kMaxSupport) throw GuardError("Hecke element support exceeded 10^6 terms");
  }

  void prune(HeckeElem& h, std::size_t remaining) const {
    std::vector<AffineWeylElem> drop;
    for (const auto& [u, c] : h.terms())
      if (aff_->length(u) > remaining) drop.push_back(u);
    if (drop.empty()) return;
    HeckeElem kept(ctx_);
    for (const auto& [u, c] : h.terms())
      if (aff_->length(u) <= remaining) kept.add(u, c);
    h = std::move(kept);
  }

  std::optional<std::size_t> choose_descent(const HeckeElem& h, const AffineWeylElem& rem) const {
    const std::size_t n = aff_->nodes().size();
    std::vector<std::size_t> desc;
    for (std::size_t i = 0; i < n; ++i)
      if (aff_->is_right_descent(rem, i)) desc.push_back(i);
    if (desc.empty()) return std::nullopt;
    if (desc.size() == 1 || h.size() == 0) return desc.front();
    std::size_t maxlen = 0;
    std::vector<const AffineWeylElem*> top;
    for (const auto& [u, c] : h.terms()) {
      std::size_t l = aff_->length(u);
      if (l > maxlen) {
        maxlen = l;
        top.clear();
      }
      if (l == maxlen) top.push_back(&u);
    }
    std::size_t best = desc.front(), best_score = 0;
    for (auto i : desc) {
      std::size_t score = 0;
      for (const auto* u : top) score += aff_->is_right_descent(*u, i);
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    return best;
  }
};

}  // namespace hecke

#endif  // HECKE_HECKE_HPP
