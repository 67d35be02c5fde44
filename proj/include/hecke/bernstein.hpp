#ifndef HECKE_BERNSTEIN_HPP
#define HECKE_BERNSTEIN_HPP

#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hecke/core.hpp"
#include "hecke/hecke.hpp"
#include "hecke/labels.hpp"
#include "hecke/laurent.hpp"
#include "hecke/torus.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

/// An element sum c_x theta_x of the commutative subalgebra A.
class GroupAlgebraElem {
 public:
  using Map = std::map<Vec, LaurentPoly>;

  GroupAlgebraElem() = default;
  static GroupAlgebraElem monomial(const Vec& x, const LaurentPoly& c = LaurentPoly(1)) {
    GroupAlgebraElem g;
    g.add(x, c);
    return g;
  }
  static GroupAlgebraElem scalar(const LaurentPoly& c) { return monomial(Vec{}, c); }

  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  LaurentPoly coefficient(const Vec& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? LaurentPoly() : it->second;
  }

  void add(const Vec& x, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(x, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  GroupAlgebraElem& operator+=(const GroupAlgebraElem& o) {
    for (const auto& [x, c] : o.terms_) add(x, c);
    return *this;
  }
  GroupAlgebraElem& operator-=(const GroupAlgebraElem& o) {
    for (const auto& [x, c] : o.terms_) add(x, -c);
    return *this;
  }
  friend GroupAlgebraElem operator+(GroupAlgebraElem a, const GroupAlgebraElem& b) { return a += b; }
  friend GroupAlgebraElem operator-(GroupAlgebraElem a, const GroupAlgebraElem& b) { return a -= b; }
  friend GroupAlgebraElem operator*(const GroupAlgebraElem& a, const GroupAlgebraElem& b) {
    GroupAlgebraElem r;
    for (const auto& [x, c] : a.terms_)
      for (const auto& [y, d] : b.terms_) r.add(x + y, c * d);
    return r;
  }
  friend GroupAlgebraElem operator*(const LaurentPoly& s, const GroupAlgebraElem& a) {
    GroupAlgebraElem r;
    for (const auto& [x, c] : a.terms_) r.add(x, s * c);
    return r;
  }
  friend bool operator==(const GroupAlgebraElem&, const GroupAlgebraElem&) = default;

  /// w . sum c_x theta_x = sum c_x theta_{w x}.
  GroupAlgebraElem act(const FiniteWeylGroup& W, std::uint32_t w) const {
    GroupAlgebraElem r;
    for (const auto& [x, c] : terms_) r.add(W.act(w, x), c);
    return r;
  }

  /// Value at the torus point t with numeric labels.
  template <class F>
  F evaluate(const TorusPoint<F>& t, const LabelValues<F>& lv) const {
    F s(0);
    for (const auto& [x, c] : terms_) s += lv.eval(c) * t(x);
    return s;
  }

 private:
  Map terms_;
};

/// A sum of c_{w,x} T_w theta_x with w in W0. The key reuses AffineWeylElem
/// purely as a (w, x) pair.
class BernsteinElem {
 public:
  using Map = std::unordered_map<AffineWeylElem, LaurentPoly, AffineWeylElemHash>;

  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  LaurentPoly coefficient(std::uint32_t w, const Vec& x) const {
    auto it = terms_.find({w, x});
    return it == terms_.end() ? LaurentPoly() : it->second;
  }

  void add(const AffineWeylElem& key, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  BernsteinElem& operator+=(const BernsteinElem& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  BernsteinElem& operator-=(const BernsteinElem& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  friend BernsteinElem operator+(BernsteinElem a, const BernsteinElem& b) { return a += b; }
  friend BernsteinElem operator-(BernsteinElem a, const BernsteinElem& b) { return a -= b; }
  friend BernsteinElem operator*(const LaurentPoly& s, const BernsteinElem& a) {
    BernsteinElem r;
    if (s.is_zero()) return r;
    for (const auto& [k, c] : a.terms_) r.add(k, s * c);
    return r;
  }
  friend bool operator==(const BernsteinElem& a, const BernsteinElem& b) { return a.terms_ == b.terms_; }

  std::vector<std::pair<AffineWeylElem, LaurentPoly>> sorted() const {
    std::vector<std::pair<AffineWeylElem, LaurentPoly>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

 private:
  Map terms_;
};

/// The Bernstein presentation over a Hecke algebra: theta_x inside H, the
/// commutation relation with T_s, and arithmetic on T_w theta_x expansions.
class Bernstein {
 public:
  explicit Bernstein(const HeckeAlgebra& H)
      : H_(&H), aff_(&H.group()), W_(&H.group().finite()), rd_(&H.group().datum()), labels_(&H.labels()) {
    for (const auto& nd : aff_->nodes()) {
      if (!nd.affine) continue;
      // s_0 = s_theta t_{-theta}, so t_theta = s_0 s_theta with lengths adding.
      std::size_t theta = rd_->negative_of(nd.a.r);
      Vec th = rd_->root(theta);
      auto t_theta = AffineWeylGroup::translation(th);
      if (!rd_->is_dominant(th) ||
          aff_->length(t_theta) != 1 + W_->length(nd.reflection.w) ||
          aff_->multiply(nd.reflection, AffineWeylGroup::finite_elem(nd.reflection.w)) != t_theta)
        throw std::logic_error("affine node does not factor t_theta");
    }
  }

  const HeckeAlgebra& algebra() const { return *H_; }
  const LabelSet& labels() const { return *labels_; }

  /// theta_x = delta(-x)^{1/2} T_{t_y} T_{t_z}^{-1} for x = y - z, y, z dominant.
  HeckeElem theta(const Vec& x) const {
    {
      std::lock_guard lock(mu_);
      auto it = theta_cache_.find(x);
      if (it != theta_cache_.end()) return it->second;
    }
    auto [y, z] = rd_->dominant_decomposition(x);
    HeckeElem h = theta_via(y, z);
    std::lock_guard lock(mu_);
    theta_cache_.emplace(x, h);
    return h;
  }

  /// theta_{y-z} through the given dominant pair.
  HeckeElem theta_via(const Vec& y, const Vec& z) const {
    if (!rd_->is_dominant(y) || !rd_->is_dominant(z)) throw std::invalid_argument("theta_via needs dominant y, z");
    LaurentPoly s = LabelSet::mono(labels_->delta_sqrt(z - y));
    HeckeElem ty = H_->basis(AffineWeylGroup::translation(y), s);
    if (z.is_zero()) return ty;
    return H_->mul_basis_inverse(ty, AffineWeylGroup::translation(z));
  }

  HeckeElem embed(const GroupAlgebraElem& a) const {
    HeckeElem r = H_->zero();
    for (const auto& [x, c] : a.terms()) r += c * theta(x);
    return r;
  }
  HeckeElem embed(const BernsteinElem& b) const {
    HeckeElem r = H_->zero();
    for (const auto& [k, c] : b.sorted()) r += c * H_->mul(H_->finite_basis(k.w), theta(k.x));
    return r;
  }

  /// Right side of theta_x T_s - T_s theta_{s(x)} for the simple root with
  /// index i in F0, as a finite theta-sum.
  GroupAlgebraElem lusztig_rhs(const Vec& x, std::size_t i) const {
    const std::size_t r = rd_->simple_index(i);
    const Vec& alpha = rd_->root(r);
    const std::int64_t n = rd_->pair(x, rd_->coroot(r));
    GroupAlgebraElem out;
    if (n == 0) return out;
    const LaurentPoly L = LabelSet::mono(labels_->q_coroot(r));
    const bool doubled = rd_->derived().doubled_of[r] != RootDatum::npos;
    const Vec step = doubled ? 2 * alpha : alpha;
    const std::int64_t m = doubled ? n / 2 : n;
    // (theta_x - theta_{s(x)}) / (1 - theta_{-step})
    GroupAlgebraElem g;
    if (m > 0) {
      for (std::int64_t j = 0; j < m; ++j) g.add(x - static_cast<std::int32_t>(j) * step, LaurentPoly(1));
    } else {
      for (std::int64_t j = 1; j <= -m; ++j) g.add(x + static_cast<std::int32_t>(j) * step, LaurentPoly(-1));
    }
    if (!doubled) return (L - LaurentPoly(1)) * g;
    const Exponents L2 = labels_->q_half(r);
    GroupAlgebraElem pre = GroupAlgebraElem::scalar(LabelSet::mono(L2) * L - LaurentPoly(1));
    pre.add(-alpha, LabelSet::mono(LabelSet::half(L2)) * (L - LaurentPoly(1)));
    return pre * g;
  }

  /// (theta_x T_s - T_s theta_{s(x)} computed in H, the closed form embedded in H).
  std::pair<HeckeElem, HeckeElem> lusztig_commutation(const Vec& x, std::size_t i) const {
    if (i >= rd_->semisimple_rank()) throw std::invalid_argument("not a finite simple root");
    HeckeElem Ts = H_->basis(aff_->nodes()[i].reflection);
    Vec sx = rd_->reflect(rd_->simple_index(i), x);
    HeckeElem lhs = H_->mul(theta(x), Ts) - H_->mul(Ts, theta(sx));
    return {lhs, embed(lusztig_rhs(x, i))};
  }

  std::vector<Vec> orbit(const Vec& x) const {
    std::set<Vec> seen;
    for (std::uint32_t w = 0; w < W_->order(); ++w) seen.insert(W_->act(w, x));
    return {seen.begin(), seen.end()};
  }
  GroupAlgebraElem orbit_sum(const Vec& x) const {
    GroupAlgebraElem g;
    for (const auto& y : orbit(x)) g.add(y, LaurentPoly(1));
    return g;
  }
  HeckeElem center_element(const Vec& x) const { return embed(orbit_sum(x)); }

  /// theta_x^* == T_{w0} theta_{-w0 x} T_{w0}^{-1}.
  bool star_theta_check(const Vec& x) const {
    const auto w0 = W_->longest();
    HeckeElem lhs = H_->star(theta(x));
    HeckeElem rhs = H_->mul_basis_inverse(H_->mul(H_->finite_basis(w0), theta(-W_->act(w0, x))),
                                          AffineWeylGroup::finite_elem(w0));
    return lhs == rhs;
  }

  // ---- arithmetic on T_w theta_x expansions ----

  BernsteinElem one() const { return basis_term(0, Vec{}); }
  static BernsteinElem basis_term(std::uint32_t w, const Vec& x, const LaurentPoly& c = LaurentPoly(1)) {
    BernsteinElem b;
    b.add({w, x}, c);
    return b;
  }
  static BernsteinElem from_group(const GroupAlgebraElem& a) {
    BernsteinElem b;
    for (const auto& [x, c] : a.terms()) b.add({0, x}, c);
    return b;
  }

  static BernsteinElem right_mul_theta(const BernsteinElem& b, const Vec& y) {
    BernsteinElem r;
    for (const auto& [k, c] : b.terms()) r.add({k.w, k.x + y}, c);
    return r;
  }

  /// b T_s for the finite simple root i, moving each theta_x past T_s.
  BernsteinElem right_mul_simple(const BernsteinElem& b, std::size_t i) const {
    BernsteinElem r;
    const std::size_t root = rd_->simple_index(i);
    const LaurentPoly q = LabelSet::mono(labels_->q_node(i));
    for (const auto& [k, c] : b.terms()) {
      const std::uint32_t as = W_->right_simple(k.w, i);
      const Vec sx = rd_->reflect(root, k.x);
      if (!W_->is_right_descent(k.w, i)) {
        r.add({as, sx}, c);
      } else {
        r.add({k.w, sx}, c * (q - LaurentPoly(1)));
        r.add({as, sx}, c * q);
      }
      const GroupAlgebraElem rhs = lusztig_rhs(k.x, i);
      for (const auto& [z, d] : rhs.terms()) r.add({k.w, z}, c * d);
    }
    return r;
  }
  /// b T_s^{-1}, with T_s^{-1} = q^{-1} T_s + (q^{-1} - 1).
  BernsteinElem right_mul_simple_inv(const BernsteinElem& b, std::size_t i) const {
    const LaurentPoly qi = LabelSet::mono(Exponents{} - labels_->q_node(i));
    return qi * right_mul_simple(b, i) + (qi - LaurentPoly(1)) * b;
  }
  BernsteinElem right_mul_finite(const BernsteinElem& b, std::uint32_t w) const {
    BernsteinElem r = b;
    for (auto i : W_->word(w)) r = right_mul_simple(r, i);
    return r;
  }
  BernsteinElem right_mul_finite_inv(const BernsteinElem& b, std::uint32_t w) const {
    BernsteinElem r = b;
    const auto& word = W_->word(w);
    for (auto it = word.rbegin(); it != word.rend(); ++it) r = right_mul_simple_inv(r, *it);
    return r;
  }

  /// b T_{s_a} for any fundamental node; the affine one uses
  /// T_{s_0} = delta(theta)^{1/2} theta_theta T_{s_theta}^{-1}.
  BernsteinElem right_mul_node(const BernsteinElem& b, std::size_t node) const {
    const auto& nd = aff_->nodes()[node];
    if (!nd.affine) return right_mul_simple(b, node);
    const Vec th = rd_->root(rd_->negative_of(nd.a.r));
    BernsteinElem r = LabelSet::mono(labels_->delta_sqrt(th)) * right_mul_theta(b, th);
    return right_mul_finite_inv(r, nd.reflection.w);
  }

  /// b T_g for g = w t_mu with mu dominant: T_g = delta(mu)^{1/2} T_w theta_mu.
  BernsteinElem right_mul_dominant(const BernsteinElem& b, const AffineWeylElem& g) const {
    BernsteinElem r = LabelSet::mono(labels_->delta_sqrt(g.x)) * right_mul_finite(b, g.w);
    return right_mul_theta(r, g.x);
  }

  /// b T_omega for a length-zero omega = w t_x; T_omega = delta(x)^{1/2} T_w theta_x.
  BernsteinElem right_mul_omega(const BernsteinElem& b, const AffineWeylElem& omega) const {
    if (omega == AffineWeylGroup::identity()) return b;
    BernsteinElem r = LabelSet::mono(labels_->delta_sqrt(omega.x)) * right_mul_finite(b, omega.w);
    return right_mul_theta(r, omega.x);
  }

  BernsteinElem right_mul_basis(const BernsteinElem& b, const AffineWeylElem& g) const {
    auto f = aff_->factor_extended(g);
    BernsteinElem r = right_mul_omega(b, f.omega);
    for (auto node : f.word) r = right_mul_node(r, node);
    return r;
  }

  BernsteinElem mul(const BernsteinElem& a, const BernsteinElem& b) const {
    BernsteinElem r;
    std::map<std::uint32_t, BernsteinElem> by_w;
    for (const auto& [k, c] : b.terms())
      if (!by_w.count(k.w)) by_w.emplace(k.w, right_mul_finite(a, k.w));
    for (const auto& [k, c] : b.terms()) r += c * right_mul_theta(by_w.at(k.w), k.x);
    return r;
  }

  /// T_g in the T_w theta_x form (memoized along reduced words).
  BernsteinElem of_basis(const AffineWeylElem& g) const {
    {
      std::lock_guard lock(mu_);
      auto it = basis_cache_.find(g);
      if (it != basis_cache_.end()) return it->second;
    }
    BernsteinElem r;
    std::optional<std::size_t> desc;
    for (std::size_t i = 0; i < aff_->nodes().size() && !desc; ++i)
      if (aff_->is_right_descent(g, i)) desc = i;
    if (!desc) {
      r = right_mul_omega(one(), g);
    } else {
      r = right_mul_node(of_basis(aff_->right_mul_node(g, *desc)), *desc);
    }
    std::lock_guard lock(mu_);
    basis_cache_.emplace(g, r);
    return r;
  }

  BernsteinElem expand(const HeckeElem& h) const {
    H_->check(h);
    BernsteinElem r;
    for (const auto& [g, c] : h.terms()) r += c * of_basis(g);
    return r;
  }

  /// Expansion h = sum c_{w,x} T_w theta_x; throws if some x leaves the box.
  BernsteinElem expand_in_bernstein(const HeckeElem& h, std::int64_t box) const {
    BernsteinElem r = expand(h);
    for (const auto& [k, c] : r.terms())
      for (std::size_t i = 0; i < rd_->rank(); ++i)
        if (std::abs(k.x[i]) > box)
          throw std::out_of_range("Bernstein support leaves the box of radius " + std::to_string(box));
    return r;
  }

 private:
  const HeckeAlgebra* H_;
  const AffineWeylGroup* aff_;
  const FiniteWeylGroup* W_;
  const RootDatum* rd_;
  const LabelSet* labels_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Vec, HeckeElem, VecHash> theta_cache_;
  mutable std::unordered_map<AffineWeylElem, BernsteinElem, AffineWeylElemHash> basis_cache_;
};

}  // namespace hecke

#endif  // HECKE_BERNSTEIN_HPP
