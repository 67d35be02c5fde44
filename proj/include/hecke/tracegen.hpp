#ifndef HECKE_TRACEGEN_HPP
#define HECKE_TRACEGEN_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "hecke/bernstein.hpp"
#include "hecke/core.hpp"
#include "hecke/hecke.hpp"
#include "hecke/labels.hpp"
#include "hecke/laurent.hpp"
#include "hecke/numeric.hpp"
#include "hecke/torus.hpp"

namespace hecke {

/// Multiplicities over R_nr,+, in the order of DerivedRoots::nr_pos.
struct PartitionVector {
  std::vector<std::uint32_t> mult;
  friend bool operator==(const PartitionVector&, const PartitionVector&) = default;
  friend auto operator<=>(const PartitionVector&, const PartitionVector&) = default;
};

enum class CGrouping { nonreduced, r0, r1 };
enum class TraceMethod { partition, direct };

template <class F>
struct GeneratingCheck {
  F lhs_partial;
  F rhs;
  double gap;
};

/// Sign of a Laurent polynomial at q = 2 for every label, i.e. with every
/// v variable equal to sqrt 2. Decided exactly.
inline int sign_at_q2(const LaurentPoly& p) {
  Rational a = 0, b = 0;
  for (const auto& [k, c] : p.collapse()) {
    // v^k = 2^{floor(k/2)} * (sqrt 2 if k odd)
    const std::int64_t half = k >= 0 ? k / 2 : -((-k + 1) / 2);
    Rational scale = 1;
    for (std::int64_t i = 0; i < std::abs(half); ++i) scale *= 2;
    if (half < 0) scale = 1 / scale;
    if (k % 2 == 0)
      a += c * scale;
    else
      b += c * scale;
  }
  return sign_a_plus_b_sqrt2(a, b);
}

/// c-functions, the rank-one coefficients d(alpha; k), and the two routes to
/// tau(theta_x): the weighted partition formula and the direct Hecke computation.
class TraceGenerator {
 public:
  explicit TraceGenerator(const Bernstein& B)
      : B_(&B), H_(&B.algebra()), rd_(&B.algebra().group().datum()), labels_(&B.labels()) {
    const auto& d = rd_->derived();
    for (std::size_t k : d.nr_pos) {
      auto co = rd_->q_coordinates(d.nr[k].root);
      if (!co) throw std::logic_error("positive root outside Q");
      pos_coords_.push_back(*co);
    }
  }

  const Bernstein& bernstein() const { return *B_; }

  // ---- c-functions ----

  /// c(beta, t) for beta in R_nr (index into DerivedRoots::nr).
  template <class F>
  F c_factor(std::size_t nr_index, const TorusPoint<F>& t, const LabelValues<F>& lv) const {
    const auto& b = rd_->derived().nr[nr_index];
    const F p = lv.eval(Exponents{} - LabelSet::half(labels_->q_nr_half(nr_index)));
    const F L = lv.eval(labels_->q_nr(nr_index));
    const F tm = t(-b.root);
    const F den = F(1) - p * tm;
    if (FieldTraits<F>::is_zero(den)) throw PoleError("c-function pole at the given torus point");
    return (F(1) - p / L * tm) / den;
  }

  /// c0(alpha) = c(alpha) c(2 alpha) for alpha in R0.
  template <class F>
  F c0(std::size_t root, const TorusPoint<F>& t, const LabelValues<F>& lv) const {
    const auto& d = rd_->derived();
    F r = c_factor(root, t, lv);  // R0 roots come first in nr
    if (d.doubled_of[root] != RootDatum::npos) r *= c_factor(d.doubled_of[root], t, lv);
    return r;
  }

  /// c1(beta) = c(beta) c(beta/2) for beta in R1.
  template <class F>
  F c1(std::size_t nr_index, const TorusPoint<F>& t, const LabelValues<F>& lv) const {
    const auto& b = rd_->derived().nr[nr_index];
    F r = c_factor(nr_index, t, lv);
    if (b.doubled) r *= c_factor(b.base, t, lv);
    return r;
  }

  template <class F>
  F c_full(const TorusPoint<F>& t, const LabelValues<F>& lv, CGrouping g = CGrouping::nonreduced) const {
    const auto& d = rd_->derived();
    F r(1);
    switch (g) {
      case CGrouping::nonreduced:
        for (std::size_t k : d.nr_pos) r *= c_factor(k, t, lv);
        break;
      case CGrouping::r0:
        for (std::size_t k : rd_->positive_roots()) r *= c0(k, t, lv);
        break;
      case CGrouping::r1:
        for (std::size_t k : d.r1_pos) r *= c1(k, t, lv);
        break;
    }
    return r;
  }

  /// 1 / (q(w0) c(t) c(t^{-1})).
  template <class F>
  F inverse_c_product(const TorusPoint<F>& t, const LabelValues<F>& lv) const {
    const F qw0 = lv.eval(labels_->q_finite(H_->group().finite().longest()));
    const F prod = qw0 * c_full(t, lv) * c_full(t.inverse(), lv);
    if (FieldTraits<F>::is_zero(prod)) throw PoleError("c(t) c(t^-1) vanishes at the given torus point");
    return F(1) / prod;
  }

  // ---- d coefficients and partitions ----

  /// d(beta; k) for beta in R_nr (index into DerivedRoots::nr).
  LaurentPoly d_coeff(std::size_t nr_index, std::uint32_t k) const {
    if (k == 0) return LaurentPoly(1);
    std::lock_guard lock(mu_);
    auto key = std::make_pair(nr_index, k);
    auto it = d_cache_.find(key);
    if (it != d_cache_.end()) return it->second;
    const Exponents Le = labels_->q_nr(nr_index), L2e = labels_->q_nr_half(nr_index);
    const LaurentPoly one(1), L = LabelSet::mono(Le), L2 = LabelSet::mono(L2e);
    const Exponents me = LabelSet::half(L2e) + Le;
    const LaurentPoly mk = LaurentPoly::monomial(scaled(me, static_cast<std::int32_t>(k)));
    const LaurentPoly mik = LaurentPoly::monomial(scaled(me, -static_cast<std::int32_t>(k)));
    LaurentPoly num = (L - one) * (L2 * L - one) * (mk - mik);
    LaurentPoly den = L2 * L * L - one;
    LaurentPoly d = num.divide_exact(den);
    d_cache_.emplace(key, d);
    return d;
  }

  /// All partitions of kappa over R_nr,+, in lexicographic order of multiplicities.
  std::vector<PartitionVector> partitions(const Vec& kappa) const {
    std::vector<PartitionVector> out;
    auto target = rd_->q_coordinates(kappa);
    if (!target) return out;
    PartitionVector cur{std::vector<std::uint32_t>(pos_coords_.size(), 0)};
    std::function<void(std::size_t, const Vec&)> rec = [&](std::size_t j, const Vec& rem) {
      if (j == pos_coords_.size()) {
        if (rem.is_zero()) out.push_back(cur);
        return;
      }
      Vec r = rem;
      for (std::uint32_t m = 0;; ++m) {
        if (!nonnegative(r)) break;
        cur.mult[j] = m;
        rec(j + 1, r);
        r = r - pos_coords_[j];
      }
      cur.mult[j] = 0;
    };
    rec(0, *target);
    return out;
  }

  /// tau(theta_x) as the sum over partitions pi of -x of prod d(beta; pi_beta).
  LaurentPoly trace_theta_partition(const Vec& x) const {
    auto target = rd_->q_coordinates(-x);
    if (!target || !nonnegative(*target)) return LaurentPoly();
    const auto& nr_pos = rd_->derived().nr_pos;
    std::map<std::pair<std::size_t, Vec>, LaurentPoly> memo;
    // f(j, rem) = sum over m of d(beta_j; m) f(j + 1, rem - m beta_j)
    std::function<LaurentPoly(std::size_t, const Vec&)> f = [&](std::size_t j, const Vec& rem) -> LaurentPoly {
      if (j == pos_coords_.size()) return rem.is_zero() ? LaurentPoly(1) : LaurentPoly();
      auto key = std::make_pair(j, rem);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      LaurentPoly s;
      Vec r = rem;
      for (std::uint32_t m = 0; nonnegative(r); ++m) {
        LaurentPoly rest = f(j + 1, r);
        if (!rest.is_zero()) s += d_coeff(nr_pos[j], m) * rest;
        r = r - pos_coords_[j];
      }
      memo.emplace(key, s);
      return s;
    };
    return f(0, *target);
  }

  /// tau(theta_x) = delta(-x)^{1/2} tau(T_{t_y} T_{t_z}^{-1}), computed in H.
  LaurentPoly trace_theta_direct(const Vec& x) const {
    auto [y, z] = rd_->dominant_decomposition(x);
    LaurentPoly s = LabelSet::mono(labels_->delta_sqrt(-x));
    return s * H_->trace_mul_basis_inverse(H_->basis(AffineWeylGroup::translation(y)),
                                           AffineWeylGroup::translation(z));
  }

  LaurentPoly trace_theta(const Vec& x, TraceMethod m) const {
    return m == TraceMethod::partition ? trace_theta_partition(x) : trace_theta_direct(x);
  }

  /// x in Q_- with height(-x) <= max_height, sorted by height then x.
  std::vector<Vec> negative_cone(std::int64_t max_height) const {
    std::vector<Vec> out;
    const auto& simple = rd_->simple_roots();
    Vec kappa;
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
      if (i == simple.size()) {
        out.push_back(-kappa);
        return;
      }
      for (std::int64_t c = 0; c <= left; ++c) {
        rec(i + 1, left - c);
        kappa = kappa + simple[i];
      }
      kappa = kappa - static_cast<std::int32_t>(left + 1) * simple[i];
    };
    rec(0, max_height);
    std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) {
      auto ha = rd_->height(-a), hb = rd_->height(-b);
      return ha != hb ? ha < hb : a < b;
    });
    return out;
  }

  /// Refuses t unless |t(alpha)| < delta^{-1/2}(alpha) for every positive root.
  template <class F>
  void check_region(const TorusPoint<F>& t, const LabelValues<F>& lv) const {
    for (std::size_t r : rd_->positive_roots()) {
      const Vec& a = rd_->root(r);
      const double bound = FieldTraits<F>::magnitude(lv.eval(Exponents{} - labels_->delta_sqrt(a)));
      if (!(FieldTraits<F>::magnitude(t(a)) < bound))
        throw RegionError("torus point outside the convergence region |t(alpha)| < delta^{-1/2}(alpha)");
    }
  }

  /// Partial sum of tau(theta_x) t(-x) over the negative cone up to the given
  /// height, against 1 / (q(w0) c(t) c(t^{-1})).
  template <class F>
  GeneratingCheck<F> generating_check(const TorusPoint<F>& t, const LabelValues<F>& lv, std::int64_t radius,
                                      TraceMethod method = TraceMethod::partition) const {
    check_region(t, lv);
    F lhs(0);
    for (const auto& x : negative_cone(radius)) lhs += lv.eval(trace_theta(x, method)) * t(-x);
    F rhs = inverse_c_product(t, lv);
    return {lhs, rhs, FieldTraits<F>::magnitude(lhs - rhs)};
  }

 private:
  const Bernstein* B_;
  const HeckeAlgebra* H_;
  const RootDatum* rd_;
  const LabelSet* labels_;
  std::vector<Vec> pos_coords_;  ///< simple-root coordinates of R_nr,+
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::size_t, std::uint32_t>, LaurentPoly> d_cache_;

  static bool nonnegative(const Vec& v) {
    for (auto a : v.c)
      if (a < 0) return false;
    return true;
  }
};

}  // namespace hecke

#endif  // HECKE_TRACEGEN_HPP
