#ifndef HECKE_PRINCIPAL_HPP
#define HECKE_PRINCIPAL_HPP

#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hecke/bernstein.hpp"
#include "hecke/core.hpp"
#include "hecke/hecke.hpp"
#include "hecke/labels.hpp"
#include "hecke/laurent.hpp"
#include "hecke/numeric.hpp"
#include "hecke/torus.hpp"
#include "hecke/tracegen.hpp"

namespace hecke {

/// Intertwining elements R_s and the factors n_beta, Delta_beta, D_beta of A.
/// Everything here is symbolic.
class Intertwiners {
 public:
  explicit Intertwiners(const Bernstein& B)
      : B_(&B), H_(&B.algebra()), W_(&B.algebra().group().finite()), rd_(&B.algebra().group().datum()),
        labels_(&B.labels()) {}

  const Bernstein& bernstein() const { return *B_; }

  /// Index in R_nr of the negative of beta.
  std::size_t negative(std::size_t nr_index) const {
    const auto& d = rd_->derived();
    const auto& b = d.nr[nr_index];
    const std::size_t nb = rd_->negative_of(b.base);
    return b.doubled ? d.doubled_of[nb] : nb;
  }

  /// The R1 root attached to the simple root i: 2 alpha_i when it exists, else alpha_i.
  std::size_t r1_of_simple(std::size_t i) const {
    const std::size_t a = rd_->simple_index(i);
    const std::size_t dbl = rd_->derived().doubled_of[a];
    return dbl == RootDatum::npos ? a : dbl;
  }

  /// n_beta for beta in R1 (either sign): q_{beta^vee} - theta_beta, or
  /// (L2^{1/2} + theta_alpha)(L2^{1/2} L - theta_alpha) for beta = 2 alpha.
  GroupAlgebraElem n_beta(std::size_t nr_index) const {
    const auto& b = rd_->derived().nr[nr_index];
    const std::size_t a = b.base;
    const Exponents L = labels_->q_coroot(a);
    if (!b.doubled) {
      if (rd_->derived().doubled_of[a] != RootDatum::npos) throw std::invalid_argument("n_beta needs a root of R1");
      return GroupAlgebraElem::scalar(LabelSet::mono(L)) - GroupAlgebraElem::monomial(b.root);
    }
    const Exponents s = LabelSet::half(labels_->q_half(a));
    const Vec& alpha = rd_->root(a);
    GroupAlgebraElem f = GroupAlgebraElem::scalar(LabelSet::mono(s)) + GroupAlgebraElem::monomial(alpha);
    GroupAlgebraElem g = GroupAlgebraElem::scalar(LabelSet::mono(s + L)) - GroupAlgebraElem::monomial(alpha);
    return f * g;
  }
  /// Delta_beta = 1 - theta_{-beta}.
  GroupAlgebraElem delta_beta(std::size_t nr_index) const {
    return GroupAlgebraElem::scalar(LaurentPoly(1)) - GroupAlgebraElem::monomial(-rd_->derived().nr[nr_index].root);
  }
  GroupAlgebraElem D_beta(std::size_t nr_index) const { return n_beta(nr_index) * n_beta(negative(nr_index)); }
  GroupAlgebraElem D_simple(std::size_t i) const { return D_beta(r1_of_simple(i)); }

  /// R1,+ meet w^{-1} R1,-, as indices into R_nr.
  std::vector<std::size_t> inversions(std::uint32_t w) const {
    std::vector<std::size_t> out;
    for (std::size_t k : rd_->derived().r1_pos)
      if (!rd_->is_positive(W_->root_image(w, rd_->derived().nr[k].base))) out.push_back(k);
    return out;
  }

  /// R_s = (1 - theta_{-a}) T_s + (1 - q) in H, with the 2 alpha variant.
  HeckeElem element(std::size_t i) const {
    const std::size_t a = rd_->simple_index(i);
    const Vec& alpha = rd_->root(a);
    const LaurentPoly one(1);
    const HeckeElem Ts = H_->finite_basis(W_->simple(i));
    if (rd_->derived().doubled_of[a] == RootDatum::npos) {
      const LaurentPoly q = LabelSet::mono(labels_->q_coroot(a));
      HeckeElem r = H_->mul(H_->one() - B_->theta(-alpha), Ts);
      return r + H_->scalar(one - q);
    }
    const Exponents Le = labels_->q_coroot(a), L2e = labels_->q_half(a);
    const LaurentPoly L = LabelSet::mono(Le), L2 = LabelSet::mono(L2e), s = LabelSet::mono(LabelSet::half(L2e));
    HeckeElem r = H_->mul(H_->one() - B_->theta(-2 * alpha), Ts);
    r += H_->scalar(one - L2 * L);
    r += (s * (one - L)) * B_->theta(-alpha);
    return r;
  }

  /// The right form T_s (1 - theta_a) + (q - 1) theta_a, with the 2 alpha
  /// variant, written directly as T_w theta_x terms.
  BernsteinElem bform(std::size_t i) const {
    const std::size_t a = rd_->simple_index(i);
    const Vec& alpha = rd_->root(a);
    const std::uint32_t s = W_->simple(i);
    const LaurentPoly one(1);
    BernsteinElem r = Bernstein::basis_term(s, Vec{});
    if (rd_->derived().doubled_of[a] == RootDatum::npos) {
      const LaurentPoly q = LabelSet::mono(labels_->q_coroot(a));
      r.add({s, alpha}, -one);
      r.add({0, alpha}, q - one);
      return r;
    }
    const Exponents Le = labels_->q_coroot(a), L2e = labels_->q_half(a);
    const LaurentPoly L = LabelSet::mono(Le), L2 = LabelSet::mono(L2e), sq = LabelSet::mono(LabelSet::half(L2e));
    r.add({s, 2 * alpha}, -one);
    r.add({0, 2 * alpha}, L2 * L - one);
    r.add({0, alpha}, sq * (L - one));
    return r;
  }

  /// The left form, moved into T_w theta_x terms.
  BernsteinElem bform_left(std::size_t i) const { return B_->expand(element(i)); }

  BernsteinElem word(const std::vector<std::size_t>& letters) const {
    BernsteinElem r = B_->one();
    for (auto i : letters) r = B_->mul(r, bform(i));
    return r;
  }

  /// R_w along the stored reduced word of w.
  BernsteinElem of(std::uint32_t w) const {
    std::lock_guard lock(mu_);
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    const auto& wd = W_->word(w);
    BernsteinElem r = word(std::vector<std::size_t>(wd.begin(), wd.end()));
    cache_.emplace(w, r);
    return r;
  }

 private:
  const Bernstein* B_;
  const HeckeAlgebra* H_;
  const FiniteWeylGroup* W_;
  const RootDatum* rd_;
  const LabelSet* labels_;
  mutable std::mutex mu_;
  mutable std::map<std::uint32_t, BernsteinElem> cache_;
};

/// theta_x^+ and its inner products, cleared of Poincare denominators.
class SphericalIdentities {
 public:
  explicit SphericalIdentities(const Bernstein& B)
      : B_(&B), H_(&B.algebra()), W_(&B.algebra().group().finite()), labels_(&B.labels()) {}

  HeckeElem sum_T(const std::vector<std::uint32_t>& ws) const {
    HeckeElem r = H_->zero();
    for (auto w : ws) r += H_->finite_basis(w);
    return r;
  }
  std::vector<std::uint32_t> all() const {
    std::vector<std::uint32_t> v(W_->order());
    std::iota(v.begin(), v.end(), 0u);
    return v;
  }
  LaurentPoly P0() const { return labels_->poincare(); }

  /// P0^2 theta_x^+ = delta(-x)^{1/2} (sum T_w) T_{t_x} (sum T_w).
  HeckeElem theta_plus_cleared(const Vec& x) const {
    check_dominant(x);
    const HeckeElem S = sum_T(all());
    const LaurentPoly d = LabelSet::mono(labels_->delta_sqrt(-x));
    return d * H_->mul(H_->right_mul_basis(S, AffineWeylGroup::translation(x)), S);
  }

  /// The three expressions for theta_x^+, each multiplied by P0^2 P^x.
  std::array<HeckeElem, 3> theta_plus_forms(const Vec& x) const {
    check_dominant(x);
    const auto cd = W_->coset_data(x);
    const LaurentPoly P0v = P0(), Px = labels_->poincare(cd.representatives);
    const LaurentPoly d = LabelSet::mono(labels_->delta_sqrt(-x));
    const auto tx = AffineWeylGroup::translation(x);
    const HeckeElem S = sum_T(all());
    HeckeElem first = Px * theta_plus_cleared(x);
    HeckeElem second = (d * P0v) * H_->mul(H_->right_mul_basis(sum_T(cd.representatives), tx), S);
    HeckeElem third = H_->zero();
    const auto& aff = H_->group();
    for (auto u : cd.representatives)
      for (auto v : all())
        third += H_->basis(aff.multiply(aff.multiply(AffineWeylGroup::finite_elem(u), tx), AffineWeylGroup::finite_elem(v)));
    third = (d * P0v * LabelSet::mono(labels_->q_finite(cd.longest_representative))) * third;
    return {first, second, third};
  }

  /// (P0^2 theta_x^+, P0^2 theta_y^+); divide by P0^4 for the inner product.
  LaurentPoly inner_plus_cleared(const Vec& x, const Vec& y) const {
    return H_->inner(theta_plus_cleared(x), theta_plus_cleared(y));
  }
  /// The closed value of the cleared inner product: delta_{xy} q(w^x) P0^2 P_x.
  LaurentPoly inner_plus_expected_cleared(const Vec& x, const Vec& y) const {
    check_dominant(x);
    check_dominant(y);
    if (x != y) return LaurentPoly();
    const auto cd = W_->coset_data(x);
    const LaurentPoly P0v = P0();
    return LabelSet::mono(labels_->q_finite(cd.longest_representative)) * P0v * P0v *
           labels_->poincare(cd.stabilizer);
  }

 private:
  const Bernstein* B_;
  const HeckeAlgebra* H_;
  const FiniteWeylGroup* W_;
  const LabelSet* labels_;

  void check_dominant(const Vec& x) const {
    if (!H_->group().datum().is_dominant(x)) throw std::invalid_argument("theta_plus needs a dominant vector");
  }
};

template <class F>
struct EisensteinCheck {
  F lhs;
  F rhs;
  double gap;
  F partial;  ///< the truncated Eisenstein functional itself
};

/// The minimal principal series I_t = H0 at numeric torus points, with fixed
/// numeric labels.
template <class F>
class PrincipalSeries {
 public:
  using Vector = std::vector<F>;

  PrincipalSeries(const Intertwiners& I, const TraceGenerator& tg, LabelValues<F> lv)
      : I_(&I), B_(&I.bernstein()), H_(&I.bernstein().algebra()), W_(&H_->group().finite()),
        rd_(&H_->group().datum()), labels_(&B_->labels()), tg_(&tg), lv_(std::move(lv)) {
    const std::size_t n = W_->order();
    prod_.assign(n, std::vector<Vector>(n, Vector(n, F(0))));
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b) {
        HeckeElem p = H_->mul(H_->finite_basis(a), H_->finite_basis(b));
        for (const auto& [g, c] : p.terms()) prod_[a][b][g.w] = lv_.eval(c);
      }
    for (std::uint32_t w = 0; w < n; ++w) q_.push_back(lv_.eval(labels_->q_finite(w)));
  }

  std::size_t dim() const { return W_->order(); }
  const LabelValues<F>& values() const { return lv_; }
  F eval(const LaurentPoly& p) const { return lv_.eval(p); }
  F q(std::uint32_t w) const { return q_[w]; }
  F P0() const {
    F s(0);
    for (const auto& v : q_) s += v;
    return s;
  }

  // ---- the finite Hecke algebra H0 ----

  Vector basis_vector(std::uint32_t w) const {
    Vector v(dim(), F(0));
    v[w] = F(1);
    return v;
  }
  Vector mul(const Vector& a, const Vector& b) const {
    Vector r(dim(), F(0));
    for (std::size_t i = 0; i < dim(); ++i) {
      if (FieldTraits<F>::is_zero(a[i])) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (FieldTraits<F>::is_zero(b[j])) continue;
        const F c = a[i] * b[j];
        for (std::size_t k = 0; k < dim(); ++k) r[k] += c * prod_[i][j][k];
      }
    }
    return r;
  }
  /// Matrix of y -> a y on H0.
  Matrix<F> left_matrix(const Vector& a) const {
    Matrix<F> m(dim(), dim());
    for (std::uint32_t v = 0; v < dim(); ++v) {
      Vector col = mul(a, basis_vector(v));
      for (std::size_t k = 0; k < dim(); ++k) m(k, v) = col[k];
    }
    return m;
  }
  /// Matrix of y -> y a on H0.
  Matrix<F> right_matrix(const Vector& a) const {
    Matrix<F> m(dim(), dim());
    for (std::uint32_t v = 0; v < dim(); ++v) {
      Vector col = mul(basis_vector(v), a);
      for (std::size_t k = 0; k < dim(); ++k) m(k, v) = col[k];
    }
    return m;
  }
  Vector star(const Vector& a) const {
    Vector r(dim(), F(0));
    for (std::uint32_t w = 0; w < dim(); ++w) r[W_->inverse(w)] = FieldTraits<F>::conj(a[w]);
    return r;
  }
  /// (x, y) = tau(x^* y) = sum conj(x_w) y_w q(w).
  F pairing(const Vector& x, const Vector& y) const {
    F s(0);
    for (std::size_t w = 0; w < dim(); ++w) s += FieldTraits<F>::conj(x[w]) * y[w] * q_[w];
    return s;
  }

  // ---- Laplace transform ----

  /// (T_w theta_x)(t) = t(x) T_w.
  Vector evaluate(const BernsteinElem& b, const TorusPoint<F>& t) const {
    Vector r(dim(), F(0));
    for (const auto& [k, c] : b.terms()) r[k.w] += lv_.eval(c) * t(k.x);
    return r;
  }
  /// The columns h T_v, to be evaluated at many torus points.
  std::vector<BernsteinElem> laplace_form(const BernsteinElem& h) const {
    std::vector<BernsteinElem> cols;
    for (std::uint32_t v = 0; v < dim(); ++v) cols.push_back(B_->right_mul_finite(h, v));
    return cols;
  }
  Matrix<F> laplace(const std::vector<BernsteinElem>& form, const TorusPoint<F>& t) const {
    Matrix<F> m(dim(), dim());
    for (std::size_t v = 0; v < dim(); ++v) {
      Vector col = evaluate(form[v], t);
      for (std::size_t k = 0; k < dim(); ++k) m(k, v) = col[k];
    }
    return m;
  }
  Matrix<F> laplace(const BernsteinElem& h, const TorusPoint<F>& t) const { return laplace(laplace_form(h), t); }
  Matrix<F> laplace(const HeckeElem& h, const TorusPoint<F>& t) const { return laplace(B_->expand(h), t); }

  // ---- intertwiners ----

  F eval_group(const GroupAlgebraElem& a, const TorusPoint<F>& t) const { return a.evaluate(t, lv_); }
  F n_w(std::uint32_t w, const TorusPoint<F>& t) const {
    F r(1);
    for (auto k : I_->inversions(w)) r *= eval_group(I_->n_beta(k), t);
    return r;
  }
  F Delta_w(std::uint32_t w, const TorusPoint<F>& t) const {
    F r(1);
    for (auto k : I_->inversions(w)) r *= eval_group(I_->delta_beta(k), t);
    return r;
  }
  F D_w(std::uint32_t w, const TorusPoint<F>& t) const { return n_w(w, t) * n_w(w, t.inverse()); }
  F n(const TorusPoint<F>& t) const { return n_w(W_->longest(), t); }
  F Delta(const TorusPoint<F>& t) const { return Delta_w(W_->longest(), t); }
  F D(const TorusPoint<F>& t) const { return D_w(W_->longest(), t); }

  Vector r_vector(std::uint32_t w, const TorusPoint<F>& t) const { return evaluate(I_->of(w), t); }
  Vector r_vector_word(const std::vector<std::size_t>& word, const TorusPoint<F>& t) const {
    return evaluate(I_->word(word), t);
  }
  /// r_w(t) / n_w(t); throws PoleError when n_w(t) = 0.
  Vector r0_vector(std::uint32_t w, const TorusPoint<F>& t) const {
    const F nw = n_w(w, t);
    if (FieldTraits<F>::is_zero(nw)) throw PoleError("n_w(t) vanishes; normalized intertwiner undefined");
    Vector r = r_vector(w, t);
    for (auto& c : r) c /= nw;
    return r;
  }
  /// R(w, t): I_t -> I_wt, x -> x r_{w^{-1}}(wt).
  Matrix<F> R_operator(std::uint32_t w, const TorusPoint<F>& t) const {
    return right_matrix(r_vector(W_->inverse(w), t.act(*W_, w)));
  }

  /// Whether wt differs from t for every w != e.
  bool is_regular(const TorusPoint<F>& t) const {
    for (std::uint32_t w = 1; w < dim(); ++w) {
      const auto wt = t.act(*W_, w);
      bool same = true;
      for (std::size_t i = 0; i < t.rank(); ++i) same &= FieldTraits<F>::is_zero(wt.images()[i] - t.images()[i]);
      if (same) return false;
    }
    return true;
  }

  // ---- matrix elements ----

  /// E(psi, t)(h) = tr(psi h(t)).
  static F matrix_element(const Matrix<F>& psi, const Matrix<F>& hhat) { return (psi * hhat).trace(); }

  /// E_t^{u,v}(h) = (T_{w0} r_{w0 u}(tbar^{-1}), h(t) r_v(t)), given h(t).
  F matrix_element(std::uint32_t u, std::uint32_t v, const TorusPoint<F>& t, const Matrix<F>& hhat) const {
    const std::uint32_t w0 = W_->longest();
    const Vector left = mul(basis_vector(w0), r_vector(W_->multiply(w0, u), t.conj().inverse()));
    return pairing(left, hhat.apply(r_vector(v, t)));
  }
  F matrix_element(std::uint32_t u, std::uint32_t v, const TorusPoint<F>& t, const BernsteinElem& h) const {
    return matrix_element(u, v, t, laplace(h, t));
  }
  F E(const TorusPoint<F>& t, const Matrix<F>& hhat) const { return matrix_element(0, 0, t, hhat); }

  // ---- spherical function ----

  /// T_0^+ = P0^{-1} sum T_w.
  Vector T0_plus() const {
    const F inv = F(1) / P0();
    return Vector(dim(), inv);
  }
  /// psi^+(y) = P0 (T_0^+, y) T_0^+.
  Matrix<F> psi_plus() const {
    Matrix<F> m(dim(), dim());
    const Vector e = T0_plus();
    const F p0 = P0();
    for (std::uint32_t v = 0; v < dim(); ++v) {
      const F c = p0 * pairing(e, basis_vector(v));
      for (std::size_t k = 0; k < dim(); ++k) m(k, v) = c * e[k];
    }
    return m;
  }
  F spherical(const Matrix<F>& hhat) const { return matrix_element(psi_plus(), hhat); }
  F spherical(const TorusPoint<F>& t, const BernsteinElem& h) const { return spherical(laplace(h, t)); }

  /// The action of theta_x^+ = T_0^+ theta_x T_0^+ on I_t.
  Matrix<F> theta_plus_hat(const Vec& x, const TorusPoint<F>& t) const {
    const Matrix<F> P = left_matrix(T0_plus());
    return P * laplace(Bernstein::basis_term(0, x), t) * P;
  }

  /// (q(w0) / P0) sum_w c(wt) (wt)(x).
  F macdonald(const TorusPoint<F>& t, const Vec& x) const {
    F s(0);
    for (std::uint32_t w = 0; w < dim(); ++w) {
      const auto wt = t.act(*W_, w);
      s += tg_->c_full(wt, lv_) * wt(x);
    }
    return q_[W_->longest()] / P0() * s;
  }

  // ---- Eisenstein series ----

  /// tau(T_w theta_z), computed in H.
  LaurentPoly trace_T_theta(std::uint32_t w, const Vec& z) const {
    std::lock_guard lock(mu_);
    auto key = AffineWeylElem{w, z};
    auto it = tt_cache_.find(key);
    if (it != tt_cache_.end()) return it->second;
    auto [y, zz] = rd_->dominant_decomposition(z);
    const HeckeElem h = H_->mul(H_->finite_basis(w), H_->basis(AffineWeylGroup::translation(y)));
    LaurentPoly r = LabelSet::mono(labels_->delta_sqrt(-z)) *
                    H_->trace_mul_basis_inverse(h, AffineWeylGroup::translation(zz));
    tt_cache_.emplace(key, r);
    return r;
  }

  /// sum t(-x) tau(theta_x h) with h = sum c T_w theta_y, truncated to
  /// x + y in Q_- of height at most radius.
  F eisenstein_partial(const TorusPoint<F>& t, const BernsteinElem& h, std::int64_t radius) const {
    F s(0);
    const auto cone = tg_->negative_cone(radius);
    for (const auto& [k, c] : h.sorted()) {
      F inner(0);
      for (const auto& z : cone) {
        const LaurentPoly tr = trace_T_theta(k.w, z);
        if (!tr.is_zero()) inner += lv_.eval(tr) * t(-z);
      }
      s += lv_.eval(c) * t(k.x) * inner;
    }
    return s;
  }

  /// D(t) times the truncated Eisenstein functional at h, against Delta(t^{-1}) E_t(h).
  EisensteinCheck<F> eisenstein_check(const TorusPoint<F>& t, const BernsteinElem& h, std::int64_t radius) const {
    tg_->check_region(t, lv_);
    const F Dt = D(t), Dinv = Delta(t.inverse());
    if (FieldTraits<F>::is_zero(Dt)) throw PoleError("D(t) vanishes at the given torus point");
    const F partial = eisenstein_partial(t, h, radius);
    const F lhs = Dt * partial;
    const F rhs = Dinv * E(t, laplace(h, t));
    return {lhs, rhs, FieldTraits<F>::magnitude(lhs - rhs), partial};
  }

  /// E_t(h) / (q(w0)^2 Delta(t) c(t) c(t^{-1})), the global form of the Eisenstein series.
  F eisenstein_global(const TorusPoint<F>& t, const BernsteinElem& h) const {
    const F qw0 = q_[W_->longest()];
    const F den = qw0 * qw0 * Delta(t) * tg_->c_full(t, lv_) * tg_->c_full(t.inverse(), lv_);
    if (FieldTraits<F>::is_zero(den)) throw PoleError("Delta(t) c(t) c(t^-1) vanishes");
    return E(t, laplace(h, t)) / den;
  }

 private:
  const Intertwiners* I_;
  const Bernstein* B_;
  const HeckeAlgebra* H_;
  const FiniteWeylGroup* W_;
  const RootDatum* rd_;
  const LabelSet* labels_;
  const TraceGenerator* tg_;
  LabelValues<F> lv_;
  std::vector<std::vector<Vector>> prod_;  ///< structure constants of H0
  Vector q_;
  mutable std::mutex mu_;
  mutable std::unordered_map<AffineWeylElem, LaurentPoly, AffineWeylElemHash> tt_cache_;
};

}  // namespace hecke

#endif  // HECKE_PRINCIPAL_HPP
