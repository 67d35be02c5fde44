#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "hecke/principal.hpp"

using namespace hecke;
using hecke::testing::make_tower;

namespace {

struct Ctx {
  std::unique_ptr<hecke::testing::Tower> t;
  std::unique_ptr<Bernstein> B;
  std::unique_ptr<TraceGenerator> tg;
  std::unique_ptr<Intertwiners> I;
  explicit Ctx(const std::string& name) : t(make_tower(name)) {
    B = std::make_unique<Bernstein>(t->H);
    tg = std::make_unique<TraceGenerator>(*B);
    I = std::make_unique<Intertwiners>(*B);
  }
  const FiniteWeylGroup& W() const { return t->w0; }

  // v values 2, 3, 5, ... so the labels differ between classes.
  template <class F>
  LabelValues<F> values() const {
    static const int primes[] = {2, 3, 5, 7};
    LabelValues<F> lv;
    for (std::size_t i = 0; i < t->labels.num_vars(); ++i) lv.v.push_back(F(primes[i % 4]));
    return lv;
  }
  template <class F>
  PrincipalSeries<F> series() const {
    return PrincipalSeries<F>(*I, *tg, values<F>());
  }
};

TorusPoint<Rational> rational_point(std::size_t rank, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 7), sign(0, 1);
  std::vector<Rational> v;
  for (std::size_t i = 0; i < rank; ++i) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    v.push_back(sign(rng) ? r : Rational(-r));
  }
  return TorusPoint<Rational>(v);
}

TorusPoint<Complex> complex_point(std::size_t rank, std::mt19937& rng) {
  std::uniform_real_distribution<double> mag(0.5, 1.8), arg(-3.1, 3.1);
  std::vector<Complex> v;
  for (std::size_t i = 0; i < rank; ++i) v.push_back(std::polar(mag(rng), arg(rng)));
  return TorusPoint<Complex>(v);
}

// A regular point where no n-factor, Delta or c-function degenerates.
template <class F, class Gen>
TorusPoint<F> generic_point(const PrincipalSeries<F>& ps, const Ctx& c, Gen next) {
  for (;;) {
    TorusPoint<F> t = next();
    if (!ps.is_regular(t)) continue;
    bool ok = true;
    for (std::uint32_t w = 0; w < ps.dim() && ok; ++w) {
      auto wt = t.act(c.W(), w);
      ok &= !FieldTraits<F>::is_zero(ps.D(wt)) && !FieldTraits<F>::is_zero(ps.Delta(wt));
      try {
        ok &= !FieldTraits<F>::is_zero(c.tg->c_full(wt, ps.values()) * c.tg->c_full(wt.inverse(), ps.values()));
      } catch (const PoleError&) {
        ok = false;
      }
    }
    if (ok) return t;
  }
}

template <class F>
double max_diff(const std::vector<F>& a, const std::vector<F>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, FieldTraits<F>::magnitude(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Intertwiner, LeftAndRightFormsAgree) {
  for (const auto& name : {"A1-weight", "A1-root", "A2", "B2", "BnCn(2)"}) {
    Ctx c(name);
    for (std::size_t i = 0; i < c.t->rd.semisimple_rank(); ++i)
      EXPECT_EQ(c.I->bform_left(i), c.I->bform(i)) << name << " node " << i;
  }
}

TEST(Intertwiner, SquareIsD) {
  for (const auto& name : {"A1-weight", "A1-root", "BnCn(2)"}) {
    Ctx c(name);
    for (std::size_t i = 0; i < c.t->rd.semisimple_rank(); ++i) {
      const auto R = c.I->bform(i);
      EXPECT_EQ(c.B->mul(R, R), Bernstein::from_group(c.I->D_simple(i))) << name << " node " << i;
    }
  }
}

TEST(Intertwiner, A1SquareHasFourTerms) {
  Ctx c("A1-weight");
  const auto D = c.I->D_simple(0);
  EXPECT_EQ(D.size(), 3u);  // theta_{-2}, 1, theta_2 after combining the constant terms
  const auto R = c.I->element(0);
  EXPECT_EQ(c.t->H.mul(R, R), c.B->embed(D));
}

TEST(Intertwiner, CommutesWithTheta) {
  Ctx c("A1-weight");
  const auto R = c.I->element(0);
  EXPECT_EQ(c.t->H.mul(R, c.B->theta(Vec{1})), c.t->H.mul(c.B->theta(Vec{-1}), R));
  Ctx d("BnCn(2)");
  for (std::size_t i = 0; i < 2; ++i)
    for (const Vec& x : {Vec{1, 0}, Vec{0, 1}, Vec{1, -1}}) {
      const auto R2 = d.I->bform(i);
      const Vec sx = d.t->rd.reflect(d.t->rd.simple_index(i), x);
      EXPECT_EQ(d.B->mul(R2, Bernstein::basis_term(0, x)), d.B->mul(Bernstein::basis_term(0, sx), R2));
    }
}

TEST(Intertwiner, Braids) {
  Ctx a2("A2");
  EXPECT_EQ(a2.I->word({0, 1, 0}), a2.I->word({1, 0, 1}));
  Ctx b2("B2");
  EXPECT_EQ(b2.I->word({0, 1, 0, 1}), b2.I->word({1, 0, 1, 0}));
  Ctx bc("BnCn(2)");
  EXPECT_EQ(bc.I->word({0, 1, 0, 1}), bc.I->word({1, 0, 1, 0}));
}

TEST(Laplace, IdentityAndRepresentation) {
  for (const auto& name : {"A1-root", "A2", "B2"}) {
    Ctx c(name);
    auto ps = c.series<Rational>();
    std::mt19937 rng(7);
    auto elems = c.t->aff.elements_up_to_length(2);
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    auto random_elem = [&] {
      HeckeElem h = c.t->H.zero();
      for (int k = 0; k < 3; ++k) h += c.t->H.basis(elems[pick(rng)], LaurentPoly(coef(rng)));
      return h;
    };
    for (int trial = 0; trial < 3; ++trial) {
      auto t = rational_point(c.t->rd.rank(), rng);
      EXPECT_EQ(ps.laplace(c.t->H.one(), t), Matrix<Rational>::identity(ps.dim()));
      HeckeElem a = random_elem(), b = random_elem();
      EXPECT_EQ(ps.laplace(c.t->H.mul(a, b), t), ps.laplace(a, t) * ps.laplace(b, t)) << name;
    }
  }
}

TEST(Laplace, CentralElementsActByScalars) {
  for (const auto& name : {"A2", "B2"}) {
    Ctx c(name);
    auto ps = c.series<Rational>();
    std::mt19937 rng(11);
    auto t = rational_point(2, rng);
    for (const Vec& x : {Vec{1, 0}, Vec{1, 1}}) {
      Rational s = 0;
      for (const auto& y : c.B->orbit(x)) s += t(y);
      EXPECT_EQ(ps.laplace(c.B->center_element(x), t), s * Matrix<Rational>::identity(ps.dim())) << name;
    }
  }
}

TEST(Laplace, ThetaEigenvectorsAreIntertwiners) {
  for (const auto& name : {"A2", "B2", "BnCn(2)"}) {
    Ctx c(name);
    auto ps = c.series<Rational>();
    std::mt19937 rng(3);
    auto t = generic_point<Rational>(ps, c, [&] { return rational_point(2, rng); });
    for (const Vec& x : {Vec{1, 0}, Vec{0, 1}, Vec{2, -1}}) {
      const auto M = ps.laplace(Bernstein::basis_term(0, x), t);
      for (std::uint32_t w = 0; w < ps.dim(); ++w) {
        auto r = ps.r_vector(w, t);
        auto lhs = M.apply(r);
        const Rational ev = t.act(c.W(), w)(x);
        for (auto& v : r) v *= ev;
        EXPECT_EQ(lhs, r) << name << " w=" << w;
      }
    }
  }
}

TEST(RVector, WordIndependenceTriangularityAndD) {
  for (const auto& name : {"A2", "B2", "BnCn(2)"}) {
    Ctx c(name);
    auto ps = c.series<Rational>();
    std::mt19937 rng(5);
    auto t = generic_point<Rational>(ps, c, [&] { return rational_point(2, rng); });
    EXPECT_EQ(ps.r_vector(0, t), ps.basis_vector(0));
    if (std::string(name) == "A2") EXPECT_EQ(ps.r_vector_word({0, 1, 0}, t), ps.r_vector_word({1, 0, 1}, t));
    else EXPECT_EQ(ps.r_vector_word({0, 1, 0, 1}, t), ps.r_vector_word({1, 0, 1, 0}, t));
    for (std::uint32_t w = 0; w < ps.dim(); ++w) {
      auto r = ps.r_vector(w, t);
      EXPECT_EQ(r[w], ps.Delta_w(w, t.inverse()));
      for (std::uint32_t u = 0; u < ps.dim(); ++u)
        if (r[u] != 0) EXPECT_LE(c.W().length(u), c.W().length(w));
      auto back = ps.mul(ps.r_vector(c.W().inverse(w), t.act(c.W(), w)), r);
      auto expect = ps.basis_vector(0);
      expect[0] = ps.D_w(w, t);
      EXPECT_EQ(back, expect) << name << " w=" << w;
    }
  }
}

TEST(RVector, NormalizedCocycle) {
  for (const auto& name : {"A2", "BnCn(2)"}) {
    Ctx c(name);
    auto ps = c.series<Rational>();
    std::mt19937 rng(9);
    auto t = generic_point<Rational>(ps, c, [&] { return rational_point(2, rng); });
    for (std::uint32_t u = 0; u < ps.dim(); ++u)
      for (std::uint32_t v = 0; v < ps.dim(); ++v)
        EXPECT_EQ(ps.mul(ps.r0_vector(u, t.act(c.W(), v)), ps.r0_vector(v, t)),
                  ps.r0_vector(c.W().multiply(u, v), t));
  }
}

TEST(RVector, AdjointAndPairingAdjunction) {
  for (const auto& name : {"A2", "BnCn(2)"}) {
    Ctx c(name);
    auto ps = c.series<Complex>();
    std::mt19937 rng(13);
    auto t = generic_point<Complex>(ps, c, [&] { return complex_point(2, rng); });
    const auto tb = t.conj().inverse();
    for (std::uint32_t w = 0; w < ps.dim(); ++w)
      EXPECT_LT(max_diff(ps.star(ps.r_vector(w, t)), ps.r_vector(c.W().inverse(w), tb.act(c.W(), w))), 1e-9);
    const HeckeElem x = c.t->H.mul(c.t->H.finite_basis(1), c.B->theta(Vec{1, -1})) +
                        LaurentPoly(2) * c.B->theta(Vec{0, 1});
    const auto X = ps.laplace(x, t), Xs = ps.laplace(c.t->H.star(x), tb);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int k = 0; k < 3; ++k) {
      std::vector<Complex> y, z;
      for (std::size_t i = 0; i < ps.dim(); ++i) {
        y.push_back({u(rng), u(rng)});
        z.push_back({u(rng), u(rng)});
      }
      EXPECT_LT(std::abs(ps.pairing(Xs.apply(y), z) - ps.pairing(y, X.apply(z))), 1e-9);
    }
  }
}

TEST(MatrixElement, UnitAndOrthogonality) {
  for (const auto& name : {"A1-root", "A2", "B2"}) {
    Ctx c(name);
    auto ps = c.series<Rational>();
    std::mt19937 rng(17);
    auto t = generic_point<Rational>(ps, c, [&] { return rational_point(c.t->rd.rank(), rng); });
    const auto id = Matrix<Rational>::identity(ps.dim());
    const std::uint32_t w0 = c.W().longest();
    const Rational qw0 = ps.q(w0);
    for (std::uint32_t u = 0; u < ps.dim(); ++u)
      for (std::uint32_t v = 0; v < ps.dim(); ++v) {
        const Rational expect = u == v ? qw0 * ps.Delta(t.act(c.W(), u)) : Rational(0);
        EXPECT_EQ(ps.matrix_element(u, v, t, id), expect);
        auto left = ps.mul(ps.basis_vector(w0), ps.r_vector(c.W().multiply(w0, v), t.conj().inverse()));
        EXPECT_EQ(ps.pairing(left, ps.r_vector(u, t)), u == v ? qw0 * ps.Delta(t.act(c.W(), u)) : Rational(0));
      }
  }
}

TEST(MatrixElement, ThetaEquivarianceAndCharacter) {
  for (const auto& name : {"A2", "BnCn(2)"}) {
    Ctx c(name);
    auto ps = c.series<Rational>();
    std::mt19937 rng(19);
    auto t = generic_point<Rational>(ps, c, [&] { return rational_point(2, rng); });
    const Vec x1{1, 0}, x2{-1, 1};
    const BernsteinElem h = Bernstein::basis_term(1, Vec{0, 1}) + Bernstein::basis_term(c.W().longest(), Vec{1, 1});
    const auto H = ps.laplace(h, t);
    const auto Hx = ps.laplace(c.B->mul(c.B->mul(Bernstein::basis_term(0, x1), h), Bernstein::basis_term(0, x2)), t);
    const Rational qw0 = ps.q(c.W().longest());
    Rational chi = 0, chi_orbit = 0;
    for (std::uint32_t u = 0; u < ps.dim(); ++u) {
      for (std::uint32_t v = 0; v < ps.dim(); ++v)
        EXPECT_EQ(ps.matrix_element(u, v, t, Hx),
                  t.act(c.W(), u)(x1) * t.act(c.W(), v)(x2) * ps.matrix_element(u, v, t, H));
      const auto ut = t.act(c.W(), u);
      chi += ps.matrix_element(u, u, t, H) / ps.Delta(ut);
      chi_orbit += ps.E(ut, ps.laplace(h, ut)) / ps.Delta(ut);
    }
    EXPECT_EQ(chi / qw0, H.trace());
    EXPECT_EQ(chi_orbit / qw0, H.trace());
  }
}

TEST(MatrixElement, FunctionalEquationForSimpleReflections) {
  Ctx c("A2");
  auto ps = c.series<Rational>();
  std::mt19937 rng(23);
  auto t = generic_point<Rational>(ps, c, [&] { return rational_point(2, rng); });
  Matrix<Rational> psi(ps.dim(), ps.dim());
  std::uniform_int_distribution<int> d(-4, 4);
  for (std::size_t i = 0; i < ps.dim(); ++i)
    for (std::size_t j = 0; j < ps.dim(); ++j) psi(i, j) = d(rng);
  const BernsteinElem h = Bernstein::basis_term(2, Vec{1, -1}) + Bernstein::basis_term(0, Vec{0, 2});
  for (std::size_t i = 0; i < 2; ++i) {
    const std::uint32_t s = c.W().simple(i);
    const auto st = t.act(c.W(), s);
    const auto moved = ps.R_operator(s, t) * psi * ps.R_operator(s, st);
    EXPECT_EQ(ps.matrix_element(moved, ps.laplace(h, st)), ps.D_w(s, t) * ps.matrix_element(psi, ps.laplace(h, t)));
  }
}

TEST(MatrixElement, GramRankIsFull) {
  for (const auto& name : {"A1-weight", "A2"}) {
    Ctx c(name);
    auto ps = c.series<Complex>();
    std::mt19937 rng(29);
    const std::size_t rank = c.t->rd.rank();
    auto t = generic_point<Complex>(ps, c, [&] { return complex_point(rank, rng); });
    std::vector<Matrix<Complex>> probes;
    std::vector<Vec> xs;
    if (rank == 1)
      for (int a = -2; a <= 2; ++a) xs.push_back(Vec{a});
    else
      for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) xs.push_back(Vec{a, b});
    for (std::uint32_t w = 0; w < ps.dim(); ++w)
      for (const auto& x : xs) probes.push_back(ps.laplace(Bernstein::basis_term(w, x), t));
    const std::size_t n = ps.dim();
    Matrix<Complex> G(n * n, probes.size());
    for (std::uint32_t u = 0; u < n; ++u)
      for (std::uint32_t v = 0; v < n; ++v)
        for (std::size_t p = 0; p < probes.size(); ++p) G(u * n + v, p) = ps.matrix_element(u, v, t, probes[p]);
    EXPECT_EQ(hecke::rank(G), n * n) << name;
  }
}

TEST(Spherical, NormalizationAndIdempotent) {
  Ctx c("B2");
  auto ps = c.series<Rational>();
  std::mt19937 rng(31);
  auto t = generic_point<Rational>(ps, c, [&] { return rational_point(2, rng); });
  EXPECT_EQ(ps.spherical(Matrix<Rational>::identity(ps.dim())), Rational(1));
  EXPECT_EQ(ps.spherical(ps.theta_plus_hat(Vec{0, 0}, t)), Rational(1));
  EXPECT_EQ(ps.macdonald(t, Vec{0, 0}), Rational(1));
}

TEST(Spherical, MacdonaldFormula) {
  for (const auto& name : {"A1-weight", "A1-root", "A2", "B2", "BnCn(2)"}) {
    Ctx c(name);
    auto ps = c.series<Rational>();
    std::mt19937 rng(37);
    const std::size_t rank = c.t->rd.rank();
    for (int k = 0; k < 3; ++k) {
      auto t = generic_point<Rational>(ps, c, [&] { return rational_point(rank, rng); });
      for (const Vec& x : rank == 1 ? std::vector<Vec>{Vec{1}, Vec{2}, Vec{3}}
                                    : std::vector<Vec>{Vec{1, 0}, Vec{0, 1}, Vec{2, 1}, Vec{1, 2}}) {
        if (!c.t->rd.is_dominant(x)) continue;
        EXPECT_EQ(ps.spherical(ps.theta_plus_hat(x, t)), ps.macdonald(t, x)) << name;
      }
    }
  }
  Ctx c("A2");
  auto ps = c.series<Complex>();
  std::mt19937 rng(41);
  auto t = generic_point<Complex>(ps, c, [&] { return complex_point(2, rng); });
  EXPECT_LT(std::abs(ps.spherical(ps.theta_plus_hat(Vec{1, 1}, t)) - ps.macdonald(t, Vec{1, 1})), 1e-8);
}

TEST(Spherical, RelationToE) {
  Ctx c("A2");
  auto ps = c.series<Rational>();
  std::mt19937 rng(43);
  auto t = generic_point<Rational>(ps, c, [&] { return rational_point(2, rng); });
  const auto P = ps.left_matrix(ps.T0_plus());
  const auto Hm = ps.laplace(Bernstein::basis_term(1, Vec{1, -1}), t);
  const Rational lhs = ps.E(t, P * Hm * P);
  const Rational rhs = ps.q(c.W().longest()) * ps.n(t.inverse()) / ps.P0() * ps.spherical(Hm);
  EXPECT_EQ(lhs, rhs);
}

TEST(Spherical, NormalizedIntertwinersFixT0Plus) {
  for (const auto& name : {"A2", "BnCn(2)"}) {
    Ctx c(name);
    auto ps = c.series<Rational>();
    std::mt19937 rng(47);
    auto t = generic_point<Rational>(ps, c, [&] { return rational_point(2, rng); });
    const auto e = ps.T0_plus();
    std::vector<Rational> sum(ps.dim(), Rational(0));
    for (std::uint32_t w = 0; w < ps.dim(); ++w) {
      auto r0 = ps.r0_vector(w, t);
      EXPECT_EQ(ps.mul(e, r0), e);
      const Rational cw = c.tg->c_full(t.act(c.W(), w), ps.values());
      for (std::size_t k = 0; k < ps.dim(); ++k) sum[k] += cw * r0[k];
    }
    const Rational f = ps.q(c.W().longest()) / ps.P0();
    for (auto& s : sum) s *= f;
    EXPECT_EQ(sum, e) << name;
  }
}

TEST(ThetaPlus, ThreeFormsAgree) {
  for (const auto& name : {"A1-weight", "A2", "B2", "BnCn(2)"}) {
    Ctx c(name);
    SphericalIdentities S(*c.B);
    const std::size_t rank = c.t->rd.rank();
    for (const Vec& x : rank == 1 ? std::vector<Vec>{Vec{0}, Vec{1}, Vec{2}}
                                  : std::vector<Vec>{Vec{0, 0}, Vec{1, 0}, Vec{0, 1}, Vec{1, 1}}) {
      if (!c.t->rd.is_dominant(x)) continue;
      auto f = S.theta_plus_forms(x);
      EXPECT_EQ(f[0], f[1]) << name;
      EXPECT_EQ(f[0], f[2]) << name;
    }
  }
}

TEST(ThetaPlus, InnerProducts) {
  Ctx c("A1-weight");
  SphericalIdentities S(*c.B);
  const LaurentPoly q = LaurentPoly::variable(0, 2), P0 = LaurentPoly(1) + q;
  // (theta_0^+, theta_0^+) = 1/P0
  EXPECT_EQ(S.inner_plus_cleared(Vec{0}, Vec{0}), P0 * P0 * P0);
  // regular x: q(w^x)/(P0 P^x) = q/(1+q)^2
  EXPECT_EQ(S.inner_plus_cleared(Vec{1}, Vec{1}), q * P0 * P0);
  EXPECT_TRUE(S.inner_plus_cleared(Vec{1}, Vec{2}).is_zero());
  EXPECT_TRUE(S.inner_plus_cleared(Vec{0}, Vec{3}).is_zero());
  Ctx a2("A2");
  SphericalIdentities S2(*a2.B);
  for (const Vec& x : {Vec{0, 0}, Vec{1, 0}, Vec{1, 1}})
    for (const Vec& y : {Vec{0, 0}, Vec{1, 0}, Vec{0, 1}, Vec{1, 1}})
      EXPECT_EQ(S2.inner_plus_cleared(x, y), S2.inner_plus_expected_cleared(x, y));
}

TEST(Eisenstein, A1GapShrinksAndGlobalForm) {
  Ctx c("A1-weight");
  LabelValues<Real50> lv{{Real50(2)}};
  PrincipalSeries<Real50> ps(*c.I, *c.tg, lv);
  TorusPoint<Real50> t({Real50(1) / sqrt(Real50(10))});
  for (const auto& h : {Bernstein::basis_term(0, Vec{0}), Bernstein::basis_term(1, Vec{0}),
                        Bernstein::basis_term(0, Vec{1})}) {
    double prev = 1e300;
    for (int r = 4; r <= 40; r += 4) {
      auto chk = ps.eisenstein_check(t, h, r);
      EXPECT_LT(chk.gap, prev);
      prev = chk.gap;
    }
    EXPECT_LT(prev, 1e-6);
    auto chk = ps.eisenstein_check(t, h, 40);
    EXPECT_LT(static_cast<double>(abs(chk.partial - ps.eisenstein_global(t, h))), 1e-6);
  }
  EXPECT_THROW(ps.eisenstein_check(TorusPoint<Real50>({Real50(3)}), Bernstein::basis_term(0, Vec{0}), 4), RegionError);
}
