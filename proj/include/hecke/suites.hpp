#ifndef HECKE_SUITES_HPP
#define HECKE_SUITES_HPP

#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hecke/bernstein.hpp"
#include "hecke/hecke.hpp"
#include "hecke/labels.hpp"
#include "hecke/principal.hpp"
#include "hecke/rootdata.hpp"
#include "hecke/tracegen.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

/// Owns every layer built on one labelled root datum.
struct Workspace {
  RootDatum rd;
  FiniteWeylGroup W;
  AffineWeylGroup aff;
  LabelSet labels;
  HeckeAlgebra H;
  Bernstein B;
  TraceGenerator tg;
  Intertwiners I;
  SphericalIdentities S;

  Workspace(RootDatum datum, const std::map<std::string, std::string>& names)
      : rd(std::move(datum)), W(rd), aff(rd, W), labels(aff, names), H(labels), B(H), tg(B), I(B), S(B) {}
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  static std::unique_ptr<Workspace> preset(const std::string& name,
                                           const std::map<std::string, std::string>& names = {}) {
    return std::make_unique<Workspace>(build_preset(name), names);
  }
};

/// All x with |x_i| <= r, in lexicographic order.
inline std::vector<Vec> box_points(std::size_t rank, std::int64_t r) {
  std::vector<Vec> out;
  Vec x;
  for (std::size_t i = 0; i < rank; ++i) x[i] = static_cast<std::int32_t>(-r);
  for (;;) {
    out.push_back(x);
    std::size_t i = rank;
    while (i > 0) {
      --i;
      if (x[i] < r) {
        ++x[i];
        for (std::size_t k = i + 1; k < rank; ++k) x[k] = static_cast<std::int32_t>(-r);
        break;
      }
      if (i == 0) return out;
    }
    if (rank == 0) return out;
  }
}

/// Dominant x with (x, 2 rho^vee) <= 2 h, in lexicographic order.
inline std::vector<Vec> dominant_up_to(const RootDatum& rd, std::int64_t h) {
  std::vector<Vec> out;
  for (const auto& x : box_points(rd.rank(), 2 * h))
    if (rd.is_dominant(x) && rd.pair_two_rho_check(x) <= 2 * h) out.push_back(x);
  return out;
}

/// Order of s_i s_j for finite simple nodes, from the Cartan entries.
inline std::size_t braid_order(const RootDatum& rd, std::size_t i, std::size_t j) {
  switch (rd.cartan(i, j) * rd.cartan(j, i)) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return 0;
  }
}

inline std::vector<std::size_t> alternating(std::size_t i, std::size_t j, std::size_t m) {
  std::vector<std::size_t> w;
  for (std::size_t k = 0; k < m; ++k) w.push_back(k % 2 ? j : i);
  return w;
}

inline nlohmann::json vec_json(const RootDatum& rd, const Vec& x) { return x.to_vector(rd.rank()); }

// ---- seeded torus points ----

inline TorusPoint<Rational> random_rational_point(std::size_t rank, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 7), sign(0, 1);
  std::vector<Rational> v;
  for (std::size_t i = 0; i < rank; ++i) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    v.push_back(sign(rng) ? r : Rational(-r));
  }
  return TorusPoint<Rational>(v);
}

inline TorusPoint<Complex> random_complex_point(std::size_t rank, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.5, 1.8), arg(-3.1, 3.1);
  std::vector<Complex> v;
  for (std::size_t i = 0; i < rank; ++i) v.push_back(std::polar(mag(rng), arg(rng)));
  return TorusPoint<Complex>(v);
}

/// Regular, and no c-function pole or zero on the orbit.
template <class F>
bool is_generic(const PrincipalSeries<F>& ps, const Workspace& ws, const TorusPoint<F>& t) {
  if (!ps.is_regular(t)) return false;
  for (std::uint32_t w = 0; w < ps.dim(); ++w) {
    const auto wt = t.act(ws.W, w);
    try {
      if (FieldTraits<F>::is_zero(ws.tg.c_full(wt, ps.values()) * ws.tg.c_full(wt.inverse(), ps.values())))
        return false;
    } catch (const PoleError&) {
      return false;
    }
  }
  return true;
}

template <class F>
TorusPoint<F> random_point(std::size_t rank, std::mt19937_64& rng);
template <>
inline TorusPoint<Rational> random_point<Rational>(std::size_t rank, std::mt19937_64& rng) {
  return random_rational_point(rank, rng);
}
template <>
inline TorusPoint<Complex> random_point<Complex>(std::size_t rank, std::mt19937_64& rng) {
  return random_complex_point(rank, rng);
}

template <class F>
TorusPoint<F> random_generic_point(const PrincipalSeries<F>& ps, const Workspace& ws, std::mt19937_64& rng) {
  for (int tries = 0; tries < 10000; ++tries) {
    auto t = random_point<F>(ws.rd.rank(), rng);
    if (is_generic(ps, ws, t)) return t;
  }
  throw std::runtime_error("no generic torus point found");
}

// ---- verification suites ----

struct SuiteOptions {
  std::int64_t box = 3;
  std::int64_t height = 6;
  std::size_t length = 4;
  std::size_t samples = 20;
  std::uint64_t seed = 1;
};

struct SuiteResult {
  SuiteResult() = default;
  explicit SuiteResult(std::string name) : suite(std::move(name)) {}

  std::string suite;
  bool pass = true;
  std::size_t checked = 0;
  nlohmann::json counterexample;  ///< the first failure, or null

  void fail(nlohmann::json detail) {
    if (pass) counterexample = std::move(detail);
    pass = false;
  }
  nlohmann::json to_json() const {
    nlohmann::json j{{"suite", suite}, {"pass", pass}, {"checked", checked}};
    if (!pass) j["counterexample"] = counterexample;
    return j;
  }
};

/// (T_s - q)(T_s + 1) = 0 for every fundamental node.
inline SuiteResult suite_quadratic(const Workspace& ws, const SuiteOptions&) {
  SuiteResult r{"quadratic"};
  for (std::size_t i = 0; i < ws.aff.nodes().size(); ++i) {
    HeckeElem s = ws.H.basis(ws.aff.nodes()[i].reflection);
    LaurentPoly q = LabelSet::mono(ws.labels.q_node(i));
    ++r.checked;
    if (!ws.H.mul(s - ws.H.scalar(q), s + ws.H.one()).is_zero()) r.fail({{"node", i}});
  }
  return r;
}

/// Braid relations among the finite T_s.
inline SuiteResult suite_braid(const Workspace& ws, const SuiteOptions&) {
  SuiteResult r{"braid"};
  const std::size_t n = ws.rd.semisimple_rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t m = braid_order(ws.rd, i, j);
      auto prod = [&](const std::vector<std::size_t>& w) {
        HeckeElem h = ws.H.one();
        for (auto k : w) h = ws.H.right_mul_node(h, k);
        return h;
      };
      ++r.checked;
      if (prod(alternating(i, j, m)) != prod(alternating(j, i, m))) r.fail({{"i", i}, {"j", j}});
    }
  return r;
}

/// tau(T_w^* T_w') = delta q(w), by full multiplication.
inline SuiteResult suite_orthogonality(const Workspace& ws, const SuiteOptions& o) {
  SuiteResult r{"orthogonality"};
  const auto elems = ws.aff.elements_up_to_length(o.length);
  for (const auto& a : elems) {
    const HeckeElem sa = ws.H.star(ws.H.basis(a));
    for (const auto& b : elems) {
      ++r.checked;
      const LaurentPoly got = ws.H.tau(ws.H.mul(sa, ws.H.basis(b)));
      const LaurentPoly want = a == b ? LabelSet::mono(ws.labels.q_of_w(a)) : LaurentPoly();
      if (got != want) r.fail({{"w", ws.aff.to_json(a)}, {"w'", ws.aff.to_json(b)}});
    }
  }
  return r;
}

/// theta_x T_s - T_s theta_{s x} against the closed right side, both branches.
inline SuiteResult suite_lusztig(const Workspace& ws, const SuiteOptions& o) {
  SuiteResult r{"lusztig"};
  for (const auto& x : box_points(ws.rd.rank(), o.box))
    for (std::size_t i = 0; i < ws.rd.semisimple_rank(); ++i) {
      ++r.checked;
      auto [lhs, rhs] = ws.B.lusztig_commutation(x, i);
      if (lhs != rhs) r.fail({{"x", vec_json(ws.rd, x)}, {"simple", i}});
    }
  return r;
}

inline SuiteResult suite_star_theta(const Workspace& ws, const SuiteOptions& o) {
  SuiteResult r{"star-theta"};
  for (const auto& x : box_points(ws.rd.rank(), std::min<std::int64_t>(o.box, 2))) {
    ++r.checked;
    if (!ws.B.star_theta_check(x)) r.fail({{"x", vec_json(ws.rd, x)}});
  }
  return r;
}

/// Orbit sums of theta commute with every T_s.
inline SuiteResult suite_center(const Workspace& ws, const SuiteOptions& o) {
  SuiteResult r{"center"};
  for (const auto& x : dominant_up_to(ws.rd, std::min<std::int64_t>(o.box, 2))) {
    const HeckeElem z = ws.B.center_element(x);
    for (std::size_t i = 0; i < ws.aff.nodes().size(); ++i) {
      ++r.checked;
      const HeckeElem s = ws.H.basis(ws.aff.nodes()[i].reflection);
      if (ws.H.mul(z, s) != ws.H.mul(s, z)) r.fail({{"x", vec_json(ws.rd, x)}, {"node", i}});
    }
  }
  return r;
}

/// Partition formula against the direct trace on the negative cone.
inline SuiteResult suite_partition_direct(const Workspace& ws, const SuiteOptions& o) {
  SuiteResult r{"partition-direct"};
  for (const auto& x : ws.tg.negative_cone(o.height)) {
    ++r.checked;
    const LaurentPoly p = ws.tg.trace_theta_partition(x), d = ws.tg.trace_theta_direct(x);
    if (p != d)
      r.fail({{"x", vec_json(ws.rd, x)}, {"partition", ws.labels.to_string(p)}, {"direct", ws.labels.to_string(d)}});
  }
  return r;
}

/// tau(theta_x) = 0 off Q_-, by the direct computation.
inline SuiteResult suite_support(const Workspace& ws, const SuiteOptions& o) {
  SuiteResult r{"support"};
  for (const auto& x : box_points(ws.rd.rank(), o.box)) {
    auto co = ws.rd.q_coordinates(-x);
    bool in_cone = co.has_value();
    if (co)
      for (std::size_t i = 0; i < ws.rd.semisimple_rank(); ++i) in_cone &= (*co)[i] >= 0;
    if (in_cone) continue;
    ++r.checked;
    const LaurentPoly d = ws.tg.trace_theta_direct(x);
    if (!d.is_zero()) r.fail({{"x", vec_json(ws.rd, x)}, {"direct", ws.labels.to_string(d)}});
  }
  return r;
}

/// tau(theta_{-kappa}) > 0 at q(s) = 2 for every s.
inline SuiteResult suite_positivity(const Workspace& ws, const SuiteOptions& o) {
  SuiteResult r{"positivity"};
  for (const auto& x : ws.tg.negative_cone(o.height)) {
    ++r.checked;
    const LaurentPoly p = ws.tg.trace_theta_partition(x);
    if (sign_at_q2(p) <= 0) r.fail({{"x", vec_json(ws.rd, x)}, {"trace", ws.labels.to_string(p)}});
  }
  return r;
}

inline SuiteResult suite_intertwiner_forms(const Workspace& ws, const SuiteOptions&) {
  SuiteResult r{"intertwiner-forms"};
  for (std::size_t i = 0; i < ws.rd.semisimple_rank(); ++i) {
    ++r.checked;
    if (ws.I.bform_left(i) != ws.I.bform(i)) r.fail({{"simple", i}});
  }
  return r;
}

/// R_s^2 = D_s.
inline SuiteResult suite_intertwiner_square(const Workspace& ws, const SuiteOptions&) {
  SuiteResult r{"intertwiner-square"};
  for (std::size_t i = 0; i < ws.rd.semisimple_rank(); ++i) {
    ++r.checked;
    const auto R = ws.I.bform(i);
    if (ws.B.mul(R, R) != Bernstein::from_group(ws.I.D_simple(i))) r.fail({{"simple", i}});
  }
  return r;
}

inline SuiteResult suite_braid_intertwiner(const Workspace& ws, const SuiteOptions&) {
  SuiteResult r{"braid-intertwiner"};
  const std::size_t n = ws.rd.semisimple_rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t m = braid_order(ws.rd, i, j);
      ++r.checked;
      if (ws.I.word(alternating(i, j, m)) != ws.I.word(alternating(j, i, m))) r.fail({{"i", i}, {"j", j}});
    }
  return r;
}

/// The three forms of theta_x^+ and the orthogonality of the theta_x^+.
inline SuiteResult suite_theta_plus(const Workspace& ws, const SuiteOptions& o) {
  SuiteResult r{"theta-plus"};
  const auto dom = dominant_up_to(ws.rd, std::min<std::int64_t>(o.height, 4));
  for (const auto& x : dom) {
    ++r.checked;
    auto f = ws.S.theta_plus_forms(x);
    if (f[0] != f[1] || f[0] != f[2]) r.fail({{"x", vec_json(ws.rd, x)}, {"check", "three forms"}});
  }
  std::map<Vec, HeckeElem> cleared;
  for (const auto& x : dom) cleared.emplace(x, ws.S.theta_plus_cleared(x));
  for (const auto& x : dom)
    for (const auto& y : dom) {
      ++r.checked;
      if (ws.H.inner(cleared.at(x), cleared.at(y)) != ws.S.inner_plus_expected_cleared(x, y))
        r.fail({{"x", vec_json(ws.rd, x)}, {"y", vec_json(ws.rd, y)}, {"check", "inner product"}});
    }
  return r;
}

/// Direct spherical values on theta_x^+ against the c-function sum.
template <class F>
SuiteResult suite_macdonald(const Workspace& ws, const SuiteOptions& o, const LabelValues<F>& lv, double tol) {
  SuiteResult r{"macdonald"};
  PrincipalSeries<F> ps(ws.I, ws.tg, lv);
  std::mt19937_64 rng(o.seed);
  const auto dom = dominant_up_to(ws.rd, 2);
  for (std::size_t k = 0; k < o.samples; ++k) {
    const auto t = random_generic_point(ps, ws, rng);
    for (const auto& x : dom) {
      ++r.checked;
      const F direct = ps.spherical(ps.theta_plus_hat(x, t)), formula = ps.macdonald(t, x);
      const double diff = FieldTraits<F>::magnitude(direct - formula);
      if (FieldTraits<F>::exact ? direct != formula : !(diff <= tol))
        r.fail({{"t", t.str()}, {"x", vec_json(ws.rd, x)}, {"direct", FieldTraits<F>::str(direct)},
                {"formula", FieldTraits<F>::str(formula)}});
    }
  }
  return r;
}

using SuiteFn = std::function<SuiteResult(const Workspace&, const SuiteOptions&)>;

/// The symbolic suites by name; macdonald needs numeric labels and is run separately.
inline const std::map<std::string, SuiteFn>& symbolic_suites() {
  static const std::map<std::string, SuiteFn> suites{
      {"quadratic", suite_quadratic},
      {"braid", suite_braid},
      {"orthogonality", suite_orthogonality},
      {"lusztig", suite_lusztig},
      {"star-theta", suite_star_theta},
      {"center", suite_center},
      {"partition-direct", suite_partition_direct},
      {"support", suite_support},
      {"positivity", suite_positivity},
      {"intertwiner-forms", suite_intertwiner_forms},
      {"intertwiner-square", suite_intertwiner_square},
      {"braid-intertwiner", suite_braid_intertwiner},
      {"theta-plus", suite_theta_plus},
  };
  return suites;
}

}  // namespace hecke

#endif  // HECKE_SUITES_HPP
