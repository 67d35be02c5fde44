#ifndef HECKE_LABELS_HPP
#define HECKE_LABELS_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "hecke/core.hpp"
#include "hecke/laurent.hpp"
#include "hecke/numeric.hpp"
#include "hecke/rootdata.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

/// Labels q on the simple affine reflections, one formal variable v_c per
/// W-conjugacy class with q = v_c^2, plus the derived affine-root labels.
/// All label quantities are monomials, stored as exponent vectors.
class LabelSet {
 public:
  /// names: optional map from fundamental-node index (as a decimal string)
  /// to a variable name. Nodes in one conjugacy class must agree.
  explicit LabelSet(const AffineWeylGroup& aff, const std::map<std::string, std::string>& names = {})
      : aff_(&aff) {
    build_classes();
    assign_names(names);
    build_swap();
    build_root_labels();
  }

  const AffineWeylGroup& affine() const { return *aff_; }
  std::size_t num_classes() const { return class_min_node_.size(); }
  std::size_t num_vars() const { return var_names_.size(); }
  const std::vector<std::string>& variable_names() const { return var_names_; }
  std::size_t class_of_node(std::size_t node) const { return node_class_[node]; }
  std::size_t var_of_class(std::size_t c) const { return class_var_[c]; }
  /// Node whose q_a is q(s_b) for the partner b, if any (the C_n^aff swap).
  std::optional<std::size_t> swap_partner(std::size_t node) const {
    if (swap_[node] == node) return std::nullopt;
    return swap_[node];
  }

  /// q(s_a) for a fundamental node.
  const Exponents& q_node(std::size_t node) const { return q_node_[node]; }
  /// q_a for the fundamental node, after the swap rule.
  const Exponents& q_affine_node(std::size_t node) const { return q_node_[swap_[node]]; }

  /// q_a for an arbitrary affine root.
  Exponents q_affine(const AffineRoot& a) const {
    std::size_t parity = static_cast<std::size_t>(((a.k % 2) + 2) % 2);
    return q_affine_node(node_for_[a.r][parity]);
  }
  /// q_{alpha^vee} = q_{(alpha^vee, 0)} for the R0 root with index r.
  Exponents q_coroot(std::size_t r) const { return q_affine({r, 0}); }
  /// q_{alpha^vee/2} = q_{(alpha^vee,1)} / q_{(alpha^vee,0)}; trivial unless alpha^vee in 2Y.
  Exponents q_half(std::size_t r) const { return q_affine({r, 1}) - q_affine({r, 0}); }
  /// q_{beta^vee} for beta in R_nr (by index into DerivedRoots::nr).
  Exponents q_nr(std::size_t nr_index) const {
    const auto& b = aff_->datum().derived().nr[nr_index];
    return b.doubled ? q_half(b.base) : q_coroot(b.base);
  }
  /// q_{beta^vee/2} for beta in R_nr; trivial for doubled roots.
  Exponents q_nr_half(std::size_t nr_index) const {
    const auto& b = aff_->datum().derived().nr[nr_index];
    return b.doubled ? Exponents{} : q_half(b.base);
  }
  /// q-tilde for beta in R1: q_{beta^vee} q_{2 beta^vee}, equal to q(s_beta).
  Exponents q_tilde(std::size_t nr_index) const {
    const auto& b = aff_->datum().derived().nr[nr_index];
    return b.doubled ? q_affine({b.base, 1}) : q_coroot(b.base) + q_half(b.base);
  }

  static LaurentPoly mono(const Exponents& e) { return LaurentPoly::monomial(e); }
  /// Square root of a monomial with even exponents.
  static Exponents half(const Exponents& e) {
    Exponents h;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (e[i] % 2 != 0) throw std::logic_error("monomial is not a perfect square");
      h[i] = e[i] / 2;
    }
    return h;
  }

  /// q(g) as the product of q(s) over the factorization of g.
  Exponents q_of_w(const AffineWeylElem& g) const {
    Exponents e{};
    for (auto node : aff_->factor_extended(g).word) e = e + q_node_[node];
    return e;
  }
  /// q(g) as the product of q_{a+1} over R_+ meet g^{-1} R_-.
  Exponents q_by_inversions(const AffineWeylElem& g) const {
    Exponents e{};
    for (const auto& a : aff_->inversions(g)) e = e + q_affine({a.r, a.k + 1});
    return e;
  }
  /// q(w) for w in W0 as the product of q_{beta^vee} over positive R_nr
  /// roots made negative by w.
  Exponents q_finite_nr(std::uint32_t w) const {
    const auto& rd = aff_->datum();
    const auto& d = rd.derived();
    Exponents e{};
    for (std::size_t k : d.nr_pos) {
      const auto& b = d.nr[k];
      if (!rd.is_positive(aff_->finite().root_image(w, b.base))) e = e + q_nr(k);
    }
    return e;
  }
  Exponents q_finite(std::uint32_t w) const { return finite_q_[w]; }

  /// Haar modulus delta(x) = prod over R_nr,+ of q_{beta^vee}^{(x, beta^vee)}.
  Exponents delta(const Vec& x) const {
    const auto& rd = aff_->datum();
    const auto& d = rd.derived();
    Exponents e{};
    for (std::size_t k : d.nr_pos) e = e + scaled(q_nr(k), static_cast<std::int32_t>(rd.pair(x, d.nr[k].coroot)));
    return e;
  }
  Exponents delta_sqrt(const Vec& x) const { return half(delta(x)); }

  /// Sum of q(w) over a subset of W0.
  LaurentPoly poincare(const std::vector<std::uint32_t>& subset) const {
    std::vector<LaurentPoly::Term> terms;
    for (auto w : subset) terms.push_back({finite_q_[w], Rational(1)});
    return LaurentPoly::from_terms(std::move(terms));
  }
  LaurentPoly poincare() const {
    std::vector<std::uint32_t> all(aff_->finite().order());
    std::iota(all.begin(), all.end(), 0u);
    return poincare(all);
  }

  std::string to_string(const LaurentPoly& p) const { return p.to_string(var_names_); }
  nlohmann::json to_json(const LaurentPoly& p) const { return p.to_json(var_names_); }

  nlohmann::json describe() const {
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t i = 0; i < aff_->nodes().size(); ++i) {
      const auto& nd = aff_->nodes()[i];
      nodes.push_back({{"node", i},
                       {"coroot", aff_->datum().coroot(nd.a.r).to_vector(aff_->datum().rank())},
                       {"level", nd.a.k},
                       {"q_s", to_string(mono(q_node_[i]))},
                       {"q_a", to_string(mono(q_affine_node(i)))}});
    }
    return {{"variables", var_names_}, {"nodes", nodes}};
  }

 private:
  const AffineWeylGroup* aff_;
  std::vector<std::size_t> node_class_, class_min_node_, class_var_, swap_;
  std::vector<std::string> var_names_;
  std::vector<Exponents> q_node_, finite_q_;
  std::vector<std::array<std::size_t, 2>> node_for_;

  void build_classes() {
    const auto& rd = aff_->datum();
    const auto& nodes = aff_->nodes();
    const std::size_t n = nodes.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto ri = nodes[i].a.r, rj = nodes[j].a.r;
        if (rd.pair(rd.root(ri), rd.coroot(rj)) * rd.pair(rd.root(rj), rd.coroot(ri)) == 1) unite(i, j);
      }
    for (const auto& om : aff_->omega_generators())
      for (std::size_t i = 0; i < n; ++i) unite(i, aff_->omega_permute(om, i));
    node_class_.assign(n, 0);
    std::map<std::size_t, std::size_t> root_to_class;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = find(i);
      auto it = root_to_class.find(r);
      if (it == root_to_class.end()) {
        it = root_to_class.emplace(r, class_min_node_.size()).first;
        class_min_node_.push_back(i);
      }
      node_class_[i] = it->second;
    }
  }

  void assign_names(const std::map<std::string, std::string>& names) {
    const std::size_t n = aff_->nodes().size();
    std::vector<std::string> class_name(class_min_node_.size());
    for (const auto& [key, name] : names) {
      std::size_t node;
      try {
        std::size_t pos = 0;
        node = std::stoul(key, &pos);
        if (pos != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw LabelError("label key '" + key + "' is not a fundamental-node index");
      }
      if (node >= n) throw LabelError("label key '" + key + "' exceeds the number of fundamental nodes");
      if (name.empty()) throw LabelError("empty label name");
      auto& cn = class_name[node_class_[node]];
      if (!cn.empty() && cn != name)
        throw LabelError("conjugate reflections given different labels: '" + cn + "' and '" + name + "'");
      cn = name;
    }
    for (std::size_t c = 0; c < class_name.size(); ++c)
      if (class_name[c].empty())
        class_name[c] = class_min_node_.size() == 1 ? "v" : "v" + std::to_string(class_min_node_[c]);
    class_var_.assign(class_name.size(), 0);
    for (std::size_t c = 0; c < class_name.size(); ++c) {
      auto it = std::find(var_names_.begin(), var_names_.end(), class_name[c]);
      if (it == var_names_.end()) {
        if (var_names_.size() >= kMaxVars) throw LabelError("too many label variables");
        class_var_[c] = var_names_.size();
        var_names_.push_back(class_name[c]);
      } else {
        class_var_[c] = static_cast<std::size_t>(it - var_names_.begin());
      }
    }
    q_node_.assign(n, Exponents{});
    for (std::size_t i = 0; i < n; ++i) q_node_[i][class_var_[node_class_[i]]] = 2;
  }

  bool coroot_in_2y(std::size_t r) const {
    const auto& y = aff_->datum().coroot(r);
    for (std::size_t i = 0; i < kMaxRank; ++i)
      if (y[i] % 2 != 0) return false;
    return true;
  }

  void build_swap() {
    const auto& nodes = aff_->nodes();
    swap_.resize(nodes.size());
    std::iota(swap_.begin(), swap_.end(), 0);
    for (std::size_t c = 0; c < aff_->num_components(); ++c) {
      std::vector<std::size_t> even;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].component == c && coroot_in_2y(nodes[i].a.r)) even.push_back(i);
      if (even.size() <= 1) continue;
      bool all_same = true;
      for (auto i : even) all_same &= q_node_[i] == q_node_[even[0]];
      if (even.size() == 2 && nodes[even[0]].a.k != nodes[even[1]].a.k) {
        swap_[even[0]] = even[1];
        swap_[even[1]] = even[0];
      } else if (!all_same) {
        throw LabelError("labels on nodes with coroots in 2Y are ambiguous for this datum");
      }
    }
  }

  void build_root_labels() {
    const auto& rd = aff_->datum();
    const auto& fw = aff_->finite();
    const auto& nodes = aff_->nodes();
    constexpr auto unset = static_cast<std::size_t>(-1);
    node_for_.assign(rd.num_roots(), {unset, unset});
    for (std::size_t b = 0; b < nodes.size(); ++b) {
      const bool even = coroot_in_2y(nodes[b].a.r);
      const std::size_t parity = static_cast<std::size_t>(((nodes[b].a.k % 2) + 2) % 2);
      for (std::uint32_t w = 0; w < fw.order(); ++w) {
        std::size_t r = fw.root_image(w, nodes[b].a.r);
        for (std::size_t p = 0; p < 2; ++p) {
          if (even && p != parity) continue;
          if (node_for_[r][p] == unset) node_for_[r][p] = b;
        }
      }
    }
    for (const auto& e : node_for_)
      if (e[0] == unset || e[1] == unset) throw std::logic_error("affine root not conjugate to F");
    finite_q_.resize(fw.order());
    for (std::uint32_t w = 0; w < fw.order(); ++w) {
      Exponents e{};
      for (std::size_t r : rd.positive_roots())
        if (!rd.is_positive(fw.root_image(w, r))) e = e + q_affine({r, 1});
      finite_q_[w] = e;
    }
  }
};

/// Numeric values for the label variables: v_c with v_c^2 = q_c.
template <class F>
struct LabelValues {
  std::vector<F> v;

  /// Uniform q for every variable.
  static LabelValues uniform(const LabelSet& ls, const F& v_value) {
    return {std::vector<F>(ls.num_vars(), v_value)};
  }
  F eval(const Exponents& e) const {
    F r = F(1);
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::int32_t k = 0; k < e[i]; ++k) r *= v[i];
      for (std::int32_t k = 0; k > e[i]; --k) r /= v[i];
    }
    return r;
  }
  F eval(const LaurentPoly& p) const { return eval_poly(p, v); }
};

/// Exact square root of a non-negative rational; throws if it is not a
/// perfect square.
inline Rational rational_sqrt(const Rational& q) {
  if (q < 0) throw LabelError("negative label value");
  mpz_class n = q.get_num(), d = q.get_den();
  mpz_class rn = sqrt(n), rd = sqrt(d);
  if (rn * rn != n || rd * rd != d)
    throw LabelError("label value " + q.get_str() + " has no rational square root; use complex mode");
  return Rational(rn, rd);
}

}  // namespace hecke

#endif  // HECKE_LABELS_HPP
