#ifndef HECKE_ROOTDATA_HPP
#define HECKE_ROOTDATA_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hecke/core.hpp"

namespace hecke {

namespace detail {

/// Solves A c = x for c over Q, where the columns of A are linearly
/// independent. Precomputes the left inverse (A^T A)^{-1} A^T once.
class LatticeSolver {
 public:
  LatticeSolver() = default;
  LatticeSolver(const std::vector<Vec>& columns, std::size_t rank) : n_(rank), r_(columns.size()) {
    cols_ = columns;
    // Gram matrix G = A^T A and its inverse by Gauss-Jordan.
    std::vector<std::vector<Rational>> g(r_, std::vector<Rational>(2 * r_));
    for (std::size_t i = 0; i < r_; ++i) {
      for (std::size_t j = 0; j < r_; ++j) g[i][j] = Rational(static_cast<long>(dot(cols_[i], cols_[j])));
      g[i][r_ + i] = 1;
    }
    for (std::size_t c = 0; c < r_; ++c) {
      std::size_t p = c;
      while (p < r_ && g[p][c] == 0) ++p;
      if (p == r_) throw DatumError("simple vectors are linearly dependent");
      std::swap(g[p], g[c]);
      Rational inv = 1 / g[c][c];
      for (auto& v : g[c]) v *= inv;
      for (std::size_t i = 0; i < r_; ++i) {
        if (i == c || g[i][c] == 0) continue;
        Rational f = g[i][c];
        for (std::size_t j = 0; j < 2 * r_; ++j) g[i][j] -= f * g[c][j];
      }
    }
    left_inv_.assign(r_, std::vector<Rational>(n_));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < n_; ++k) {
        Rational s = 0;
        for (std::size_t j = 0; j < r_; ++j) s += g[i][r_ + j] * cols_[j][k];
        left_inv_[i][k] = s;
      }
  }

  /// Integral coordinates of x in the column basis, if x lies in their span
  /// over Z.
  std::optional<Vec> integral_coordinates(const Vec& x) const {
    Vec c;
    for (std::size_t i = 0; i < r_; ++i) {
      Rational s = 0;
      for (std::size_t k = 0; k < n_; ++k)
        if (x[k] != 0) s += left_inv_[i][k] * x[k];
      if (s.get_den() != 1) return std::nullopt;
      c[i] = static_cast<std::int32_t>(s.get_num().get_si());
    }
    Vec back;
    for (std::size_t i = 0; i < r_; ++i) back += c[i] * cols_[i];
    if (back != x) return std::nullopt;
    return c;
  }

 private:
  std::size_t n_ = 0, r_ = 0;
  std::vector<Vec> cols_;
  std::vector<std::vector<Rational>> left_inv_;
};

inline Rational rational_determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

inline std::size_t matrix_rank(const std::vector<Vec>& rows, std::size_t n) {
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) {
    std::vector<Rational> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = r[j];
    m.push_back(row);
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[rank][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// A root of the possibly non-reduced system R_nr.
struct NrRoot {
  Vec root;
  Vec coroot;
  std::size_t base;  ///< index of the R0 root it comes from
  bool doubled;      ///< true for 2*alpha with alpha^vee in 2Y
  bool positive;
};

/// Combinatorics derived from the labelled datum: R_nr, R1 and rho data.
struct DerivedRoots {
  std::vector<NrRoot> nr;              ///< all of R_nr
  std::vector<std::size_t> nr_pos;     ///< indices into nr of R_nr,+
  std::vector<std::size_t> r1_pos;     ///< indices into nr of R1,+
  std::vector<std::size_t> doubled_of; ///< R0 index -> nr index of 2*alpha, or npos
  Vec two_rho;
  Vec two_rho_check;
};

/// A reduced root datum with X = Y = Z^rank and a perfect pairing.
class RootDatum {
 public:
  static constexpr std::size_t kMaxRoots = 1000;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  RootDatum(std::string name, std::size_t rank, IntMatrix pairing, std::vector<Vec> simple_roots,
            std::vector<Vec> simple_coroots, std::map<std::string, std::string> labels_hint = {})
      : name_(std::move(name)),
        rank_(rank),
        pairing_(pairing),
        simple_roots_(std::move(simple_roots)),
        simple_coroots_(std::move(simple_coroots)),
        labels_hint_(std::move(labels_hint)) {
    validate_fundamental();
    generate();
    validate_axioms();
    derive();
  }

  const std::string& name() const { return name_; }
  std::size_t rank() const { return rank_; }
  std::size_t semisimple_rank() const { return simple_roots_.size(); }
  const IntMatrix& pairing_matrix() const { return pairing_; }
  const std::vector<Vec>& simple_roots() const { return simple_roots_; }
  const std::vector<Vec>& simple_coroots() const { return simple_coroots_; }
  const std::vector<Vec>& roots() const { return roots_; }
  const std::vector<Vec>& coroots() const { return coroots_; }
  const Vec& root(std::size_t i) const { return roots_[i]; }
  const Vec& coroot(std::size_t i) const { return coroots_[i]; }
  std::size_t num_roots() const { return roots_.size(); }
  bool is_positive(std::size_t i) const { return positive_[i]; }
  std::size_t negative_of(std::size_t i) const { return neg_[i]; }
  std::size_t simple_index(std::size_t i) const { return simple_idx_[i]; }
  const Vec& root_coordinates(std::size_t i) const { return coords_[i]; }
  const std::vector<std::size_t>& positive_roots() const { return pos_; }
  const DerivedRoots& derived() const { return derived_; }
  const std::map<std::string, std::string>& labels_hint() const { return labels_hint_; }

  /// (x, y) for x in X, y in Y.
  std::int64_t pair(const Vec& x, const Vec& y) const {
    if (identity_pairing_) return dot(x, y);
    std::int64_t s = 0;
    for (std::size_t i = 0; i < rank_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < rank_; ++j) s += std::int64_t{x[i]} * pairing_(i, j) * y[j];
    }
    return s;
  }

  std::size_t find_root(const Vec& a) const {
    auto it = root_index_.find(a);
    return it == root_index_.end() ? npos : it->second;
  }
  std::size_t find_coroot(const Vec& a) const {
    auto it = coroot_index_.find(a);
    return it == coroot_index_.end() ? npos : it->second;
  }

  /// s_alpha(x) = x - (x, alpha^vee) alpha for the root with index i.
  Vec reflect(std::size_t i, const Vec& x) const {
    return x - static_cast<std::int32_t>(pair(x, coroots_[i])) * roots_[i];
  }
  /// s_alpha acting on Y.
  Vec reflect_coroot(std::size_t i, const Vec& y) const {
    return y - static_cast<std::int32_t>(pair(roots_[i], y)) * coroots_[i];
  }
  /// Reflection in a root given as a vector; throws if alpha is not a root.
  Vec reflect(const Vec& alpha, const Vec& x) const {
    std::size_t i = find_root(alpha);
    if (i == npos) throw DatumError("not a root");
    return reflect(i, x);
  }

  /// Cartan integer (alpha_i, alpha_j^vee).
  std::int64_t cartan(std::size_t i, std::size_t j) const {
    return pair(simple_roots_[i], simple_coroots_[j]);
  }

  bool is_dominant(const Vec& x) const {
    for (const auto& c : simple_coroots_)
      if (pair(x, c) < 0) return false;
    return true;
  }
  bool is_strictly_dominant(const Vec& x) const {
    for (const auto& c : simple_coroots_)
      if (pair(x, c) <= 0) return false;
    return true;
  }

  /// (x, 2 rho^vee); twice the height on Q.
  std::int64_t pair_two_rho_check(const Vec& x) const { return pair(x, derived_.two_rho_check); }

  /// Coordinates in the simple roots when x lies in Q.
  std::optional<Vec> q_coordinates(const Vec& x) const { return root_solver_.integral_coordinates(x); }
  /// Coordinates in the simple coroots when y lies in Q^vee.
  std::optional<Vec> coroot_coordinates(const Vec& y) const {
    return coroot_solver_.integral_coordinates(y);
  }
  bool in_Q(const Vec& x) const { return q_coordinates(x).has_value(); }
  bool in_Q_plus(const Vec& x) const {
    auto c = q_coordinates(x);
    if (!c) return false;
    for (std::size_t i = 0; i < semisimple_rank(); ++i)
      if ((*c)[i] < 0) return false;
    return true;
  }
  bool in_Q_minus(const Vec& x) const { return in_Q_plus(-x); }
  /// Height (kappa, rho^vee) of kappa in Q.
  std::int64_t height(const Vec& kappa) const { return pair_two_rho_check(kappa) / 2; }

  /// y >= y' in the dominance order on Y: y - y' in Z_{>=0} R0+^vee.
  bool coroot_dominates(const Vec& y, const Vec& y2) const {
    auto c = coroot_solver_.integral_coordinates(y - y2);
    if (!c) return false;
    for (std::size_t i = 0; i < semisimple_rank(); ++i)
      if ((*c)[i] < 0) return false;
    return true;
  }

  /// x = y - z with y, z dominant and z the least multiple of 2 rho that works.
  std::pair<Vec, Vec> dominant_decomposition(const Vec& x) const {
    std::int64_t n = 0;
    for (const auto& c : simple_coroots_) {
      std::int64_t p = pair(x, c);
      if (p < 0) n = std::max(n, (-p + 1) / 2);
    }
    Vec z = static_cast<std::int32_t>(n) * derived_.two_rho;
    return {x + z, z};
  }

  /// The pairs (simple index, Cartan product) with odd Coxeter bond m_ij
  /// are detected through (a_i, a_j^v)(a_j, a_i^v) = 1.
  bool odd_bond(std::size_t i, std::size_t j) const { return cartan(i, j) * cartan(j, i) == 1; }

  nlohmann::json to_json() const {
    auto vecs = [&](const std::vector<Vec>& v) {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& x : v) a.push_back(x.to_vector(rank_));
      return a;
    };
    nlohmann::json p = nlohmann::json::array();
    for (std::size_t i = 0; i < rank_; ++i) {
      std::vector<int> row;
      for (std::size_t j = 0; j < rank_; ++j) row.push_back(pairing_(i, j));
      p.push_back(row);
    }
    nlohmann::json j = {{"name", name_},
                        {"rank", rank_},
                        {"pairing", p},
                        {"simple_roots", vecs(simple_roots_)},
                        {"simple_coroots", vecs(simple_coroots_)}};
    if (!labels_hint_.empty()) j["labels"] = labels_hint_;
    return j;
  }

  static RootDatum from_json(const nlohmann::json& j, const std::string& name = "custom") {
    try {
      std::size_t rank = j.at("rank").get<std::size_t>();
      if (rank == 0 || rank > kMaxRank) throw DatumError("rank must be in 1.." + std::to_string(kMaxRank));
      IntMatrix pairing;
      if (j.contains("pairing")) {
        const auto& p = j.at("pairing");
        if (p.size() != rank) throw DatumError("pairing must be rank x rank");
        for (std::size_t i = 0; i < rank; ++i) {
          if (p[i].size() != rank) throw DatumError("pairing must be rank x rank");
          for (std::size_t k = 0; k < rank; ++k) pairing(i, k) = p[i][k].get<int>();
        }
      } else {
        pairing = IntMatrix::identity(rank);
      }
      auto read_vecs = [&](const char* key) {
        std::vector<Vec> out;
        for (const auto& v : j.at(key)) {
          if (v.size() != rank) throw DatumError(std::string(key) + ": vector of wrong length");
          out.push_back(Vec::from(v.get<std::vector<long>>()));
        }
        return out;
      };
      std::map<std::string, std::string> labels;
      if (j.contains("labels"))
        for (const auto& [k, v] : j.at("labels").items()) labels[k] = v.get<std::string>();
      return RootDatum(j.value("name", name), rank, pairing, read_vecs("simple_roots"),
                       read_vecs("simple_coroots"), std::move(labels));
    } catch (const nlohmann::json::exception& e) {
      throw DatumError(std::string("malformed root datum JSON: ") + e.what());
    }
  }

 private:
  std::string name_;
  std::size_t rank_;
  IntMatrix pairing_;
  bool identity_pairing_ = false;
  std::vector<Vec> simple_roots_, simple_coroots_;
  std::map<std::string, std::string> labels_hint_;

  std::vector<Vec> roots_, coroots_, coords_;
  std::vector<bool> positive_;
  std::vector<std::size_t> neg_, simple_idx_, pos_;
  std::unordered_map<Vec, std::size_t, VecHash> root_index_, coroot_index_;
  detail::LatticeSolver root_solver_, coroot_solver_;
  DerivedRoots derived_;

  void validate_fundamental() {
    if (rank_ == 0 || rank_ > kMaxRank) throw DatumError("rank out of range");
    if (simple_roots_.size() != simple_coroots_.size())
      throw DatumError("simple roots and coroots differ in number");
    if (simple_roots_.size() > rank_) throw DatumError("more simple roots than the rank");
    for (const auto* list : {&simple_roots_, &simple_coroots_})
      for (const auto& v : *list)
        for (std::size_t i = rank_; i < kMaxRank; ++i)
          if (v[i] != 0) throw DatumError("vector exceeds rank");
    identity_pairing_ = pairing_ == IntMatrix::identity(rank_);
    std::vector<std::vector<Rational>> p(rank_, std::vector<Rational>(rank_));
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) p[i][j] = pairing_(i, j);
    Rational det = detail::rational_determinant(p);
    if (det != 1 && det != -1) throw DatumError("pairing is not perfect (determinant must be +-1)");
    const std::size_t r = simple_roots_.size();
    if (detail::matrix_rank(simple_roots_, rank_) != r)
      throw DatumError("simple roots are linearly dependent");
    if (detail::matrix_rank(simple_coroots_, rank_) != r)
      throw DatumError("simple coroots are linearly dependent");
    for (std::size_t i = 0; i < r; ++i) {
      if (cartan(i, i) != 2) throw DatumError("(alpha, alpha^vee) != 2 for a simple root");
      for (std::size_t j = 0; j < r; ++j)
        if (i != j && (cartan(i, j) > 0 || (cartan(i, j) == 0) != (cartan(j, i) == 0)))
          throw DatumError("simple data do not form a Cartan matrix");
    }
    root_solver_ = detail::LatticeSolver(simple_roots_, rank_);
    coroot_solver_ = detail::LatticeSolver(simple_coroots_, rank_);
  }

  void add_root(const Vec& a, const Vec& c) {
    root_index_.emplace(a, roots_.size());
    coroot_index_.emplace(c, coroots_.size());
    roots_.push_back(a);
    coroots_.push_back(c);
  }

  void generate() {
    const std::size_t r = simple_roots_.size();
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < r; ++i) {
      if (root_index_.count(simple_roots_[i])) throw DatumError("repeated simple root");
      add_root(simple_roots_[i], simple_coroots_[i]);
      queue.push_back(i);
    }
    while (!queue.empty()) {
      std::size_t k = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < r; ++i) {
        Vec a = roots_[k] - static_cast<std::int32_t>(pair(roots_[k], simple_coroots_[i])) * simple_roots_[i];
        Vec c = coroots_[k] - static_cast<std::int32_t>(pair(simple_roots_[i], coroots_[k])) * simple_coroots_[i];
        auto it = root_index_.find(a);
        if (it != root_index_.end()) {
          if (coroots_[it->second] != c) throw DatumError("root/coroot bijection is not W-equivariant");
          continue;
        }
        if (coroot_index_.count(c)) throw DatumError("root/coroot bijection is not W-equivariant");
        if (roots_.size() >= kMaxRoots)
          throw DatumError("root closure exceeded " + std::to_string(kMaxRoots) +
                           " roots (non-crystallographic or infinite system)");
        add_root(a, c);
        queue.push_back(roots_.size() - 1);
      }
    }
  }

  void validate_axioms() {
    const std::size_t n = roots_.size();
    coords_.resize(n);
    positive_.resize(n);
    neg_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (pair(roots_[k], coroots_[k]) != 2) throw DatumError("(alpha, alpha^vee) != 2");
      auto c = root_solver_.integral_coordinates(roots_[k]);
      if (!c) throw DatumError("root is not an integral combination of simple roots");
      bool any_pos = false, any_neg = false;
      for (std::size_t i = 0; i < simple_roots_.size(); ++i) {
        any_pos |= (*c)[i] > 0;
        any_neg |= (*c)[i] < 0;
      }
      if (any_pos == any_neg) throw DatumError("root coordinates are not sign-consistent");
      coords_[k] = *c;
      positive_[k] = any_pos;
      std::size_t m = find_root(-roots_[k]);
      if (m == npos || coroots_[m] != -coroots_[k]) throw DatumError("R0 is not symmetric");
      neg_[k] = m;
      if (find_root(2 * roots_[k]) != npos) throw DatumError("2 alpha is a root: datum is not reduced");
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t m = find_root(reflect(k, roots_[j]));
        if (m == npos) throw DatumError("R0 is not closed under reflections");
        if (coroots_[m] != reflect_coroot(k, coroots_[j]))
          throw DatumError("R0^vee is not closed under reflections");
      }
    simple_idx_.clear();
    for (const auto& a : simple_roots_) simple_idx_.push_back(find_root(a));
    pos_.clear();
    for (std::size_t k = 0; k < n; ++k)
      if (positive_[k]) pos_.push_back(k);
  }

  void derive() {
    DerivedRoots d;
    d.doubled_of.assign(roots_.size(), npos);
    for (std::size_t k = 0; k < roots_.size(); ++k) d.nr.push_back({roots_[k], coroots_[k], k, false, positive_[k]});
    for (std::size_t k = 0; k < roots_.size(); ++k) {
      bool in_2y = true;
      for (std::size_t i = 0; i < rank_; ++i) in_2y &= coroots_[k][i] % 2 == 0;
      if (!in_2y) continue;
      Vec half;
      for (std::size_t i = 0; i < rank_; ++i) half[i] = coroots_[k][i] / 2;
      d.doubled_of[k] = d.nr.size();
      d.nr.push_back({2 * roots_[k], half, k, true, positive_[k]});
    }
    for (std::size_t k = 0; k < d.nr.size(); ++k) {
      if (!d.nr[k].positive) continue;
      d.nr_pos.push_back(k);
      bool has_double = !d.nr[k].doubled && d.doubled_of[d.nr[k].base] != npos;
      if (!has_double) d.r1_pos.push_back(k);
    }
    for (std::size_t k : pos_) {
      d.two_rho += roots_[k];
      d.two_rho_check += coroots_[k];
    }
    derived_ = std::move(d);
  }
};

/// Presets: weight-lattice coordinates for the rank 1 and 2 types, standard
/// coordinates for BnCn(n) and GLn(n).
inline RootDatum build_preset(const std::string& name) {
  auto mk = [&](std::size_t rank, std::vector<Vec> a, std::vector<Vec> c) {
    return RootDatum(name, rank, IntMatrix::identity(rank), std::move(a), std::move(c));
  };
  if (name == "A1-weight") return mk(1, {{2}}, {{1}});
  if (name == "A1-root") return mk(1, {{1}}, {{2}});
  if (name == "A2") return mk(2, {{2, -1}, {-1, 2}}, {{1, 0}, {0, 1}});
  if (name == "B2") return mk(2, {{2, -2}, {-1, 2}}, {{1, 0}, {0, 1}});
  if (name == "C2") return mk(2, {{2, -1}, {-2, 2}}, {{1, 0}, {0, 1}});
  if (name == "G2") return mk(2, {{2, -1}, {-3, 2}}, {{1, 0}, {0, 1}});
  static const std::regex family(R"((BnCn|GLn)\(?([0-9]+)\)?)");
  std::smatch m;
  if (std::regex_match(name, m, family)) {
    const std::size_t n = std::stoul(m[2]);
    if (n < 1 || n > kMaxRank) throw DatumError("preset rank out of range: " + name);
    std::vector<Vec> a, c;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      Vec v = Vec::unit(i) - Vec::unit(i + 1);
      a.push_back(v);
      c.push_back(v);
    }
    if (m[1] == "BnCn") {
      a.push_back(Vec::unit(n - 1));
      c.push_back(2 * Vec::unit(n - 1));
    }
    return RootDatum(m[1].str() + "(" + std::to_string(n) + ")", n, IntMatrix::identity(n), a, c);
  }
  throw DatumError("unknown preset: " + name);
}

inline std::vector<std::string> preset_names() {
  return {"A1-weight", "A1-root", "A2", "B2", "C2", "G2", "BnCn(n)", "GLn(n)"};
}

}  // namespace hecke

#endif  // HECKE_ROOTDATA_HPP
