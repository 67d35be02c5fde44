#ifndef HECKE_WEYL_HPP
#define HECKE_WEYL_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hecke/core.hpp"
#include "hecke/rootdata.hpp"

namespace hecke {

/// The finite Weyl group W0, enumerated once. Elements are indices; index 0
/// is the identity. Each element is determined by its image of 2 rho.
class FiniteWeylGroup {
 public:
  static constexpr std::size_t kMaxOrder = 100000;
  using Elem = std::uint32_t;

  explicit FiniteWeylGroup(const RootDatum& rd) : rd_(&rd) { enumerate(); }

  const RootDatum& datum() const { return *rd_; }
  std::size_t order() const { return mx_.size(); }
  static constexpr Elem identity() { return 0; }
  Elem longest() const { return w0_; }

  const IntMatrix& matrix_x(Elem w) const { return mx_[w]; }
  const IntMatrix& matrix_y(Elem w) const { return my_[w]; }
  Vec act(Elem w, const Vec& x) const { return mx_[w].apply(x, rd_->rank()); }
  Vec act_coroot(Elem w, const Vec& y) const { return my_[w].apply(y, rd_->rank()); }
  /// Index of w(alpha) for the root with index r.
  std::size_t root_image(Elem w, std::size_t r) const { return perm_[w][r]; }

  std::size_t length(Elem w) const { return len_[w]; }
  Elem inverse(Elem w) const { return inv_[w]; }
  Elem multiply(Elem a, Elem b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order() + b];
    return lookup(act(a, key_[b]));
  }
  Elem simple(std::size_t i) const { return simple_[i]; }
  Elem left_simple(std::size_t i, Elem w) const { return lsimple_[i][w]; }
  Elem right_simple(Elem w, std::size_t i) const { return rsimple_[w][i]; }
  /// The reflection s_alpha for the root with index r.
  Elem reflection(std::size_t r) const { return refl_[r]; }
  /// Canonical reduced word: repeatedly strip the lowest left descent.
  const std::vector<std::uint8_t>& word(Elem w) const { return word_[w]; }
  bool is_left_descent(Elem w, std::size_t i) const {
    return !rd_->is_positive(perm_[inv_[w]][rd_->simple_index(i)]);
  }
  bool is_right_descent(Elem w, std::size_t i) const {
    return !rd_->is_positive(perm_[w][rd_->simple_index(i)]);
  }
  Elem from_word(const std::vector<std::size_t>& word) const {
    Elem w = identity();
    for (auto i : word) w = rsimple_[w][i];
    return w;
  }
  /// Element with the given image of 2 rho.
  Elem lookup(const Vec& image_of_two_rho) const {
    auto it = index_.find(image_of_two_rho);
    if (it == index_.end()) throw std::logic_error("vector is not a W0-image of 2 rho");
    return it->second;
  }
  /// Elements sorted by (length, index).
  const std::vector<Elem>& by_length() const { return by_length_; }

  struct CosetData {
    std::vector<Elem> stabilizer;       ///< W_x
    std::vector<Elem> representatives;  ///< W^x, shortest left coset representatives
    Elem longest_in_stabilizer;         ///< w_x
    Elem longest_representative;        ///< w^x with w0 = w^x w_x
  };

  CosetData coset_data(const Vec& x) const {
    if (!rd_->is_dominant(x)) throw std::invalid_argument("coset_data requires a dominant vector");
    CosetData d;
    std::vector<std::size_t> walls;
    for (std::size_t i = 0; i < rd_->semisimple_rank(); ++i)
      if (rd_->pair(x, rd_->simple_coroots()[i]) == 0) walls.push_back(i);
    d.longest_in_stabilizer = identity();
    for (Elem w : by_length_) {
      if (act(w, x) == x) {
        d.stabilizer.push_back(w);
        if (len_[w] >= len_[d.longest_in_stabilizer]) d.longest_in_stabilizer = w;
      }
      bool minimal = true;
      for (auto i : walls) minimal &= !is_right_descent(w, i);
      if (minimal) d.representatives.push_back(w);
    }
    d.longest_representative = multiply(w0_, inverse(d.longest_in_stabilizer));
    return d;
  }

 private:
  const RootDatum* rd_;
  std::vector<IntMatrix> mx_, my_;
  std::vector<Vec> key_;
  std::unordered_map<Vec, Elem, VecHash> index_;
  std::vector<std::vector<std::uint32_t>> perm_;
  std::vector<std::size_t> len_;
  std::vector<Elem> inv_, simple_, refl_, by_length_, table_;
  std::vector<std::vector<Elem>> lsimple_, rsimple_;
  std::vector<std::vector<std::uint8_t>> word_;
  Elem w0_ = 0;

  IntMatrix reflection_matrix_x(std::size_t r) const {
    const std::size_t n = rd_->rank();
    IntMatrix m;
    for (std::size_t j = 0; j < n; ++j) {
      Vec col = rd_->reflect(r, Vec::unit(j));
      for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
  }
  IntMatrix reflection_matrix_y(std::size_t r) const {
    const std::size_t n = rd_->rank();
    IntMatrix m;
    for (std::size_t j = 0; j < n; ++j) {
      Vec col = rd_->reflect_coroot(r, Vec::unit(j));
      for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
  }

  void enumerate() {
    const std::size_t n = rd_->rank();
    const std::size_t r = rd_->semisimple_rank();
    const Vec two_rho = rd_->derived().two_rho;
    std::vector<IntMatrix> sx, sy;
    for (std::size_t i = 0; i < r; ++i) {
      sx.push_back(reflection_matrix_x(rd_->simple_index(i)));
      sy.push_back(reflection_matrix_y(rd_->simple_index(i)));
    }
    mx_.push_back(IntMatrix::identity(n));
    my_.push_back(IntMatrix::identity(n));
    key_.push_back(two_rho);
    index_.emplace(two_rho, 0);
    for (std::size_t k = 0; k < mx_.size(); ++k) {
      for (std::size_t i = 0; i < r; ++i) {
        Vec kk = sx[i].apply(key_[k], n);
        if (index_.count(kk)) continue;
        if (mx_.size() >= kMaxOrder) throw GuardError("finite Weyl group exceeds enumeration cap");
        index_.emplace(kk, static_cast<Elem>(mx_.size()));
        mx_.push_back(sx[i].times(mx_[k], n));
        my_.push_back(sy[i].times(my_[k], n));
        key_.push_back(kk);
      }
    }
    const std::size_t N = mx_.size();
    perm_.assign(N, std::vector<std::uint32_t>(rd_->num_roots()));
    len_.assign(N, 0);
    for (std::size_t w = 0; w < N; ++w)
      for (std::size_t k = 0; k < rd_->num_roots(); ++k) {
        std::size_t img = rd_->find_root(mx_[w].apply(rd_->root(k), n));
        if (img == RootDatum::npos) throw std::logic_error("Weyl element does not permute roots");
        perm_[w][k] = static_cast<std::uint32_t>(img);
        if (rd_->is_positive(k) && !rd_->is_positive(img)) ++len_[w];
      }
    for (std::size_t i = 0; i < r; ++i) simple_.push_back(lookup(sx[i].apply(two_rho, n)));
    refl_.resize(rd_->num_roots());
    for (std::size_t k = 0; k < rd_->num_roots(); ++k) refl_[k] = lookup(rd_->reflect(k, two_rho));
    lsimple_.assign(r, std::vector<Elem>(N));
    rsimple_.assign(N, std::vector<Elem>(r));
    for (std::size_t w = 0; w < N; ++w)
      for (std::size_t i = 0; i < r; ++i) {
        lsimple_[i][w] = lookup(sx[i].apply(key_[w], n));
        rsimple_[w][i] = lookup(mx_[w].apply(key_[simple_[i]], n));
      }
    by_length_.resize(N);
    for (std::size_t w = 0; w < N; ++w) by_length_[w] = static_cast<Elem>(w);
    std::stable_sort(by_length_.begin(), by_length_.end(),
                     [&](Elem a, Elem b) { return len_[a] < len_[b]; });
    word_.assign(N, {});
    for (Elem w : by_length_) {
      if (w == 0) continue;
      // lowest left descent i: l(s_i w) < l(w)
      for (std::size_t i = 0; i < r; ++i) {
        Elem sw = lsimple_[i][w];
        if (len_[sw] < len_[w]) {
          word_[w] = {static_cast<std::uint8_t>(i)};
          word_[w].insert(word_[w].end(), word_[sw].begin(), word_[sw].end());
          break;
        }
      }
    }
    inv_.assign(N, 0);
    for (std::size_t w = 0; w < N; ++w) {
      Elem u = identity();
      for (auto i : word_[w]) u = lsimple_[i][u];
      inv_[w] = u;
    }
    w0_ = by_length_.back();
    if (N <= 2048) {
      table_.resize(N * N);
      for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) table_[a * N + b] = lookup(mx_[a].apply(key_[b], n));
    }
  }
};

/// w t_x, acting on X by z -> w(z + x).
struct AffineWeylElem {
  std::uint32_t w = 0;
  Vec x;
  friend bool operator==(const AffineWeylElem&, const AffineWeylElem&) = default;
  friend auto operator<=>(const AffineWeylElem&, const AffineWeylElem&) = default;
};

struct AffineWeylElemHash {
  std::size_t operator()(const AffineWeylElem& g) const noexcept {
    return hash_combine(VecHash{}(g.x), g.w);
  }
};

/// The affine root (alpha^vee, k) with alpha^vee the coroot of index r;
/// as a function on X it is z -> (z, alpha^vee) + k.
struct AffineRoot {
  std::size_t r = 0;
  std::int64_t k = 0;
  friend bool operator==(const AffineRoot&, const AffineRoot&) = default;
};

/// A fundamental affine root together with its reflection s_a = s_alpha t_{k alpha}.
struct FundamentalNode {
  AffineRoot a;
  AffineWeylElem reflection;
  bool affine = false;        ///< the node (-theta^vee, 1) of some component
  std::size_t component = 0;  ///< irreducible component of R0
};

/// The extended affine Weyl group W = W0 x| X with its fundamental set F
/// (finite simple roots first, then one affine node per component).
class AffineWeylGroup {
 public:
  using Elem = AffineWeylElem;

  AffineWeylGroup(const RootDatum& rd, const FiniteWeylGroup& w0) : rd_(&rd), w0_(&w0) { build_nodes(); }

  const RootDatum& datum() const { return *rd_; }
  const FiniteWeylGroup& finite() const { return *w0_; }
  const std::vector<FundamentalNode>& nodes() const { return nodes_; }
  std::size_t num_components() const { return components_; }

  static Elem identity() { return {}; }
  static Elem translation(const Vec& x) { return {0, x}; }
  static Elem finite_elem(std::uint32_t w) { return {w, {}}; }

  Elem multiply(const Elem& g, const Elem& h) const {
    return {w0_->multiply(g.w, h.w), w0_->act(w0_->inverse(h.w), g.x) + h.x};
  }
  Elem inverse(const Elem& g) const { return {w0_->inverse(g.w), -w0_->act(g.w, g.x)}; }
  Vec act(const Elem& g, const Vec& z) const { return w0_->act(g.w, z + g.x); }

  /// g(a) = a o g^{-1}; for g = w t_x, (alpha^vee, k) -> (w alpha^vee, k - (x, alpha^vee)).
  AffineRoot act(const Elem& g, const AffineRoot& a) const {
    return {w0_->root_image(g.w, a.r), a.k - rd_->pair(g.x, rd_->coroot(a.r))};
  }
  bool is_positive(const AffineRoot& a) const { return a.k > 0 || (a.k == 0 && rd_->is_positive(a.r)); }

  /// Length from the explicit double sum over positive roots.
  std::size_t length(const Elem& g) const {
    std::int64_t l = 0;
    for (std::size_t r : rd_->positive_roots()) {
      std::int64_t p = rd_->pair(g.x, rd_->coroot(r));
      if (rd_->is_positive(w0_->root_image(g.w, r)))
        l += std::abs(p);
      else
        l += std::abs(p + 1);
    }
    return static_cast<std::size_t>(l);
  }

  /// Length by counting positive affine roots sent to negative ones.
  std::size_t length_by_count(const Elem& g) const { return inversions(g).size(); }

  /// R_+ intersected with g^{-1} R_-.
  std::vector<AffineRoot> inversions(const Elem& g) const {
    std::vector<AffineRoot> out;
    for (std::size_t r = 0; r < rd_->num_roots(); ++r) {
      std::int64_t p = rd_->pair(g.x, rd_->coroot(r));
      // a = (alpha^vee, k) positive needs k >= 0; g(a) has level k - p.
      for (std::int64_t k = 0; k <= std::max<std::int64_t>(p, 0); ++k) {
        AffineRoot a{r, k};
        if (!is_positive(a)) continue;
        if (!is_positive(act(g, a))) out.push_back(a);
      }
    }
    return out;
  }

  bool is_right_descent(const Elem& g, std::size_t node) const {
    return !is_positive(act(g, nodes_[node].a));
  }
  bool is_left_descent(const Elem& g, std::size_t node) const {
    return !is_positive(act(inverse(g), nodes_[node].a));
  }

  /// Lowest-index fundamental affine root a with g^{-1}(a) negative.
  std::optional<std::size_t> descent(const Elem& g) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (is_left_descent(g, i)) return i;
    return std::nullopt;
  }

  /// g s_a.
  Elem right_mul_node(const Elem& g, std::size_t node) const {
    const auto& nd = nodes_[node];
    const std::size_t r = nd.a.r;
    Vec x = rd_->reflect(r, g.x) + static_cast<std::int32_t>(nd.a.k) * rd_->root(r);
    return {w0_->multiply(g.w, nd.reflection.w), x};
  }
  /// s_a g.
  Elem left_mul_node(std::size_t node, const Elem& g) const {
    const auto& nd = nodes_[node];
    Vec shift = w0_->act(w0_->inverse(g.w), static_cast<std::int32_t>(nd.a.k) * rd_->root(nd.a.r));
    return {w0_->multiply(nd.reflection.w, g.w), shift + g.x};
  }

  struct Factorization {
    Elem omega;
    std::vector<std::size_t> word;  ///< g = omega s_{word[0]} ... s_{word[k-1]}
  };

  /// Strips lowest-index right descents until a length-zero element remains.
  Factorization factor_extended(const Elem& g) const {
    Factorization f;
    Elem cur = g;
    for (;;) {
      std::size_t i = 0;
      for (; i < nodes_.size(); ++i)
        if (is_right_descent(cur, i)) break;
      if (i == nodes_.size()) break;
      f.word.push_back(i);
      cur = right_mul_node(cur, i);
    }
    std::reverse(f.word.begin(), f.word.end());
    f.omega = cur;
    return f;
  }

  Elem assemble(const Factorization& f) const {
    Elem g = f.omega;
    for (auto i : f.word) g = right_mul_node(g, i);
    return g;
  }

  /// Image of the node under a length-zero element.
  std::size_t omega_permute(const Elem& omega, std::size_t node) const {
    AffineRoot b = act(omega, nodes_[node].a);
    for (std::size_t j = 0; j < nodes_.size(); ++j)
      if (nodes_[j].a == b) return j;
    throw std::logic_error("element does not permute the fundamental affine roots");
  }

  /// Length-zero parts of the translations by the standard basis of X.
  std::vector<Elem> omega_generators() const {
    std::vector<Elem> gens;
    for (std::size_t i = 0; i < rd_->rank(); ++i) gens.push_back(factor_extended(translation(Vec::unit(i))).omega);
    return gens;
  }

  /// Omega is finite exactly when the roots span X rationally.
  bool omega_is_finite() const { return rd_->semisimple_rank() == rd_->rank(); }

  /// All of Omega when finite (closure of the generators); otherwise {e}.
  std::vector<Elem> omega_elements() const {
    std::vector<Elem> out{identity()};
    if (!omega_is_finite()) return out;
    std::unordered_set<Elem, AffineWeylElemHash> seen{identity()};
    auto gens = omega_generators();
    for (std::size_t k = 0; k < out.size(); ++k)
      for (const auto& g : gens) {
        Elem h = multiply(out[k], g);
        if (seen.insert(h).second) {
          if (out.size() > 10000) throw GuardError("Omega enumeration cap");
          out.push_back(h);
        }
      }
    return out;
  }

  /// Elements of length <= max_length: Omega times the Coxeter part.
  std::vector<Elem> elements_up_to_length(std::size_t max_length) const {
    std::vector<Elem> cox{identity()};
    std::unordered_set<Elem, AffineWeylElemHash> seen{identity()};
    std::size_t begin = 0;
    for (std::size_t l = 0; l < max_length; ++l) {
      std::size_t end = cox.size();
      for (std::size_t k = begin; k < end; ++k)
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
          if (is_right_descent(cox[k], i)) continue;
          Elem h = right_mul_node(cox[k], i);
          if (seen.insert(h).second) cox.push_back(h);
        }
      begin = end;
    }
    std::vector<Elem> out;
    for (const auto& om : omega_elements())
      for (const auto& g : cox) out.push_back(multiply(om, g));
    std::sort(out.begin(), out.end(), [&](const Elem& a, const Elem& b) {
      auto la = length(a), lb = length(b);
      return la != lb ? la < lb : a < b;
    });
    return out;
  }

  nlohmann::json to_json(const Elem& g) const {
    std::vector<int> word(w0_->word(g.w).begin(), w0_->word(g.w).end());
    return {{"word", word}, {"translation", g.x.to_vector(rd_->rank())}};
  }

 private:
  const RootDatum* rd_;
  const FiniteWeylGroup* w0_;
  std::vector<FundamentalNode> nodes_;
  std::size_t components_ = 0;

  void build_nodes() {
    const std::size_t r = rd_->semisimple_rank();
    std::vector<std::size_t> comp(r, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < r; ++i) {
      if (comp[i] != static_cast<std::size_t>(-1)) continue;
      std::deque<std::size_t> q{i};
      comp[i] = components_;
      while (!q.empty()) {
        std::size_t a = q.front();
        q.pop_front();
        for (std::size_t b = 0; b < r; ++b)
          if (comp[b] == static_cast<std::size_t>(-1) && rd_->cartan(a, b) != 0) {
            comp[b] = components_;
            q.push_back(b);
          }
      }
      ++components_;
    }
    for (std::size_t i = 0; i < r; ++i) {
      std::size_t idx = rd_->simple_index(i);
      nodes_.push_back({{idx, 0}, {w0_->reflection(idx), {}}, false, comp[i]});
    }
    for (std::size_t c = 0; c < components_; ++c) {
      // highest coroot supported on the component
      std::size_t best = RootDatum::npos;
      std::int64_t best_h = -1;
      for (std::size_t k : rd_->positive_roots()) {
        auto co = rd_->coroot_coordinates(rd_->coroot(k));
        bool inside = true;
        std::int64_t h = 0;
        for (std::size_t i = 0; i < r; ++i) {
          if ((*co)[i] != 0 && comp[i] != c) inside = false;
          h += (*co)[i];
        }
        if (inside && h > best_h) {
          best_h = h;
          best = k;
        }
      }
      std::size_t neg = rd_->negative_of(best);
      Vec shift = rd_->root(neg);  // k alpha with k = 1 and alpha = -theta
      nodes_.push_back({{neg, 1}, {w0_->reflection(neg), shift}, true, c});
    }
  }
};

}  // namespace hecke

#endif  // HECKE_WEYL_HPP
