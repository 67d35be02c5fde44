#ifndef HECKE_TORUS_HPP
#define HECKE_TORUS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hecke/core.hpp"
#include "hecke/numeric.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

/// A character t of X, given by its values on the standard basis of X.
template <class F>
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(std::vector<F> images) : images_(std::move(images)) {
    for (const auto& v : images_)
      if (FieldTraits<F>::is_zero(v)) throw std::invalid_argument("torus coordinates must be nonzero");
  }

  const std::vector<F>& images() const { return images_; }
  std::size_t rank() const { return images_.size(); }

  /// t(x) = prod t(e_i)^{x_i}.
  F operator()(const Vec& x) const {
    F r(1);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      for (std::int32_t k = 0; k < x[i]; ++k) r *= images_[i];
      for (std::int32_t k = 0; k > x[i]; --k) r /= images_[i];
    }
    return r;
  }

  TorusPoint inverse() const {
    std::vector<F> v;
    for (const auto& a : images_) v.push_back(F(1) / a);
    return TorusPoint(std::move(v));
  }
  TorusPoint conj() const {
    std::vector<F> v;
    for (const auto& a : images_) v.push_back(FieldTraits<F>::conj(a));
    return TorusPoint(std::move(v));
  }
  /// (wt)(x) = t(w^{-1} x).
  TorusPoint act(const FiniteWeylGroup& W, std::uint32_t w) const {
    std::vector<F> v;
    const auto winv = W.inverse(w);
    for (std::size_t i = 0; i < images_.size(); ++i) v.push_back((*this)(W.act(winv, Vec::unit(i))));
    return TorusPoint(std::move(v));
  }

  std::vector<std::string> str() const {
    std::vector<std::string> out;
    for (const auto& a : images_) out.push_back(FieldTraits<F>::str(a));
    return out;
  }

 private:
  std::vector<F> images_;
};

}  // namespace hecke

#endif  // HECKE_TORUS_HPP
