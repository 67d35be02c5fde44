#ifndef HECKE_TEST_FIXTURES_HPP
#define HECKE_TEST_FIXTURES_HPP

#include <map>
#include <memory>
#include <string>

#include "hecke/hecke.hpp"
#include "hecke/labels.hpp"
#include "hecke/rootdata.hpp"
#include "hecke/weyl.hpp"

namespace hecke::testing {

/// Owns the whole tower for one datum so tests can build it in one line.
struct Tower {
  RootDatum rd;
  FiniteWeylGroup w0;
  AffineWeylGroup aff;
  LabelSet labels;
  HeckeAlgebra H;

  explicit Tower(const std::string& preset, const std::map<std::string, std::string>& names = {})
      : Tower(build_preset(preset), names) {}
  Tower(RootDatum datum, const std::map<std::string, std::string>& names)
      : rd(std::move(datum)), w0(rd), aff(rd, w0), labels(aff, names), H(labels) {}
  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;
};

inline std::unique_ptr<Tower> make_tower(const std::string& preset,
                                         const std::map<std::string, std::string>& names = {}) {
  return std::make_unique<Tower>(preset, names);
}

}  // namespace hecke::testing

#endif  // HECKE_TEST_FIXTURES_HPP
