#pragma once

// The four benchmark models (Bazykin, predator-prey with nonmonotonic
// response, Bykov, metastatic transition) plus an analytic scalar cusp model
// used as a test oracle, and two trivial geometries (sphere, plane) used by
// the continuation tests and CLI.

#include <functional>
#include <optional>

#include "cuspid/model.hpp"

namespace cuspid {
namespace models {

// variable indices: x_1..x_n are 0..n-1, lambda_1 = n, lambda_2 = n+1

inline EquilibriumModel bazykin() {
  EquilibriumModel md;
  md.name = "bazykin";
  md.n = 2;
  const int x1 = 0, x2 = 1, l1 = 2;
  Poly den{mono(1.0), mono(1.0, {{l1, 1}, {x1, 1}})};  // 1 + l1 x1
  // f1 = x1 - 0.01 x1^2 - x1 x2 / (1 + l1 x1)
  md.add_term(0, RationalTerm::polynomial(Poly{mono(1.0, {{x1, 1}}), mono(-0.01, {{x1, 2}})}));
  md.add_term(0, RationalTerm::rational(Poly{mono(-1.0, {{x1, 1}, {x2, 1}})}, den));
  // f2 = -x2 - l2 x2^2 + x1 x2 / (1 + l1 x1)
  md.add_term(1, RationalTerm::polynomial(Poly{mono(-1.0, {{x2, 1}}), mono(-1.0, {{3, 1}, {x2, 2}})}));
  md.add_term(1, RationalTerm::rational(Poly{mono(1.0, {{x1, 1}, {x2, 1}})}, den));
  md.region_lo = {0, 0, 0, 0};
  md.region_hi = {35, 35, 4, 4};
  md.seed = {10.0, 10.0, 91.0 / 90.0, -0.01};
  md.defaults = {0.35, 1.0, 1e-12};
  md.bake();
  return md;
}

inline EquilibriumModel predator_prey() {
  EquilibriumModel md;
  md.name = "predator-prey";
  md.n = 2;
  const int x1 = 0, x2 = 1, l1 = 2, l2 = 3;
  const double kappa = 0.01, delta = 1.1, mu = 0.1;
  Poly den{mono(1.0), mono(1.0, {{l1, 1}, {x1, 2}}), mono(1.0, {{l2, 1}, {x1, 1}})};  // l1 x1^2 + l2 x1 + 1
  // f1 = x1 (1 - kappa x1) - x1 x2 / q
  md.add_term(0, RationalTerm::polynomial(Poly{mono(1.0, {{x1, 1}}), mono(-kappa, {{x1, 2}})}));
  md.add_term(0, RationalTerm::rational(Poly{mono(-1.0, {{x1, 1}, {x2, 1}})}, den));
  // f2 = x2 (-delta - mu x2) + x1 x2 / q
  md.add_term(1, RationalTerm::polynomial(Poly{mono(-delta, {{x2, 1}}), mono(-mu, {{x2, 2}})}));
  md.add_term(1, RationalTerm::rational(Poly{mono(1.0, {{x1, 1}, {x2, 1}})}, den));
  md.region_lo = {0, 0, -3, -3};
  md.region_hi = {20, 20, 3, 3};
  md.seed = {1200.0 / 1001.0, 989.0 / 1001.0, 0.0, 0.0};
  md.defaults = {0.12, 0.35, 5e-12};
  md.bake();
  return md;
}

inline EquilibriumModel bykov() {
  EquilibriumModel md;
  md.name = "bykov";
  md.n = 3;
  const int x1 = 0, x2 = 1, x3 = 2, l1 = 3, l2 = 4;
  // f1 = 5 (1 - x1 - x2 - x3)^2 - 2 x1^2 - 10 x1 x2, expanded
  md.add_term(0, RationalTerm::polynomial(Poly{
                     mono(5.0), mono(-10.0, {{x1, 1}}), mono(-10.0, {{x2, 1}}), mono(-10.0, {{x3, 1}}),
                     mono(3.0, {{x1, 2}}), mono(5.0, {{x2, 2}}), mono(5.0, {{x3, 2}}),
                     mono(10.0, {{x1, 1}, {x3, 1}}), mono(10.0, {{x2, 1}, {x3, 1}})}));
  // f2 = l1 (1 - x1 - x2 - x3) - 0.1 x2 - 10 x1 x2
  md.add_term(1, RationalTerm::polynomial(Poly{
                     mono(1.0, {{l1, 1}}), mono(-1.0, {{l1, 1}, {x1, 1}}), mono(-1.0, {{l1, 1}, {x2, 1}}),
                     mono(-1.0, {{l1, 1}, {x3, 1}}), mono(-0.1, {{x2, 1}}), mono(-10.0, {{x1, 1}, {x2, 1}})}));
  // f3 = 0.0675 (1 - x1 - x2 - x3 - l2 x3)
  md.add_term(2, RationalTerm::polynomial(Poly{
                     mono(0.0675), mono(-0.0675, {{x1, 1}}), mono(-0.0675, {{x2, 1}}), mono(-0.0675, {{x3, 1}}),
                     mono(-0.0675, {{l2, 1}, {x3, 1}})}));
  md.region_lo = {0, 0, 0, 0, 0};
  md.region_hi = {1.6, 1.6, 1.6, 1.6, 1.6};
  // equilibrium obtained by fixing lambda = (1, 1) and solving for x
  md.seed = {0.290339812059, 0.101281693304, 0.304189247319, 1.0, 1.0};
  md.defaults = {0.02, 0.055, 1e-10};
  md.bake();
  return md;
}

inline EquilibriumModel metastatic() {
  EquilibriumModel md;
  md.name = "metastatic";
  md.n = 3;
  const int x1 = 0, x2 = 1, x3 = 2, l1 = 3, l2 = 4;
  // f1 = 1 / (1 + x3) - l1 x1
  md.add_term(0, RationalTerm::rational(Poly{mono(1.0)}, Poly{mono(1.0), mono(1.0, {{x3, 1}})}));
  md.add_term(0, RationalTerm::polynomial(Poly{mono(-1.0, {{l1, 1}, {x1, 1}})}));
  // f2 = 1000 x1^5 / (32 + x1^5) - x2 - 200 x2 x3
  md.add_term(1, RationalTerm::rational(Poly{mono(1000.0, {{x1, 5}})}, Poly{mono(32.0), mono(1.0, {{x1, 5}})}));
  md.add_term(1, RationalTerm::polynomial(Poly{mono(-1.0, {{x2, 1}}), mono(-200.0, {{x2, 1}, {x3, 1}})}));
  // f3 = 0.02 + 19.98 l2^3 / (l2^3 + x3^3) - x3 - 200 x2 x3
  md.add_term(2, RationalTerm::rational(Poly{mono(19.98, {{l2, 3}})}, Poly{mono(1.0, {{l2, 3}}), mono(1.0, {{x3, 3}})}));
  md.add_term(2, RationalTerm::polynomial(
                     Poly{mono(0.02), mono(-1.0, {{x3, 1}}), mono(-200.0, {{x2, 1}, {x3, 1}})}));
  md.region_lo = {0, 0, 0, 0.05, 0.05};
  md.region_hi = {3, 3, 3, 1.5, 1.5};
  // equilibrium obtained by fixing lambda = (1, 1); the branch with small x3
  md.seed = {0.92957273336, 1.314331421166, 0.075763051251, 1.0, 1.0};
  md.defaults = {0.05, 0.14, 1e-12};
  md.bake();
  return md;
}

// f(x, lambda) = lambda_1 + lambda_2 x - x^3: analytic cusp at the origin
// with normal form coefficient c = -1
inline EquilibriumModel scalar_oracle() {
  EquilibriumModel md;
  md.name = "scalar-oracle";
  md.n = 1;
  md.add_term(0, RationalTerm::polynomial(Poly{mono(1.0, {{1, 1}}), mono(1.0, {{2, 1}, {0, 1}}), mono(-1.0, {{0, 3}})}));
  md.region_lo = {-1.5, -1, -1};
  md.region_hi = {1.5, 1, 1};
  md.seed = {0.0, 0.0, 0.0};
  md.defaults = {0.12, 0.3, 1e-12};
  md.bake();
  return md;
}

// unit sphere x^2 + lambda_1^2 + lambda_2^2 = 1: closed-manifold test geometry
inline EquilibriumModel sphere_test(double radius = 1.0) {
  EquilibriumModel md;
  md.name = "sphere-test";
  md.n = 1;
  md.add_term(0, RationalTerm::polynomial(
                     Poly{mono(1.0, {{0, 2}}), mono(1.0, {{1, 2}}), mono(1.0, {{2, 2}}), mono(-radius * radius)}));
  double b = 2.0 * radius;
  md.region_lo = {-b, -b, -b};
  md.region_hi = {b, b, b};
  md.seed = {radius, 0.0, 0.0};
  md.defaults = {0.12 * radius, 40.0 * radius, 1e-12};
  md.bake();
  return md;
}

// f = x: flat manifold {x = 0}, exercises region clipping
inline EquilibriumModel plane_test() {
  EquilibriumModel md;
  md.name = "plane";
  md.n = 1;
  md.add_term(0, RationalTerm::polynomial(Poly{mono(1.0, {{0, 1}})}));
  md.region_lo = {-1, -1, -1};
  md.region_hi = {1, 1, 1};
  md.seed = {0.0, 0.0, 0.0};
  md.defaults = {0.22, 0.35, 1e-12};
  md.bake();
  return md;
}

}  // namespace models

// the five models exposed to the proof pipeline
inline std::vector<EquilibriumModel> builtin_models() {
  return {models::bazykin(), models::predator_prey(), models::bykov(), models::metastatic(),
          models::scalar_oracle()};
}

inline std::optional<EquilibriumModel> find_model(const std::string& name) {
  for (auto& md : builtin_models())
    if (md.name == name) return md;
  if (name == "sphere-test") return models::sphere_test();
  if (name == "plane") return models::plane_test();
  return std::nullopt;
}

inline std::vector<std::string> model_names() {
  std::vector<std::string> names;
  for (auto& md : builtin_models()) names.push_back(md.name);
  names.push_back("sphere-test");
  names.push_back("plane");
  return names;
}

}  // namespace cuspid
