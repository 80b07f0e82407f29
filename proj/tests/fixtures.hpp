#pragma once

#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gimvip/model.hpp"

namespace fixtures {

// A five-dimensional affine instance close to the scalar example:
// h = 0.5 I + eps S, F = 0.75 I + eps S', separable quadratic g on a box.
inline gimvip::ProblemInstance random_affine5(unsigned seed = 7, double eps = 0.02) {
  using namespace gimvip;
  const int d = 5;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat sh(d, d), sf(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      sh(i, j) = u(rng);
      sf(i, j) = u(rng);
    }
  }
  Vec qh(d), qf(d), a(d), b(d);
  for (int i = 0; i < d; ++i) {
    qh[i] = u(rng);
    qf[i] = u(rng);
    a[i] = 0.5 + 0.5 * (u(rng) + 1.0);
    b[i] = u(rng);
  }
  ProblemInstance p;
  p.d = d;
  p.h = Affine{0.5 * Mat::Identity(d, d) + eps * sh, qh};
  p.F = Affine{0.75 * Mat::Identity(d, d) + eps * sf, qf};
  p.g = SeparableQuadratic{a, b, 0.0};
  p.omega = Box{Vec::Constant(d, -1.0), Vec::Constant(d, 2.0)};
  p.gamma = 1.0;
  return p;
}

struct ProxCase {
  std::string name;
  gimvip::GSpec g;
  gimvip::SetSpec omega;
};

// Every (g, Omega) combination the prox module supports, in dimension 3.
inline std::vector<ProxCase> prox_catalog() {
  using namespace gimvip;
  const int d = 3;
  Vec lo(d), hi(d), a(d), b(d), c(d), n(d);
  lo << -1, -std::numeric_limits<double>::infinity(), 0.5;
  hi << 1, 0.5, std::numeric_limits<double>::infinity();
  a << 0.0, 0.5, 2.0;
  b << 1.0, -2.0, 0.5;
  c << 0.5, -0.5, 1.0;
  n << 1.0, -2.0, 0.5;
  const std::vector<std::pair<std::string, SetSpec>> box_like{
      {"whole", WholeSpace{}}, {"orthant", NonnegativeOrthant{}}, {"box", Box{lo, hi}}};
  const std::vector<std::pair<std::string, GSpec>> gs{
      {"quadratic", SeparableQuadratic{a, b, 1.0}},
      {"l1", L1Norm{0.7}},
      {"custom", SeparableCustom1D{{"huber", "abs", "softplus"}}},
      {"custom_hinge", SeparableCustom1D{{"hinge", "square", "zero"}}},
  };
  std::vector<ProxCase> out;
  for (const auto& [sn, s] : box_like) {
    out.push_back({"zero/" + sn, ZeroFunction{}, s});
    for (const auto& [gn, g] : gs) out.push_back({gn + "/" + sn, g, s});
  }
  out.push_back({"zero/ball", ZeroFunction{}, Ball{c, 1.5}});
  out.push_back({"zero/halfspace", ZeroFunction{}, Halfspace{n, 0.3}});
  return out;
}

}  // namespace fixtures
