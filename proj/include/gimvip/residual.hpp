#pragma once

#include "gimvip/model.hpp"

namespace gimvip {

/// Residual norms at or below this are reported as exactly zero.
inline constexpr double kSettledNorm = 1e-14;

/// One evaluation of B(w) = prox_Omega^{gamma g}(F(w) - h(w)) and
/// Xi(w) = F(w) - B(w), sharing the prox call.
struct ResidualSample {
  Vec w;
  Vec xi;
  double xi_norm = 0.0;
  Vec b;
};

Vec b_map(const ProblemInstance& p, const Vec& w);

ResidualSample xi(const ProblemInstance& p, const Vec& w);

}  // namespace gimvip
