#include "gimvip/residual.hpp"

#include "gimvip/prox.hpp"

namespace gimvip {

namespace {

void check_point(const ProblemInstance& p, const Vec& w) {
  if (w.size() != p.d) {
    throw InputError("w: expected dimension " + std::to_string(p.d) + ", got " + std::to_string(w.size()));
  }
  if (!w.allFinite()) throw NumericalFailure("w has non-finite entries");
}

Vec b_from_f(const ProblemInstance& p, const Vec& w, const Vec& fw) {
  return prox(p.g, p.omega, p.gamma, fw - eval_operator(p.h, w)).point;
}

}  // namespace

Vec b_map(const ProblemInstance& p, const Vec& w) {
  check_point(p, w);
  return b_from_f(p, w, eval_operator(p.F, w));
}

ResidualSample xi(const ProblemInstance& p, const Vec& w) {
  check_point(p, w);
  ResidualSample s;
  s.w = w;
  const Vec fw = eval_operator(p.F, w);
  s.b = b_from_f(p, w, fw);
  s.xi = fw - s.b;
  s.xi_norm = s.xi.norm();
  if (s.xi_norm <= kSettledNorm) s.xi_norm = 0.0;
  return s;
}

}  // namespace gimvip
