#include "gimvip/iterate.hpp"

#include <cmath>
#include <sstream>

#include "gimvip/detail/overloaded.hpp"

namespace gimvip {

using detail::overloaded;

namespace {

Vec alg2_update(const ResidualSample& s, double tau, double theta, double k, double sing_guard) {
  if (s.xi_norm <= sing_guard) return s.w;
  const double scale = tau * theta / std::pow(s.xi_norm, (k - 2.0) / (k - 1.0));
  return s.w - scale * s.xi;
}

Vec eq29_update(const ResidualSample& s, double theta, const FixedTimeParams& fp, double sing_guard) {
  if (s.xi_norm <= sing_guard) return s.w;
  return s.w - (theta * (fp.Gd / fp.Td) * tau_gain(fp, s.xi_norm, sing_guard)) * s.xi;
}

}  // namespace

void validate(const MethodConfig& mc) {
  if (mc.n_max < 0) throw InputError("n_max must be nonnegative");
  if (!(mc.stop_tol > 0)) throw InputError("stop_tol must be positive");
  if (!(mc.sing_guard > 0)) throw InputError("sing_guard must be positive");
  std::visit(overloaded{
                 [](const Alg2Method& a) {
                   if (!(a.tau > 0)) throw InputError("tau must be positive");
                   if (!(a.theta > 0)) throw InputError("theta must be positive");
                   if (!(a.k >= 2)) throw InputError("k must be at least 2");
                 },
                 [](const Eq29Method& e) {
                   validate(e.params);
                   std::visit(overloaded{
                                  [](const ConstantStep& c) {
                                    if (!(c.theta > 0)) throw InputError("theta must be positive");
                                  },
                                  [](const HarmonicStep& h) {
                                    if (!(h.theta_min >= 0)) throw InputError("theta_min must be nonnegative");
                                  },
                              },
                              e.schedule);
                 },
                 [](const NominalIterMethod& n) {
                   if (!(n.kappa_theta > 0)) throw InputError("kappa_theta must be positive");
                 },
             },
             mc.method);
}

std::string describe(const MethodConfig& mc) {
  std::ostringstream os;
  os.precision(8);
  std::visit(overloaded{
                 [&](const Alg2Method& a) { os << "alg2(tau=" << a.tau << ",theta=" << a.theta << ",k=" << a.k << ")"; },
                 [&](const Eq29Method& e) {
                   os << "eq29(";
                   std::visit(overloaded{
                                  [&](const ConstantStep& c) { os << "theta=" << c.theta; },
                                  [&](const HarmonicStep& h) { os << "theta=" << h.theta_min << "+1/n"; },
                              },
                              e.schedule);
                   const auto& q = e.params;
                   os << ",a1=" << q.a1 << ",a2=" << q.a2 << ",a3=" << q.a3 << ",k1=" << q.k1 << ",k2=" << q.k2
                      << ",k3=" << q.k3 << ",Gd=" << q.Gd << ",Td=" << q.Td << ")";
                 },
                 [&](const NominalIterMethod& n) { os << "nominal_iter(kappa_theta=" << n.kappa_theta << ")"; },
             },
             mc.method);
  return os.str();
}

double step_size(const StepSchedule& schedule, int n) {
  return std::visit(overloaded{
                        [](const ConstantStep& c) { return c.theta; },
                        [n](const HarmonicStep& h) { return h.theta_min + 1.0 / static_cast<double>(n); },
                    },
                    schedule);
}

Vec step_alg2(const ProblemInstance& p, const Vec& w, double tau, double theta, double k, double sing_guard) {
  return alg2_update(xi(p, w), tau, theta, k, sing_guard);
}

Vec step_eq29(const ProblemInstance& p, const Vec& w, double theta, const FixedTimeParams& fp, double sing_guard) {
  return eq29_update(xi(p, w), theta, fp, sing_guard);
}

Trajectory run(const ProblemInstance& p, const MethodConfig& mc, const Vec& w0) {
  validate(mc);
  if (w0.size() != p.d) throw InputError("w0: expected dimension " + std::to_string(p.d));
  require_finite(w0, "w0");

  Trajectory traj;
  traj.regime = describe(mc);
  ResidualSample cur = xi(p, w0);
  traj.samples.push_back({0.0, cur.w, cur.xi_norm, std::nullopt});

  for (int n = 0;; ++n) {
    if (cur.xi_norm <= mc.stop_tol) {
      traj.settled_at = static_cast<double>(n);
      break;
    }
    if (n >= mc.n_max) break;
    Vec next = std::visit(overloaded{
                              [&](const Alg2Method& a) { return alg2_update(cur, a.tau, a.theta, a.k, mc.sing_guard); },
                              [&](const Eq29Method& e) {
                                return eq29_update(cur, step_size(e.schedule, n + 1), e.params, mc.sing_guard);
                              },
                              [&](const NominalIterMethod& m) -> Vec { return cur.w - m.kappa_theta * cur.xi; },
                          },
                          mc.method);
    if (!next.allFinite()) {
      throw NumericalFailure("iterate became non-finite at n=" + std::to_string(n + 1));
    }
    cur = xi(p, next);
    traj.samples.push_back({static_cast<double>(n + 1), cur.w, cur.xi_norm, std::nullopt});
    ++traj.steps;
  }
  return traj;
}

}  // namespace gimvip
