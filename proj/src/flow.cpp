#include "gimvip/flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gimvip/detail/overloaded.hpp"

namespace gimvip {

using detail::overloaded;

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError(message);
}

double interpolate_crossing(double t0, double x0, double t1, double x1, double tol) {
  if (x0 <= tol) return t0;
  if (x1 >= x0) return t1;
  const double frac = (x0 - tol) / (x0 - x1);
  return t0 + std::clamp(frac, 0.0, 1.0) * (t1 - t0);
}

}  // namespace

void validate(const FixedTimeParams& fp) {
  require(fp.a1 > 0, "a1 must be positive");
  require(fp.a2 > 0, "a2 must be positive");
  require(fp.a3 >= 0, "a3 must be nonnegative");
  require(fp.k1 > 0 && fp.k1 < 1, "k1 must lie in (0, 1)");
  require(fp.k2 > 1, "k2 must exceed 1");
  require(fp.k3 >= 0 && fp.k3 <= 1, "k3 must lie in [0, 1]");
  require(fp.Gd > 0, "Gd must be positive");
  require(fp.Td > 0, "Td must be positive");
  require(std::isfinite(fp.a1 + fp.a2 + fp.a3 + fp.Gd + fp.Td), "fixed-time gains must be finite");
}

void validate(const RegimeConfig& rc) {
  std::visit(overloaded{
                 [](const NominalRegime& n) { require(n.kappa > 0 && std::isfinite(n.kappa), "kappa must be positive"); },
                 [](const FiniteTimeRegime& f) {
                   require(f.tau > 0 && std::isfinite(f.tau), "tau must be positive");
                   require(f.k > 2 && std::isfinite(f.k), "k must exceed 2");
                 },
                 [](const FixedTimeRegime& f) { validate(f.params); },
             },
             rc);
}

std::string describe(const RegimeConfig& rc) {
  std::ostringstream os;
  os.precision(8);
  std::visit(overloaded{
                 [&](const NominalRegime& n) { os << "nominal(kappa=" << n.kappa << ")"; },
                 [&](const FiniteTimeRegime& f) { os << "finite(tau=" << f.tau << ",k=" << f.k << ")"; },
                 [&](const FixedTimeRegime& f) {
                   const auto& q = f.params;
                   os << "fixed(a1=" << q.a1 << ",a2=" << q.a2 << ",a3=" << q.a3 << ",k1=" << q.k1
                      << ",k2=" << q.k2 << ",k3=" << q.k3 << ",Gd=" << q.Gd << ",Td=" << q.Td << ")";
                 },
             },
             rc);
  return os.str();
}

void validate(const IntegratorConfig& ic) {
  require(ic.dt > 0, "dt must be positive");
  require(ic.t_max > 0, "t_max must be positive");
  require(ic.settle_tol > 0, "settle_tol must be positive");
  require(ic.sing_guard > 0, "sing_guard must be positive");
  require(ic.sample_stride >= 1, "sample_stride must be a positive integer");
  require(ic.dt_min > 0 && ic.dt_min <= ic.dt, "dt_min must lie in (0, dt]");
  require(ic.dt_scale > 0, "dt_scale must be positive");
  if (ic.limiter) require(ic.limiter->m > 0 && ic.limiter->Gamma > 0, "limiter constants must be positive");
}

double tau_gain(const FixedTimeParams& fp, double xi_norm, double sing_guard) {
  if (xi_norm <= sing_guard) return 0.0;
  return fp.a1 / std::pow(xi_norm, 1.0 - fp.k1) + fp.a2 / std::pow(xi_norm, 1.0 - fp.k2) +
         fp.a3 / std::pow(xi_norm, fp.k3);
}

Vec rhs_from_sample(const RegimeConfig& rc, const ResidualSample& s, double sing_guard) {
  if (s.xi_norm <= sing_guard) return Vec::Zero(s.xi.size());
  return std::visit(overloaded{
                        [&](const NominalRegime& n) -> Vec { return -n.kappa * s.xi; },
                        [&](const FiniteTimeRegime& f) -> Vec {
                          return (-f.tau / std::pow(s.xi_norm, (f.k - 2.0) / (f.k - 1.0))) * s.xi;
                        },
                        [&](const FixedTimeRegime& f) -> Vec {
                          const auto& q = f.params;
                          return (-(q.Gd / q.Td) * tau_gain(q, s.xi_norm, sing_guard)) * s.xi;
                        },
                    },
                    rc);
}

Vec rhs(const ProblemInstance& p, const RegimeConfig& rc, const Vec& w, double sing_guard) {
  return rhs_from_sample(rc, xi(p, w), sing_guard);
}

Trajectory integrate(const ProblemInstance& p, const RegimeConfig& rc, const Vec& w0, const IntegratorConfig& ic) {
  validate(rc);
  validate(ic);
  if (w0.size() != p.d) throw InputError("w0: expected dimension " + std::to_string(p.d));
  require_finite(w0, "w0");

  Trajectory traj;
  traj.regime = describe(rc);

  ResidualSample cur = xi(p, w0);
  double t = 0.0;
  traj.samples.push_back({t, cur.w, cur.xi_norm, std::nullopt});
  if (cur.xi_norm <= ic.settle_tol) {
    traj.settled_at = 0.0;
    return traj;
  }

  const bool adaptive = ic.scheme == Scheme::RK4Adaptive;
  double dt = ic.dt;
  int clean_steps = 0;
  bool last_recorded = true;

  auto displacement_cap = [&](double xi_norm) {
    if (ic.limiter) {
      const double ratio = ic.limiter->m / (ic.limiter->Gamma * ic.limiter->Gamma);
      return std::max(ic.settle_tol, ratio * xi_norm);
    }
    return std::max(ic.settle_tol, 0.5 * xi_norm * ic.dt_scale);
  };
  auto field = [&](const Vec& w) { return rhs_from_sample(rc, xi(p, w), ic.sing_guard); };

  while (t < ic.t_max) {
    const double h = std::min(dt, ic.t_max - t);
    const Vec f0 = rhs_from_sample(rc, cur, ic.sing_guard);
    const double cap = displacement_cap(cur.xi_norm);

    Vec delta;
    if (ic.scheme == Scheme::EulerFixed || h * f0.norm() > cap) {
      delta = h * f0;
    } else {
      const Vec k2 = field(cur.w + 0.5 * h * f0);
      const Vec k3 = field(cur.w + 0.5 * h * k2);
      const Vec k4 = field(cur.w + h * k3);
      delta = (h / 6.0) * (f0 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    bool limited = false;
    const double disp = delta.norm();
    if (disp > cap) {
      if (adaptive && dt > ic.dt_min) {
        dt = std::max(0.5 * dt, ic.dt_min);
        clean_steps = 0;
        continue;
      }
      delta *= cap / disp;
      limited = true;
    }

    const Vec w_next = cur.w + delta;
    if (!w_next.allFinite()) {
      throw NumericalFailure("state became non-finite at step " + std::to_string(traj.steps + 1) +
                             " (t=" + std::to_string(t) + ")");
    }
    ResidualSample next = xi(p, w_next);
    const double t_next = t + h;
    ++traj.steps;
    if (limited) ++traj.limited_steps;

    if (adaptive && !limited && ++clean_steps >= 10) {
      dt = std::min(2.0 * dt, ic.dt);
      clean_steps = 0;
    }

    if (next.xi_norm <= ic.settle_tol) {
      traj.settled_at = interpolate_crossing(t, cur.xi_norm, t_next, next.xi_norm, ic.settle_tol);
      traj.samples.push_back({t_next, next.w, next.xi_norm, std::nullopt});
      return traj;
    }
    last_recorded = traj.steps % ic.sample_stride == 0;
    if (last_recorded) traj.samples.push_back({t_next, next.w, next.xi_norm, std::nullopt});
    cur = std::move(next);
    t = t_next;
  }
  if (!last_recorded) traj.samples.push_back({t, cur.w, cur.xi_norm, std::nullopt});
  return traj;
}

std::optional<double> observed_settling(const Trajectory& traj, double tol) {
  if (traj.samples.empty()) throw InputError("observed_settling: empty trajectory");
  const auto& s = traj.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].xi_norm <= tol) {
      if (i == 0) return s[0].t;
      return interpolate_crossing(s[i - 1].t, s[i - 1].xi_norm, s[i].t, s[i].xi_norm, tol);
    }
  }
  return std::nullopt;
}

}  // namespace gimvip
