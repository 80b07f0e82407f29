#pragma once

#include <variant>

#include "gimvip/flow.hpp"

namespace gimvip {

/// w <- w - tau * theta * Xi(w) / ||Xi(w)||^((k-2)/(k-1)), k >= 2.
struct Alg2Method {
  double tau = 1.0;
  double theta = 0.2;
  double k = 2.0;
};

struct ConstantStep {
  double theta = 1e-3;
};

/// theta_n = theta_min + 1/n with n = 1 for the first update.
struct HarmonicStep {
  double theta_min = 1e-4;
};

using StepSchedule = std::variant<ConstantStep, HarmonicStep>;

/// w <- w - theta_n * (Gd/Td) * tau(w) * Xi(w).
struct Eq29Method {
  StepSchedule schedule = HarmonicStep{};
  FixedTimeParams params;
};

/// w <- w - kappa_theta * Xi(w).
struct NominalIterMethod {
  double kappa_theta = 0.1;
};

struct MethodConfig {
  std::variant<Alg2Method, Eq29Method, NominalIterMethod> method = Alg2Method{};
  int n_max = 150;
  double stop_tol = 1e-12;
  double sing_guard = kDefaultSingGuard;
};

void validate(const MethodConfig& mc);
std::string describe(const MethodConfig& mc);

/// Step size used for the n-th update (n >= 1).
double step_size(const StepSchedule& schedule, int n);

Vec step_alg2(const ProblemInstance& p, const Vec& w, double tau, double theta, double k,
              double sing_guard = kDefaultSingGuard);

Vec step_eq29(const ProblemInstance& p, const Vec& w, double theta, const FixedTimeParams& fp,
              double sing_guard = kDefaultSingGuard);

/// Iterates from w0, recording every iterate with its index in the time slot.
/// Stops at ||Xi(w_n)|| <= stop_tol or n = n_max. The trajectory's
/// settled_at holds the stopping index when the tolerance was reached.
Trajectory run(const ProblemInstance& p, const MethodConfig& mc, const Vec& w0);

}  // namespace gimvip
