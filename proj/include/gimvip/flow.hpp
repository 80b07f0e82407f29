#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gimvip/model.hpp"
#include "gimvip/residual.hpp"

namespace gimvip {

inline constexpr double kDefaultSingGuard = 1e-12;

/// dw/dt = -kappa * Xi(w).
struct NominalRegime {
  double kappa = 1.0;
};

/// dw/dt = -tau * Xi(w) / ||Xi(w)||^((k-2)/(k-1)), k > 2.
struct FiniteTimeRegime {
  double tau = 1.0;
  double k = 3.0;
};

/// Gains of the fixed/predefined-time field
/// dw/dt = -(Gd/Td) * tau(w) * Xi(w) with
/// tau(w) = a1/||Xi||^(1-k1) + a2/||Xi||^(1-k2) + a3/||Xi||^k3.
struct FixedTimeParams {
  double a1 = 0.9;
  double a2 = 0.5;
  double a3 = 1e-4;
  double k1 = 0.4;
  double k2 = 1.5;
  double k3 = 0.0;
  double Gd = 1.0;
  double Td = 1.0;
};

struct FixedTimeRegime {
  FixedTimeParams params;
};

using RegimeConfig = std::variant<NominalRegime, FiniteTimeRegime, FixedTimeRegime>;

/// Throws InputError when a parameter is out of range. k3 is limited to [0, 1].
void validate(const RegimeConfig& rc);
void validate(const FixedTimeParams& fp);

std::string describe(const RegimeConfig& rc);

/// The scalar gain tau(w) as a function of ||Xi(w)||; zero at or below sing_guard.
double tau_gain(const FixedTimeParams& fp, double xi_norm, double sing_guard = kDefaultSingGuard);

/// Vector field of the regime at a precomputed residual sample. Zero whenever
/// ||Xi|| <= sing_guard.
Vec rhs_from_sample(const RegimeConfig& rc, const ResidualSample& s, double sing_guard = kDefaultSingGuard);

Vec rhs(const ProblemInstance& p, const RegimeConfig& rc, const Vec& w, double sing_guard = kDefaultSingGuard);

enum class Scheme { RK4Fixed, EulerFixed, RK4Adaptive };

/// Constants used by the displacement limiter. With them the per-step
/// displacement is capped at max(settle_tol, (m / Gamma^2) * ||Xi(w)||), the
/// step that contracts ||w - wbar|| by sqrt(1 - m^2/Gamma^2).
struct StepLimiter {
  double m = 0.0;
  double Gamma = 0.0;
};

struct IntegratorConfig {
  Scheme scheme = Scheme::RK4Fixed;
  double dt = 1e-3;
  double t_max = 10.0;
  double settle_tol = 1e-9;
  double sing_guard = kDefaultSingGuard;
  int sample_stride = 1;
  /// Smallest step RK4Adaptive may shrink to.
  double dt_min = 1e-8;
  /// Without constants the cap is 0.5 * ||Xi(w)|| * dt_scale.
  double dt_scale = 1.0;
  std::optional<StepLimiter> limiter;
};

void validate(const IntegratorConfig& ic);

struct TrajectorySample {
  double t = 0.0;
  Vec w;
  double xi_norm = 0.0;
  std::optional<double> v_lyap;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::optional<double> settled_at;
  std::string regime;
  /// Steps where the displacement limiter clipped the update.
  long limited_steps = 0;
  long steps = 0;
};

/// Integrates until ||Xi|| <= settle_tol or t_max. Throws NumericalFailure if
/// the state stops being finite.
Trajectory integrate(const ProblemInstance& p, const RegimeConfig& rc, const Vec& w0, const IntegratorConfig& ic);

/// First (linearly interpolated) time with xi_norm <= tol.
std::optional<double> observed_settling(const Trajectory& traj, double tol);

}  // namespace gimvip
