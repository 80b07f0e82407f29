#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gimvip/constants.hpp"
#include "gimvip/flow.hpp"

namespace gimvip {

struct InequalityCheck {
  std::string name;
  /// max over samples of (lhs - rhs); positive means violated.
  double worst_violation = 0.0;
  bool pass = true;
  /// Informational checks are reported but never gate a verdict.
  bool informational = false;
  std::optional<Vec> worst_point;
};

struct CertificateReport {
  std::string regime;
  /// Seconds of flow time, or iterations for discrete methods; may be +inf.
  double predicted_bound = 0.0;
  std::optional<double> observed;
  bool bound_respected = true;
  std::vector<InequalityCheck> checks;
  Vec reference_solution;
  ConstantsReport constants_used;

  /// bound_respected and every non-informational check passes.
  bool all_pass() const;
};

/// Sets bound_respected from observed and predicted_bound.
void finalize_bound(CertificateReport& report);

/// Solution of Xi(w) = 0 by w <- w - (m/Gamma^2) Xi(w), refined by bisection
/// in one dimension. Requires m > 0; throws NonConvergence after 1e6 steps.
Vec reference_solution(const ProblemInstance& p, const ConstantsReport& r, double tol = 1e-12);

/// Settling-time bound of the finite-time flow with p = k / (2(k-1)),
/// K = 2^p * tau * m^(1/(k-1)).
double finite_time_bound(double dist0, double tau, double k, double m);

struct FixedTimeBoundParts {
  double generic = 0.0;
  /// pi * chi / sqrt(A1 A2) when s1 = 1 - 1/(2 chi), s2 = 1 + 1/(2 chi), chi > 1.
  std::optional<double> zeta_form;
  double bound() const;
};

FixedTimeBoundParts fixed_time_bound_parts(double A1, double A2, double s1, double s2);
double fixed_time_bound(double A1, double A2, double s1, double s2);

struct ACoefficients {
  double A1 = 0.0;
  double A2 = 0.0;
};

/// A2 is taken at the lower end of its admissible interval, which does not
/// depend on the initial condition.
ACoefficients a_coefficients(const FixedTimeParams& fp, double m, double Gamma);

/// Gain Gd that makes the k3 = 0 fixed-time flow settle within Td.
double predefined_gd(double a1, double a2, double a3, double k1, double k2, double m, double Gamma);

/// Iteration count after which the discrete envelope collapses to eps.
long envelope_horizon(double A1, double A2, double chi, double theta);

/// Error envelope of the forward-Euler iterates; +inf at n = 0 and eps for n >= horizon.
double discrete_envelope(long n, double A1, double A2, double chi, double theta, double eps);

/// V(w) = 0.5 ||w - wbar||^2 per sample.
std::vector<std::pair<double, double>> lyapunov_series(const Trajectory& traj, const Vec& wbar);

/// Fills v_lyap on every sample.
void attach_lyapunov(Trajectory& traj, const Vec& wbar);

/// Indices i where V(w_i) >= V(w_{i-1}) among pre-settling samples.
std::vector<std::size_t> lyapunov_increases(const Trajectory& traj, const Vec& wbar);

struct DiffInequalityVerdict {
  bool pass = true;
  double worst_violation = 0.0;
  double worst_t = 0.0;
  std::size_t checked = 0;
};

/// Checks dV/dt <= -(A1 V^s1 + A2 V^s2)(1 - slack_rel) + 1e-12 at interior
/// pre-settling samples, with dV/dt from second-order central differences.
DiffInequalityVerdict check_diff_inequality(const Trajectory& traj, const Vec& wbar, double A1, double A2,
                                            double s1, double s2, double slack_rel = 0.05);

inline constexpr double kLemmaTolerance = 1e-9;

/// Samples the residual inequalities: Gamma-Lipschitz Xi, Lambda-contraction
/// of B towards wbar, two-sided residual bounds and the correlation bound.
/// Lower bounds use m; the rho - Lambda versions are informational.
std::vector<InequalityCheck> check_lemma_bdt(const ProblemInstance& p, const ConstantsReport& r, const Vec& wbar,
                                             int n_samples, double radius, std::uint64_t seed,
                                             const std::vector<Vec>& extra_points = {});

}  // namespace gimvip
