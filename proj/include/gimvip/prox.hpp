#pragma once

#include "gimvip/model.hpp"

namespace gimvip {

enum class ProxMethod { ClosedForm, Bisection };

struct ProxResult {
  Vec point;
  ProxMethod method = ProxMethod::ClosedForm;
  /// Worst per-coordinate optimality residual for Bisection; 0 for ClosedForm.
  double residual = 0.0;
};

inline constexpr double kDefaultBisectionTol = 1e-12;

/// argmin over v in Omega of gamma * g(v) + 0.5 * ||x - v||^2.
///
/// Closed forms cover SeparableQuadratic and L1 over box-like sets and Zero
/// over every set; SeparableCustom1D over box-like sets goes through
/// per-coordinate bisection. Anything else throws UnsupportedPair.
ProxResult prox(const GSpec& g, const SetSpec& omega, double gamma, const Vec& x,
                double tol = kDefaultBisectionTol);

/// Scalar prox on [lo, hi] by bisection on v -> gamma * dg(v) + v - x.
/// Returns v whose optimality residual (distance from 0 to
/// gamma * dg(v) + v - x + N_[lo,hi](v)) is at most tol.
/// Throws NonConvergence after 64 + ceil(log2(width / tol)) halvings.
double prox_bisect_1d(const ConvexScalarFn& g1d, double lo, double hi, double gamma, double x,
                      double tol = kDefaultBisectionTol);

/// Same as prox_bisect_1d, also reporting the achieved residual.
std::pair<double, double> prox_bisect_1d_with_residual(const ConvexScalarFn& g1d, double lo, double hi,
                                                       double gamma, double x, double tol);

/// Euclidean projection onto Omega.
Vec project(const SetSpec& omega, const Vec& x);

/// Soft-thresholding: sign(x) * max(|x| - t, 0).
double soft_threshold(double x, double t);

}  // namespace gimvip
