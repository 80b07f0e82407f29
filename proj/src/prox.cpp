#include "gimvip/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gimvip/detail/overloaded.hpp"

namespace gimvip {

namespace {

using detail::overloaded;

// Distance from 0 to [lo_val, hi_val] + normal cone of [lo, hi] at v.
double optimality_residual(const ConvexScalarFn& g1d, double lo, double hi, double gamma, double x,
                           double v) {
  auto [dl, dr] = g1d.subdifferential(v);
  double left = gamma * dl + v - x;
  double right = gamma * dr + v - x;
  if (v <= lo) left = -std::numeric_limits<double>::infinity();
  if (v >= hi) right = std::numeric_limits<double>::infinity();
  if (left > 0) return left;
  if (right < 0) return -right;
  return 0.0;
}

Vec clamp_box(const Vec& x, const Box& b) { return x.cwiseMax(b.lo).cwiseMin(b.hi); }

}  // namespace

double soft_threshold(double x, double t) {
  const double mag = std::max(std::abs(x) - t, 0.0);
  return std::copysign(mag, x) + 0.0;
}

std::pair<double, double> prox_bisect_1d_with_residual(const ConvexScalarFn& g1d, double lo, double hi,
                                                       double gamma, double x, double tol) {
  if (!(tol > 0)) throw InputError("prox_bisect_1d: tol must be positive");
  if (!(gamma > 0)) throw InputError("prox_bisect_1d: gamma must be positive");
  if (lo > hi) throw InputError("prox_bisect_1d: empty interval");

  // The unconstrained root satisfies v = x - gamma * s with s in dg(v), and
  // monotonicity of dg places it between x - gamma * max(0, dr(x)) and
  // x - gamma * min(0, dl(x)).
  auto [dl, dr] = g1d.subdifferential(x);
  double a = std::max(lo, x - gamma * std::max(0.0, dr));
  double b = std::min(hi, x - gamma * std::min(0.0, dl));
  if (a > b) {
    // Root lies outside [lo, hi]; the constrained minimizer is the nearer endpoint.
    const double v = (x - gamma * std::max(0.0, dr) > hi) ? hi : lo;
    return {v, optimality_residual(g1d, lo, hi, gamma, x, v)};
  }

  for (double k : g1d.kinks) {
    if (k >= a && k <= b) {
      const double r = optimality_residual(g1d, lo, hi, gamma, x, k);
      if (r <= tol) return {k, r};
    }
  }
  for (double v : {a, b}) {
    const double r = optimality_residual(g1d, lo, hi, gamma, x, v);
    if (r <= tol) return {v, r};
  }

  const double width = b - a;
  const int cap = 64 + static_cast<int>(std::ceil(std::log2(std::max(width / tol, 1.0))));
  double best_v = a;
  double best_r = std::numeric_limits<double>::infinity();
  for (int it = 0; it < cap; ++it) {
    const double mid = a + 0.5 * (b - a);
    const double r = optimality_residual(g1d, lo, hi, gamma, x, mid);
    if (r < best_r) {
      best_r = r;
      best_v = mid;
    }
    if (r <= tol) return {mid, r};
    auto [ml, mr] = g1d.subdifferential(mid);
    if (gamma * mr + mid - x < 0) {
      a = mid;
    } else if (gamma * ml + mid - x > 0) {
      b = mid;
    } else {
      return {mid, 0.0};
    }
    if (!(a < mid || mid < b) || b - a <= 0) break;
  }
  throw NonConvergence("prox_bisect_1d: residual " + std::to_string(best_r) + " at v=" +
                       std::to_string(best_v) + " did not reach tol " + std::to_string(tol));
}

double prox_bisect_1d(const ConvexScalarFn& g1d, double lo, double hi, double gamma, double x, double tol) {
  return prox_bisect_1d_with_residual(g1d, lo, hi, gamma, x, tol).first;
}

Vec project(const SetSpec& omega, const Vec& x) {
  return std::visit(
      overloaded{
          [&](const WholeSpace&) -> Vec { return x; },
          [&](const NonnegativeOrthant&) -> Vec { return x.cwiseMax(0.0); },
          [&](const Box& b) -> Vec { return clamp_box(x, b); },
          [&](const Ball& b) -> Vec {
            const Vec diff = x - b.center;
            const double n = diff.norm();
            if (n <= b.radius) return x;
            return b.center + (b.radius / n) * diff;
          },
          [&](const Halfspace& h) -> Vec {
            const double excess = h.normal.dot(x) - h.offset;
            if (excess <= 0) return x;
            return x - (excess / h.normal.squaredNorm()) * h.normal;
          },
      },
      omega);
}

ProxResult prox(const GSpec& g, const SetSpec& omega, double gamma, const Vec& x, double tol) {
  if (!(gamma > 0)) throw InputError("gamma must be positive");
  const int d = static_cast<int>(x.size());

  if (std::holds_alternative<ZeroFunction>(g)) return {project(omega, x), ProxMethod::ClosedForm, 0.0};

  if (!is_box_like(omega)) {
    throw UnsupportedPair("prox: nonzero g over a ball or halfspace has no closed form and is not separable");
  }
  const Box box = as_box(omega, d);
  if (box.lo.size() != d) throw InputError("prox: dimension mismatch between x and omega");

  return std::visit(
      overloaded{
          [&](const ZeroFunction&) -> ProxResult { return {clamp_box(x, box), ProxMethod::ClosedForm, 0.0}; },
          [&](const SeparableQuadratic& q) -> ProxResult {
            if (q.a.size() != d) throw InputError("prox: dimension mismatch between x and g");
            // Stationarity of gamma*(a v^2 + b v) + (v - x)^2/2, then clamp.
            Vec v = ((x - gamma * q.b).array() / (1.0 + 2.0 * gamma * q.a.array())).matrix();
            return {clamp_box(v, box), ProxMethod::ClosedForm, 0.0};
          },
          [&](const L1Norm& l) -> ProxResult {
            Vec v = x.unaryExpr([&](double xi) { return soft_threshold(xi, gamma * l.weight); });
            return {clamp_box(v, box), ProxMethod::ClosedForm, 0.0};
          },
          [&](const SeparableCustom1D& s) -> ProxResult {
            if (static_cast<int>(s.names.size()) != d) {
              throw InputError("prox: dimension mismatch between x and g");
            }
            Vec v(d);
            double worst = 0.0;
            for (int i = 0; i < d; ++i) {
              const ConvexScalarFn* fn = find_scalar_function(s.names[static_cast<std::size_t>(i)]);
              if (fn == nullptr) throw InputError("unknown custom1d function '" + s.names[i] + "'");
              auto [vi, ri] = prox_bisect_1d_with_residual(*fn, box.lo[i], box.hi[i], gamma, x[i], tol);
              v[i] = vi;
              worst = std::max(worst, ri);
            }
            return {v, ProxMethod::Bisection, worst};
          },
      },
      g);
}

}  // namespace gimvip
