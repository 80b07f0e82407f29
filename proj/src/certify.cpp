#include "gimvip/certify.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gimvip/residual.hpp"

namespace gimvip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

InequalityCheck make_check(std::string name, bool informational = false) {
  InequalityCheck c;
  c.name = std::move(name);
  c.informational = informational;
  return c;
}

void track(InequalityCheck& c, double violation, const Vec& at) {
  if (!c.worst_point || violation > c.worst_violation) {
    c.worst_violation = violation;
    c.worst_point = at;
  }
}

}  // namespace

bool CertificateReport::all_pass() const {
  if (!bound_respected) return false;
  for (const auto& c : checks) {
    if (!c.informational && !c.pass) return false;
  }
  return true;
}

void finalize_bound(CertificateReport& report) {
  report.bound_respected = !report.observed || *report.observed <= report.predicted_bound;
}

Vec reference_solution(const ProblemInstance& p, const ConstantsReport& r, double tol) {
  if (!r.derived_valid || !(r.m > 0) || !(r.gamma_const > 0)) {
    throw InputError("reference_solution requires a valid report with contraction modulus m > 0");
  }
  const double eta = r.m / (r.gamma_const * r.gamma_const);
  Vec w = Vec::Zero(p.d);
  ResidualSample s = xi(p, w);
  long it = 0;
  constexpr long kMaxIter = 1'000'000;
  while (s.xi.norm() > tol) {
    if (++it > kMaxIter) {
      throw NonConvergence("reference_solution: no convergence in 1e6 iterations (residual " +
                           std::to_string(s.xi.norm()) + ")");
    }
    w -= eta * s.xi;
    s = xi(p, w);
  }

  if (p.d == 1 && s.xi.norm() > 0) {
    // Xi is strictly increasing through the root, so a bracket of half-width
    // |Xi|/m around w contains it.
    const double half = 2.0 * s.xi.norm() / r.m;
    Vec lo = w.array() - half;
    Vec hi = w.array() + half;
    if (xi(p, lo).xi[0] < 0 && xi(p, hi).xi[0] > 0) {
      Vec best = w;
      double best_norm = s.xi.norm();
      for (int k = 0; k < 200 && lo[0] < hi[0]; ++k) {
        Vec mid = 0.5 * (lo + hi);
        const ResidualSample ms = xi(p, mid);
        if (ms.xi.norm() < best_norm) {
          best_norm = ms.xi.norm();
          best = mid;
        }
        if (ms.xi[0] == 0) break;
        (ms.xi[0] < 0 ? lo : hi) = mid;
        if (mid[0] == lo[0] && mid[0] == hi[0]) break;
      }
      w = best;
    }
  }
  return w;
}

double finite_time_bound(double dist0, double tau, double k, double m) {
  if (dist0 <= 0) return 0.0;
  if (!(m > 0) || !(tau > 0) || !(k > 2)) return kInf;
  const double p = k / (2.0 * (k - 1.0));
  const double K = std::pow(2.0, p) * tau * std::pow(m, 1.0 / (k - 1.0));
  return std::pow(dist0, 2.0 * (1.0 - p)) / (std::pow(2.0, 1.0 - p) * K * (1.0 - p));
}

double FixedTimeBoundParts::bound() const { return zeta_form ? std::min(generic, *zeta_form) : generic; }

FixedTimeBoundParts fixed_time_bound_parts(double A1, double A2, double s1, double s2) {
  FixedTimeBoundParts out;
  if (!(A1 > 0) || !(A2 > 0)) {
    out.generic = kInf;
    return out;
  }
  out.generic = 1.0 / (A1 * (1.0 - s1)) + 1.0 / (A2 * (s2 - 1.0));
  const double gap_low = 1.0 - s1;
  const double gap_high = s2 - 1.0;
  if (std::abs(gap_low - gap_high) <= 1e-12 * std::max(1.0, gap_low)) {
    const double chi = 1.0 / (2.0 * gap_low);
    if (chi > 1.0 + 1e-12) out.zeta_form = std::numbers::pi * chi / std::sqrt(A1 * A2);
  }
  return out;
}

double fixed_time_bound(double A1, double A2, double s1, double s2) {
  return fixed_time_bound_parts(A1, A2, s1, s2).bound();
}

ACoefficients a_coefficients(const FixedTimeParams& fp, double m, double Gamma) {
  const double ratio = fp.Gd / fp.Td;
  ACoefficients c;
  c.A1 = std::pow(2.0, (1.0 + fp.k1) / 2.0) * ratio * fp.a1 * m / std::pow(Gamma, 1.0 - fp.k1);
  c.A2 = std::pow(2.0, (1.0 + fp.k2) / 2.0) * ratio * std::pow(m, fp.k2) * fp.a2;
  return c;
}

double predefined_gd(double a1, double a2, double a3, double k1, double k2, double m, double Gamma) {
  // x1 = tau3/tau1 and x2 = tau3/tau2 of the Lyapunov decomposition.
  const double x1 = a3 * std::pow(std::sqrt(2.0), 1.0 - k1) * std::pow(Gamma, 1.0 - k1) / a1;
  const double x2 = a3 * std::pow(std::sqrt(2.0), 1.0 - k2) * std::pow(m, 1.0 - k2) / a2;
  if (a3 == 0.0) {
    const double c1 = std::pow(std::sqrt(2.0), 1.0 - k1) * std::pow(Gamma, 1.0 - k1) / a1;
    const double c2 = std::pow(std::sqrt(2.0), 1.0 - k2) * std::pow(m, 1.0 - k2) / a2;
    return c1 / (m * (1.0 - k1)) + c2 / (m * (k2 - 1.0));
  }
  return std::log1p(x1) / (a3 * m * (1.0 - k1)) + std::log1p(x2) / (a3 * m * (k2 - 1.0));
}

long envelope_horizon(double A1, double A2, double chi, double theta) {
  return static_cast<long>(std::ceil(chi * std::numbers::pi / (2.0 * theta * std::sqrt(A1 * A2))));
}

double discrete_envelope(long n, double A1, double A2, double chi, double theta, double eps) {
  if (n <= 0) return kInf;
  if (n >= envelope_horizon(A1, A2, chi, theta)) return eps;
  const double angle = std::numbers::pi / 2.0 - std::sqrt(A1 * A2) * theta * static_cast<double>(n) / chi;
  if (angle <= 0) return eps;
  return std::sqrt(2.0) * std::pow(std::sqrt(A1 / A2) * std::tan(angle), chi / 2.0) + eps;
}

std::vector<std::pair<double, double>> lyapunov_series(const Trajectory& traj, const Vec& wbar) {
  std::vector<std::pair<double, double>> out;
  out.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    if (s.w.size() != wbar.size()) throw InputError("lyapunov_series: dimension mismatch");
    out.emplace_back(s.t, 0.5 * (s.w - wbar).squaredNorm());
  }
  return out;
}

void attach_lyapunov(Trajectory& traj, const Vec& wbar) {
  const auto series = lyapunov_series(traj, wbar);
  for (std::size_t i = 0; i < series.size(); ++i) traj.samples[i].v_lyap = series[i].second;
}

namespace {

bool pre_settling(const Trajectory& traj, std::size_t i) {
  return !traj.settled_at || traj.samples[i].t < *traj.settled_at;
}

}  // namespace

std::vector<std::size_t> lyapunov_increases(const Trajectory& traj, const Vec& wbar) {
  const auto series = lyapunov_series(traj, wbar);
  std::vector<std::size_t> bad;
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (!pre_settling(traj, i - 1)) break;
    if (series[i].second >= series[i - 1].second) bad.push_back(i);
  }
  return bad;
}

DiffInequalityVerdict check_diff_inequality(const Trajectory& traj, const Vec& wbar, double A1, double A2,
                                            double s1, double s2, double slack_rel) {
  const auto series = lyapunov_series(traj, wbar);
  std::vector<std::size_t> pre;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (pre_settling(traj, i) && series[i].second > 0) pre.push_back(i);
  }
  DiffInequalityVerdict v;
  if (pre.empty()) return v;
  if (pre.size() < 3) throw InputError("check_diff_inequality: need at least 3 pre-settling samples");

  v.worst_violation = -kInf;
  for (std::size_t j = 1; j + 1 < pre.size(); ++j) {
    const std::size_t i = pre[j];
    if (pre[j - 1] != i - 1 || pre[j + 1] != i + 1) continue;
    const double h1 = series[i].first - series[i - 1].first;
    const double h2 = series[i + 1].first - series[i].first;
    const double v0 = series[i - 1].second, v1 = series[i].second, v2 = series[i + 1].second;
    const double vdot = -h2 / (h1 * (h1 + h2)) * v0 + (h2 - h1) / (h1 * h2) * v1 + h1 / (h2 * (h1 + h2)) * v2;
    const double bound = -(A1 * std::pow(v1, s1) + A2 * std::pow(v1, s2)) * (1.0 - slack_rel) + 1e-12;
    const double violation = vdot - bound;
    ++v.checked;
    if (violation > v.worst_violation) {
      v.worst_violation = violation;
      v.worst_t = series[i].first;
    }
  }
  if (v.checked == 0) v.worst_violation = 0.0;
  v.pass = v.worst_violation <= 0.0;
  return v;
}

std::vector<InequalityCheck> check_lemma_bdt(const ProblemInstance& p, const ConstantsReport& r, const Vec& wbar,
                                             int n_samples, double radius, std::uint64_t seed,
                                             const std::vector<Vec>& extra_points) {
  if (!r.derived_valid) throw InputError("check_lemma_bdt: constants report is invalid");
  if (wbar.size() != p.d) throw InputError("check_lemma_bdt: wbar dimension mismatch");

  InequalityCheck lipschitz = make_check("i_xi_lipschitz_Gamma");
  InequalityCheck contraction = make_check("ii_b_contraction_Lambda");
  InequalityCheck upper = make_check("iii_upper_Gamma");
  InequalityCheck lower_m = make_check("iii_lower_m");
  InequalityCheck corr_m = make_check("iv_correlation_m");
  InequalityCheck lower_printed = make_check("iii_lower_rho_minus_Lambda", true);
  InequalityCheck corr_printed = make_check("iv_correlation_rho_minus_Lambda", true);

  const double Gamma = r.gamma_const;
  const double Lambda = r.lambda_const;
  const double m = r.m;
  const double printed = r.printed_modulus();
  const ResidualSample at_bar = xi(p, wbar);

  auto point_checks = [&](const Vec& w) {
    const ResidualSample s = xi(p, w);
    const double dist = (w - wbar).norm();
    const double xn = s.xi.norm();
    const double corr = (w - wbar).dot(s.xi);
    track(contraction, (s.b - at_bar.b).norm() - Lambda * dist, w);
    track(upper, xn - Gamma * dist, w);
    track(lower_m, m * dist - xn, w);
    track(corr_m, m * dist * dist - corr, w);
    track(lower_printed, printed * dist - xn, w);
    track(corr_printed, printed * dist * dist - corr, w);
    return s;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-radius, radius);
  Vec u(p.d), v(p.d);
  for (int k = 0; k < n_samples; ++k) {
    for (int i = 0; i < p.d; ++i) u[i] = unif(rng);
    for (int i = 0; i < p.d; ++i) v[i] = unif(rng);
    const ResidualSample su = point_checks(u);
    const ResidualSample sv = xi(p, v);
    track(lipschitz, (su.xi - sv.xi).norm() - Gamma * (u - v).norm(), u);
  }
  for (const Vec& w : extra_points) point_checks(w);

  std::vector<InequalityCheck> out{lipschitz, contraction, upper, lower_m, corr_m, lower_printed, corr_printed};
  for (auto& c : out) c.pass = c.worst_violation <= kLemmaTolerance;
  return out;
}

}  // namespace gimvip
