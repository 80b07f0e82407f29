#include "gimvip/constants.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace gimvip {

namespace {

constexpr double kRadicandSlack = 1e-12;

double min_sym_eigenvalue(const Mat& a) {
  const Mat sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double spectral_norm(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

// Largest rho with <Mx, x> >= rho ||Mx||^2 for all x.
double cocoercivity(const Mat& m) {
  const Eigen::Index d = m.rows();
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  if (smax == 0.0) return std::numeric_limits<double>::infinity();
  const double tol = smax * static_cast<double>(d) * std::numeric_limits<double>::epsilon() * 16;
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol) ++rank;

  if (rank == d) {
    // y = Mx turns the ratio into <y, M^{-1} y> / ||y||^2.
    return min_sym_eigenvalue(m.inverse());
  }
  // Singular M: cocoercive only if ker(M) is orthogonal to range(M); then the
  // ratio lives on range(M) with the pseudo-inverse.
  const Mat u_range = svd.matrixU().leftCols(rank);
  const Mat v_null = svd.matrixV().rightCols(d - rank);
  if ((u_range.transpose() * v_null).norm() > 1e-9) return -std::numeric_limits<double>::infinity();
  const Mat pinv = svd.matrixV().leftCols(rank) * s.head(rank).cwiseInverse().asDiagonal() *
                   u_range.transpose();
  return min_sym_eigenvalue(u_range.transpose() * pinv * u_range);
}

}  // namespace

void refresh_derived(ConstantsReport& r) {
  double rad = r.beta * r.beta + r.alpha * r.alpha - 2.0 * r.mu;
  if (rad < 0 && rad > -kRadicandSlack) rad = 0.0;
  if (rad < 0 || !std::isfinite(rad)) {
    r.derived_valid = false;
    r.lambda_const = r.gamma_const = r.m = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  r.derived_valid = true;
  r.lambda_const = std::sqrt(rad);
  r.gamma_const = r.lambda_const + r.alpha;
  r.m = r.sigma - r.lambda_const;
}

ConstantsReport exact_constants_affine(const ProblemInstance& p) {
  if (!is_linear_affine(p.F) || !is_linear_affine(p.h)) {
    throw InputError("exact_constants_affine: F and h must be affine; use estimate_constants");
  }
  const Mat mf = operator_matrix(p.F, p.d);
  const Mat mh = operator_matrix(p.h, p.d);

  ConstantsReport r;
  r.alpha = spectral_norm(mh);
  r.lambda_mono = min_sym_eigenvalue(mh);
  r.mu = min_sym_eigenvalue(mf.transpose() * mh);
  r.beta = spectral_norm(mf);
  r.sigma = min_sym_eigenvalue(mf);
  r.rho = cocoercivity(mf);
  r.source = ExactAffineSource{};
  refresh_derived(r);
  return r;
}

ConstantsReport estimate_constants(const ProblemInstance& p, int n_samples, double radius, std::uint64_t seed) {
  if (n_samples < 2) throw InputError("estimate_constants: degenerate sampling, need at least 2 samples");
  if (!(radius > 0)) throw InputError("estimate_constants: radius must be positive");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-radius, radius);

  double alpha = 0, beta = 0;
  double lambda = kInf, mu = kInf, rho = kInf, sigma = kInf;
  int used = 0;
  Vec u(p.d), v(p.d);
  for (int s = 0; s < n_samples; ++s) {
    for (int i = 0; i < p.d; ++i) u[i] = unif(rng);
    for (int i = 0; i < p.d; ++i) v[i] = unif(rng);
    const Vec du = u - v;
    const double du2 = du.squaredNorm();
    if (du2 == 0.0) continue;
    ++used;
    const Vec dF = eval_operator(p.F, u) - eval_operator(p.F, v);
    const Vec dh = eval_operator(p.h, u) - eval_operator(p.h, v);
    const double dn = std::sqrt(du2);
    alpha = std::max(alpha, dh.norm() / dn);
    beta = std::max(beta, dF.norm() / dn);
    lambda = std::min(lambda, dh.dot(du) / du2);
    mu = std::min(mu, dF.dot(dh) / du2);
    sigma = std::min(sigma, dF.dot(du) / du2);
    const double dF2 = dF.squaredNorm();
    if (dF2 >= 1e-28) rho = std::min(rho, dF.dot(du) / dF2);
  }
  if (used == 0) throw InputError("estimate_constants: degenerate sampling, all pairs coincide");

  ConstantsReport r;
  r.alpha = alpha;
  r.lambda_mono = lambda;
  r.mu = mu;
  r.rho = rho;
  r.beta = beta;
  r.sigma = sigma;
  r.source = EmpiricalSource{n_samples, radius, seed};
  refresh_derived(r);
  return r;
}

ConstantsReport constants_for(const ProblemInstance& p, int n_samples, double radius, std::uint64_t seed) {
  if (is_linear_affine(p.F) && is_linear_affine(p.h)) return exact_constants_affine(p);
  return estimate_constants(p, n_samples, radius, seed);
}

AssumptionVerdict check_assumption_a(const ConstantsReport& r) {
  AssumptionVerdict v;
  double rad_couple = r.beta * r.beta + r.alpha * r.alpha - 2.0 * r.mu;
  double rad_h = 1.0 - 2.0 * r.lambda_mono + r.alpha * r.alpha;
  if (rad_couple < 0 && rad_couple > -kRadicandSlack) rad_couple = 0.0;
  if (rad_h < 0 && rad_h > -kRadicandSlack) rad_h = 0.0;
  if (!(rad_couple >= 0)) {
    v.valid = false;
    v.message = "invalid report: beta^2 + alpha^2 - 2 mu = " + std::to_string(rad_couple) + " is negative";
    return v;
  }
  if (!(rad_h >= 0)) {
    v.valid = false;
    v.message = "invalid report: 1 - 2 lambda + alpha^2 = " + std::to_string(rad_h) + " is negative";
    return v;
  }
  const double big_lambda = std::sqrt(rad_couple);
  v.cond_iii_lhs = big_lambda + std::sqrt(rad_h);
  v.cond_iii_pass = v.cond_iii_lhs < 1.0;
  v.margin_iii = 1.0 - v.cond_iii_lhs;
  v.margin_iv = r.rho - big_lambda;
  v.cond_iv_pass = v.margin_iv > 0;
  v.margin_contraction = r.sigma - big_lambda;
  v.contraction_pass = v.margin_contraction > 0;
  return v;
}

}  // namespace gimvip
