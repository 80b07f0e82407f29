#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "gimvip/model.hpp"

namespace gimvip {

struct ExactAffineSource {};

struct EmpiricalSource {
  int samples = 0;
  double radius = 0.0;
  std::uint64_t seed = 0;
};

using ConstantsSource = std::variant<ExactAffineSource, EmpiricalSource>;

/// Operator constants of a problem instance together with the derived
/// quantities Gamma = Lambda + alpha, Lambda = sqrt(alpha^2 + beta^2 - 2 mu)
/// and the contraction modulus m = sigma - Lambda.
///
/// sigma (strong monotonicity of F) is what the residual lower bound actually
/// needs; rho - Lambda is carried alongside for comparison only.
struct ConstantsReport {
  double alpha = 0.0;        ///< Lipschitz constant of h
  double lambda_mono = 0.0;  ///< monotonicity modulus of h
  double mu = 0.0;           ///< modulus of the couple (F, h)
  double rho = 0.0;          ///< cocoercivity of F
  double beta = 0.0;         ///< Lipschitz constant of F
  double sigma = 0.0;        ///< strong monotonicity of F

  /// False when beta^2 + alpha^2 - 2 mu < 0; Gamma, Lambda and m are then NaN.
  bool derived_valid = false;
  double gamma_const = 0.0;
  double lambda_const = 0.0;
  double m = 0.0;

  ConstantsSource source = ExactAffineSource{};

  /// rho - Lambda, the modulus as printed in the original lower bounds.
  double printed_modulus() const { return rho - lambda_const; }
};

/// Recomputes Gamma, Lambda and m from the primitive constants.
void refresh_derived(ConstantsReport& r);

struct AssumptionVerdict {
  bool valid = true;
  std::string message;

  double cond_iii_lhs = 0.0;
  bool cond_iii_pass = false;
  bool cond_iv_pass = false;
  bool contraction_pass = false;

  double margin_iii = 0.0;         ///< 1 - lhs
  double margin_iv = 0.0;          ///< rho - Lambda
  double margin_contraction = 0.0; ///< sigma - Lambda

  bool all_pass() const { return valid && cond_iii_pass && cond_iv_pass && contraction_pass; }
};

/// Exact constants for Affine / ScalarLinear F and h via symmetric eigenvalue
/// and singular value computations. Throws InputError for custom operators.
ConstantsReport exact_constants_affine(const ProblemInstance& p);

/// Sampled surrogates over pairs drawn uniformly from [-radius, radius]^d.
/// Deterministic for a fixed seed.
ConstantsReport estimate_constants(const ProblemInstance& p, int n_samples, double radius,
                                   std::uint64_t seed);

/// Exact constants when both operators are affine, sampled otherwise.
ConstantsReport constants_for(const ProblemInstance& p, int n_samples, double radius, std::uint64_t seed);

AssumptionVerdict check_assumption_a(const ConstantsReport& r);

}  // namespace gimvip
