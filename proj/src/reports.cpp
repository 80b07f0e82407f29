#include "gimvip/reports.hpp"

#include <cmath>

#include "gimvip/detail/overloaded.hpp"

namespace gimvip {

nlohmann::json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::json json_vector(const Vec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(json_number(v[i]));
  return out;
}

nlohmann::json constants_json(const ConstantsReport& r, const AssumptionVerdict& v) {
  nlohmann::json source = std::visit(
      detail::overloaded{
          [](const ExactAffineSource&) -> nlohmann::json { return {{"type", "exact_affine"}}; },
          [](const EmpiricalSource& e) -> nlohmann::json {
            return {{"type", "empirical"}, {"samples", e.samples}, {"radius", e.radius}, {"seed", e.seed}};
          },
      },
      r.source);
  nlohmann::json verdict = {
      {"valid", v.valid},
      {"message", v.message},
      {"cond_iii_lhs", json_number(v.cond_iii_lhs)},
      {"cond_iii_pass", v.cond_iii_pass},
      {"cond_iv_pass", v.cond_iv_pass},
      {"contraction_pass", v.contraction_pass},
      {"margin_iii", json_number(v.margin_iii)},
      {"margin_iv", json_number(v.margin_iv)},
      {"margin_contraction", json_number(v.margin_contraction)},
      {"all_pass", v.all_pass()},
  };
  return {
      {"alpha", json_number(r.alpha)}, {"lambda", json_number(r.lambda_mono)},
      {"mu", json_number(r.mu)},       {"rho", json_number(r.rho)},
      {"beta", json_number(r.beta)},   {"sigma", json_number(r.sigma)},
      {"Gamma", json_number(r.gamma_const)}, {"Lambda", json_number(r.lambda_const)},
      {"m", json_number(r.m)},         {"source", source},
      {"verdict", verdict},
  };
}

nlohmann::json certificate_json(const CertificateReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json item = {
        {"name", c.name},
        {"worst_violation", json_number(c.worst_violation)},
        {"pass", c.pass},
        {"informational", c.informational},
    };
    item["worst_point"] = c.worst_point ? json_vector(*c.worst_point) : nlohmann::json(nullptr);
    checks.push_back(item);
  }
  nlohmann::json out = {
      {"regime", report.regime},
      {"predicted_bound", json_number(report.predicted_bound)},
      {"bound_respected", report.bound_respected},
      {"checks", checks},
      {"reference_solution", json_vector(report.reference_solution)},
      {"all_pass", report.all_pass()},
  };
  out["constants"] = constants_json(report.constants_used, check_assumption_a(report.constants_used));
  out["observed"] = report.observed ? json_number(*report.observed) : nlohmann::json(nullptr);
  return out;
}

}  // namespace gimvip
