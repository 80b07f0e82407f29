#pragma once

#include <json.hpp>

#include "gimvip/certify.hpp"
#include "gimvip/constants.hpp"

namespace gimvip {

/// Finite values as numbers; infinities and NaN as the strings "inf", "-inf", "nan".
nlohmann::json json_number(double v);
nlohmann::json json_vector(const Vec& v);

/// Keys: alpha, lambda, mu, rho, beta, sigma, Gamma, Lambda, m, source, verdict.
nlohmann::json constants_json(const ConstantsReport& r, const AssumptionVerdict& v);

/// Keys: predicted_bound, observed (null when absent), bound_respected,
/// checks[], regime, reference_solution, constants.
nlohmann::json certificate_json(const CertificateReport& report);

}  // namespace gimvip
