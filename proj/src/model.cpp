#include "gimvip/model.hpp"

#include "gimvip/detail/overloaded.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>

namespace gimvip {

namespace {

using detail::overloaded;

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::map<std::string, OperatorFn, std::less<>>& operator_registry() {
  static const std::map<std::string, OperatorFn, std::less<>> registry = {
      {"identity", [](const Vec& w) -> Vec { return w; }},
      // 1-strongly monotone, 1.5-Lipschitz.
      {"linear_plus_half_tanh",
       [](const Vec& w) -> Vec { return w + 0.5 * w.array().tanh().matrix(); }},
      // 0.5-strongly monotone, 0.75-Lipschitz.
      {"half_linear_plus_quarter_atan",
       [](const Vec& w) -> Vec { return 0.5 * w + 0.25 * w.array().atan().matrix(); }},
  };
  return registry;
}

const std::map<std::string, ConvexScalarFn, std::less<>>& scalar_registry() {
  static const std::map<std::string, ConvexScalarFn, std::less<>> registry = {
      {"zero",
       {[](double) { return 0.0; }, [](double) { return std::pair{0.0, 0.0}; }, {}}},
      {"abs",
       {[](double v) { return std::abs(v); },
        [](double v) {
          if (v > 0) return std::pair{1.0, 1.0};
          if (v < 0) return std::pair{-1.0, -1.0};
          return std::pair{-1.0, 1.0};
        },
        {0.0}}},
      {"square",
       {[](double v) { return v * v; },
        [](double v) { return std::pair{2 * v, 2 * v}; },
        {}}},
      // Huber with threshold 1.
      {"huber",
       {[](double v) { return std::abs(v) <= 1 ? 0.5 * v * v : std::abs(v) - 0.5; },
        [](double v) {
          const double s = std::clamp(v, -1.0, 1.0);
          return std::pair{s, s};
        },
        {}}},
      {"softplus",
       {[](double v) { return v > 0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v)); },
        [](double v) {
          const double s = 1.0 / (1.0 + std::exp(-v));
          return std::pair{s, s};
        },
        {}}},
      // max(0, v)
      {"hinge",
       {[](double v) { return std::max(0.0, v); },
        [](double v) {
          if (v > 0) return std::pair{1.0, 1.0};
          if (v < 0) return std::pair{0.0, 0.0};
          return std::pair{0.0, 1.0};
        },
        {0.0}}},
  };
  return registry;
}

void require_dim(const Vec& v, int d, std::string_view what) {
  if (v.size() != d) {
    throw InputError(std::string(what) + ": expected dimension " + std::to_string(d) +
                     ", got " + std::to_string(v.size()));
  }
}

}  // namespace

void require_finite(const Vec& v, std::string_view what) {
  if (!v.allFinite()) throw InputError(std::string(what) + " must have finite entries");
}

const OperatorFn* find_operator(std::string_view name) {
  const auto& reg = operator_registry();
  auto it = reg.find(name);
  return it == reg.end() ? nullptr : &it->second;
}

std::vector<std::string> registered_operators() {
  std::vector<std::string> names;
  for (const auto& [k, _] : operator_registry()) names.push_back(k);
  return names;
}

const ConvexScalarFn* find_scalar_function(std::string_view name) {
  const auto& reg = scalar_registry();
  auto it = reg.find(name);
  return it == reg.end() ? nullptr : &it->second;
}

std::vector<std::string> registered_scalar_functions() {
  std::vector<std::string> names;
  for (const auto& [k, _] : scalar_registry()) names.push_back(k);
  return names;
}

Vec eval_operator(const OperatorSpec& op, const Vec& w) {
  return std::visit(
      overloaded{
          [&](const Affine& a) -> Vec {
            if (a.matrix.cols() != w.size()) {
              throw InputError("operator: dimension mismatch (matrix has " +
                               std::to_string(a.matrix.cols()) + " columns, w has " +
                               std::to_string(w.size()) + " entries)");
            }
            return a.matrix * w + a.offset;
          },
          [&](const ScalarLinear& s) -> Vec { return s.coefficient * w; },
          [&](const CustomOperator& c) -> Vec {
            const OperatorFn* fn = find_operator(c.name);
            if (fn == nullptr) throw InputError("unknown custom operator '" + c.name + "'");
            Vec out = (*fn)(w);
            if (out.size() != w.size()) throw InputError("custom operator changed dimension");
            return out;
          },
      },
      op);
}

bool is_linear_affine(const OperatorSpec& op) {
  return !std::holds_alternative<CustomOperator>(op);
}

Mat operator_matrix(const OperatorSpec& op, int d) {
  if (const auto* a = std::get_if<Affine>(&op)) return a->matrix;
  if (const auto* s = std::get_if<ScalarLinear>(&op)) return s->coefficient * Mat::Identity(d, d);
  throw InputError("operator_matrix: custom operators have no matrix");
}

double eval_g(const GSpec& g, const Vec& v) {
  return std::visit(
      overloaded{
          [&](const ZeroFunction&) { return 0.0; },
          [&](const SeparableQuadratic& q) {
            return (q.a.array() * v.array().square() + q.b.array() * v.array()).sum() + q.c;
          },
          [&](const L1Norm& l) { return l.weight * v.lpNorm<1>(); },
          [&](const SeparableCustom1D& s) {
            double total = 0.0;
            for (Eigen::Index i = 0; i < v.size(); ++i) {
              const ConvexScalarFn* fn = find_scalar_function(s.names.at(i));
              if (fn == nullptr) throw InputError("unknown custom1d function '" + s.names[i] + "'");
              total += fn->value(v[i]);
            }
            return total;
          },
      },
      g);
}

bool is_box_like(const SetSpec& omega) {
  return std::holds_alternative<WholeSpace>(omega) ||
         std::holds_alternative<NonnegativeOrthant>(omega) || std::holds_alternative<Box>(omega);
}

Box as_box(const SetSpec& omega, int d) {
  if (std::holds_alternative<WholeSpace>(omega)) {
    return {Vec::Constant(d, -kInf), Vec::Constant(d, kInf)};
  }
  if (std::holds_alternative<NonnegativeOrthant>(omega)) {
    return {Vec::Zero(d), Vec::Constant(d, kInf)};
  }
  if (const auto* b = std::get_if<Box>(&omega)) return *b;
  throw UnsupportedPair("set is not box-like");
}

bool contains(const SetSpec& omega, const Vec& x, double tol) {
  return std::visit(
      overloaded{
          [&](const WholeSpace&) { return true; },
          [&](const NonnegativeOrthant&) { return (x.array() >= -tol).all(); },
          [&](const Box& b) {
            return (x.array() >= b.lo.array() - tol).all() && (x.array() <= b.hi.array() + tol).all();
          },
          [&](const Ball& b) { return (x - b.center).norm() <= b.radius + tol; },
          [&](const Halfspace& h) { return h.normal.dot(x) <= h.offset + tol * h.normal.norm(); },
      },
      omega);
}

void validate(const ProblemInstance& p) {
  if (p.d < 1) throw InputError("dimension must be a positive integer");
  const int d = p.d;
  if (!(p.gamma > 0) || !std::isfinite(p.gamma)) throw InputError("gamma must be positive");

  auto check_op = [d](const OperatorSpec& op, std::string_view name) {
    std::visit(overloaded{
                   [&](const Affine& a) {
                     if (a.matrix.rows() != d || a.matrix.cols() != d) {
                       throw InputError(std::string(name) + ".matrix: expected " +
                                        std::to_string(d) + "x" + std::to_string(d) +
                                        " matrix, got " + std::to_string(a.matrix.rows()) + "x" +
                                        std::to_string(a.matrix.cols()));
                     }
                     if (!a.matrix.allFinite()) {
                       throw InputError(std::string(name) + ".matrix must have finite entries");
                     }
                     require_dim(a.offset, d, std::string(name) + ".offset");
                     require_finite(a.offset, std::string(name) + ".offset");
                   },
                   [&](const ScalarLinear& s) {
                     if (!std::isfinite(s.coefficient)) {
                       throw InputError(std::string(name) + ".c must be finite");
                     }
                   },
                   [&](const CustomOperator& c) {
                     if (find_operator(c.name) == nullptr) {
                       throw InputError(std::string(name) + ": unknown custom operator '" + c.name +
                                        "'");
                     }
                   },
               },
               op);
  };
  check_op(p.F, "F");
  check_op(p.h, "h");

  std::visit(overloaded{
                 [](const ZeroFunction&) {},
                 [&](const SeparableQuadratic& q) {
                   require_dim(q.a, d, "g.a");
                   require_dim(q.b, d, "g.b");
                   require_finite(q.a, "g.a");
                   require_finite(q.b, "g.b");
                   if ((q.a.array() < 0).any()) {
                     throw InputError("g.a: curvature entries must be nonnegative");
                   }
                   if (!std::isfinite(q.c)) throw InputError("g.c must be finite");
                 },
                 [](const L1Norm& l) {
                   if (!(l.weight >= 0) || !std::isfinite(l.weight)) {
                     throw InputError("g.weight must be nonnegative");
                   }
                 },
                 [&](const SeparableCustom1D& s) {
                   if (static_cast<int>(s.names.size()) != d) {
                     throw InputError("g.names: expected " + std::to_string(d) + " entries, got " +
                                      std::to_string(s.names.size()));
                   }
                   for (const auto& n : s.names) {
                     if (find_scalar_function(n) == nullptr) {
                       throw InputError("g.names: unknown custom1d function '" + n + "'");
                     }
                   }
                 },
             },
             p.g);

  std::visit(overloaded{
                 [](const WholeSpace&) {},
                 [](const NonnegativeOrthant&) {},
                 [&](const Box& b) {
                   require_dim(b.lo, d, "omega.lo");
                   require_dim(b.hi, d, "omega.hi");
                   if (b.lo.array().isNaN().any() || b.hi.array().isNaN().any()) {
                     throw InputError("omega: box bounds must not be NaN");
                   }
                   if ((b.lo.array() == kInf).any() || (b.hi.array() == -kInf).any()) {
                     throw InputError("empty box");
                   }
                   if ((b.lo.array() > b.hi.array()).any()) throw InputError("empty box");
                 },
                 [&](const Ball& b) {
                   require_dim(b.center, d, "omega.center");
                   require_finite(b.center, "omega.center");
                   if (!(b.radius > 0) || !std::isfinite(b.radius)) {
                     throw InputError("omega.radius must be positive");
                   }
                 },
                 [&](const Halfspace& h) {
                   require_dim(h.normal, d, "omega.normal");
                   require_finite(h.normal, "omega.normal");
                   if (h.normal.norm() == 0) throw InputError("omega.normal must be nonzero");
                   if (!std::isfinite(h.offset)) throw InputError("omega.offset must be finite");
                 },
             },
             p.omega);
}

ProblemInstance builtin_example1() {
  ProblemInstance p;
  p.d = 1;
  p.F = ScalarLinear{0.75};
  p.h = ScalarLinear{0.5};
  p.g = SeparableQuadratic{Vec::Constant(1, 1.0), Vec::Constant(1, 2.0), 1.0};
  p.omega = NonnegativeOrthant{};
  p.gamma = 1.0;
  return p;
}

ProblemInstance builtin_problem(std::string_view name) {
  if (name == "example1") return builtin_example1();
  throw InputError("unknown builtin problem '" + std::string(name) + "'");
}

Vec parse_vector(std::string_view text, int d) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string token(text.substr(pos, end - pos));
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    if (token.empty()) throw InputError("malformed vector '" + std::string(text) + "'");
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw InputError("malformed number '" + token + "'");
    }
    if (used != token.size()) throw InputError("malformed number '" + token + "'");
    values.push_back(v);
    pos = end + 1;
  }
  Vec out;
  if (values.size() == 1) {
    out = Vec::Constant(d, values[0]);
  } else if (static_cast<int>(values.size()) == d) {
    out = Eigen::Map<Vec>(values.data(), d);
  } else {
    throw InputError("vector has " + std::to_string(values.size()) + " entries, expected " +
                     std::to_string(d));
  }
  require_finite(out, "vector");
  return out;
}

}  // namespace gimvip
