#pragma once

#include <Eigen/Core>

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gimvip/errors.hpp"

namespace gimvip {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Throws InputError naming `what` unless every entry is finite.
void require_finite(const Vec& v, std::string_view what);

// ---------------------------------------------------------------------------
// Operators F and h
// ---------------------------------------------------------------------------

struct Affine {
  Mat matrix;
  Vec offset;
};

/// Shorthand for c * I.
struct ScalarLinear {
  double coefficient = 1.0;
};

/// A name resolved against the compiled-in operator registry.
struct CustomOperator {
  std::string name;
};

using OperatorSpec = std::variant<Affine, ScalarLinear, CustomOperator>;

using OperatorFn = std::function<Vec(const Vec&)>;

/// Returns nullptr when `name` is not registered.
const OperatorFn* find_operator(std::string_view name);
std::vector<std::string> registered_operators();

Vec eval_operator(const OperatorSpec& op, const Vec& w);

/// True for Affine and ScalarLinear.
bool is_linear_affine(const OperatorSpec& op);

/// Dense matrix of an Affine/ScalarLinear operator in dimension d.
Mat operator_matrix(const OperatorSpec& op, int d);

// ---------------------------------------------------------------------------
// Convex function g
// ---------------------------------------------------------------------------

struct ZeroFunction {};

/// g(v) = sum_i a_i v_i^2 + b_i v_i + c, a_i >= 0.
struct SeparableQuadratic {
  Vec a;
  Vec b;
  double c = 0.0;
};

/// g(v) = weight * ||v||_1.
struct L1Norm {
  double weight = 1.0;
};

/// g(v) = sum_i g_i(v_i) with each g_i taken from the scalar registry.
struct SeparableCustom1D {
  std::vector<std::string> names;
};

using GSpec = std::variant<ZeroFunction, SeparableQuadratic, L1Norm, SeparableCustom1D>;

/// A finite convex function of one variable with one-sided derivatives.
/// `kinks` lists the points where the left and right derivatives differ.
struct ConvexScalarFn {
  std::function<double(double)> value;
  std::function<std::pair<double, double>(double)> subdifferential;
  std::vector<double> kinks;
};

const ConvexScalarFn* find_scalar_function(std::string_view name);
std::vector<std::string> registered_scalar_functions();

double eval_g(const GSpec& g, const Vec& v);

// ---------------------------------------------------------------------------
// Closed convex set Omega
// ---------------------------------------------------------------------------

struct WholeSpace {};
struct NonnegativeOrthant {};

/// Componentwise bounds; entries may be -inf / +inf.
struct Box {
  Vec lo;
  Vec hi;
};

struct Ball {
  Vec center;
  double radius = 1.0;
};

/// { x : <normal, x> <= offset }.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

using SetSpec = std::variant<WholeSpace, NonnegativeOrthant, Box, Ball, Halfspace>;

/// WholeSpace, NonnegativeOrthant and Box all normalize to a Box.
bool is_box_like(const SetSpec& omega);
Box as_box(const SetSpec& omega, int d);

bool contains(const SetSpec& omega, const Vec& x, double tol = 1e-12);

// ---------------------------------------------------------------------------
// Problem
// ---------------------------------------------------------------------------

struct ProblemInstance {
  int d = 1;
  OperatorSpec F = ScalarLinear{1.0};
  OperatorSpec h = ScalarLinear{1.0};
  GSpec g = ZeroFunction{};
  SetSpec omega = WholeSpace{};
  double gamma = 1.0;
};

/// Checks every invariant; throws InputError with the offending field.
void validate(const ProblemInstance& p);

/// h(w) = w/2, F(w) = 3w/4, g(v) = v^2 + 2v + 1, Omega = [0, inf), gamma = 1.
ProblemInstance builtin_example1();

/// Resolves a builtin name ("example1"); throws InputError otherwise.
ProblemInstance builtin_problem(std::string_view name);

ProblemInstance load_problem(std::string_view document);
ProblemInstance load_problem_file(const std::string& path);
std::string save_problem(const ProblemInstance& p);

/// Parses "a,b,c" (or a single scalar broadcast to d entries).
Vec parse_vector(std::string_view text, int d);

}  // namespace gimvip
