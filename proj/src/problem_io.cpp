// JSON problem documents. Keys are strict: anything not listed here is rejected.

#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "gimvip/detail/overloaded.hpp"
#include "gimvip/model.hpp"

namespace gimvip {

namespace {

using json = nlohmann::json;
using detail::overloaded;

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw InputError(where + "." + key + ": unknown key");
  }
}

const json& field(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + "." + key + ": missing required field");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected a number");
  return v.get<double>();
}

// Accepts numbers, null (meaning `unbounded`) and the strings "inf"/"-inf".
double bound(const json& v, const std::string& where, double unbounded) {
  if (v.is_null()) return unbounded;
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    throw InputError(where + ": expected a number, null, \"inf\" or \"-inf\"");
  }
  return number(v, where);
}

Vec vector_of(const json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where + ": expected an array of numbers");
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = number(v[i], where + "[" + std::to_string(i) + "]");
  }
  return out;
}

Vec bounds_of(const json& v, const std::string& where, double unbounded) {
  if (!v.is_array()) throw InputError(where + ": expected an array");
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = bound(v[i], where + "[" + std::to_string(i) + "]", unbounded);
  }
  return out;
}

std::string type_of(const json& obj, const std::string& where) {
  const json& t = field(obj, where, "type");
  if (!t.is_string()) throw InputError(where + ".type: expected a string");
  return t.get<std::string>();
}

OperatorSpec parse_operator(const json& obj, const std::string& where, int d) {
  const std::string type = type_of(obj, where);
  if (type == "affine") {
    check_keys(obj, where, {"type", "matrix", "offset"});
    const json& m = field(obj, where, "matrix");
    if (!m.is_array()) throw InputError(where + ".matrix: expected an array of rows");
    Mat matrix(static_cast<Eigen::Index>(m.size()), d);
    for (std::size_t r = 0; r < m.size(); ++r) {
      Vec row = vector_of(m[r], where + ".matrix[" + std::to_string(r) + "]");
      if (row.size() != d) {
        throw InputError(where + ".matrix[" + std::to_string(r) + "]: dimension mismatch, expected " +
                         std::to_string(d) + " columns");
      }
      matrix.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    Vec offset = obj.contains("offset") ? vector_of(obj["offset"], where + ".offset") : Vec::Zero(d);
    return Affine{matrix, offset};
  }
  if (type == "scalar_linear") {
    check_keys(obj, where, {"type", "c"});
    return ScalarLinear{number(field(obj, where, "c"), where + ".c")};
  }
  if (type == "custom") {
    check_keys(obj, where, {"type", "name"});
    const json& n = field(obj, where, "name");
    if (!n.is_string()) throw InputError(where + ".name: expected a string");
    return CustomOperator{n.get<std::string>()};
  }
  throw InputError(where + ".type: unknown operator type '" + type + "'");
}

GSpec parse_g(const json& obj, int d) {
  const std::string where = "g";
  const std::string type = type_of(obj, where);
  if (type == "zero") {
    check_keys(obj, where, {"type"});
    return ZeroFunction{};
  }
  if (type == "separable_quadratic") {
    check_keys(obj, where, {"type", "a", "b", "c"});
    Vec a = vector_of(field(obj, where, "a"), "g.a");
    Vec b = obj.contains("b") ? vector_of(obj["b"], "g.b") : Vec::Zero(d);
    double c = obj.contains("c") ? number(obj["c"], "g.c") : 0.0;
    return SeparableQuadratic{a, b, c};
  }
  if (type == "l1") {
    check_keys(obj, where, {"type", "weight"});
    return L1Norm{number(field(obj, where, "weight"), "g.weight")};
  }
  if (type == "custom1d") {
    check_keys(obj, where, {"type", "names"});
    const json& n = field(obj, where, "names");
    if (!n.is_array()) throw InputError("g.names: expected an array of strings");
    SeparableCustom1D out;
    for (const auto& e : n) {
      if (!e.is_string()) throw InputError("g.names: expected an array of strings");
      out.names.push_back(e.get<std::string>());
    }
    // A single name applies to every coordinate.
    if (out.names.size() == 1 && d > 1) out.names.assign(static_cast<std::size_t>(d), out.names[0]);
    return out;
  }
  throw InputError("g.type: unknown function type '" + type + "'");
}

SetSpec parse_omega(const json& obj) {
  const std::string where = "omega";
  const std::string type = type_of(obj, where);
  if (type == "whole_space") {
    check_keys(obj, where, {"type"});
    return WholeSpace{};
  }
  if (type == "nonnegative") {
    check_keys(obj, where, {"type"});
    return NonnegativeOrthant{};
  }
  if (type == "box") {
    check_keys(obj, where, {"type", "lo", "hi"});
    return Box{bounds_of(field(obj, where, "lo"), "omega.lo", -kInf),
               bounds_of(field(obj, where, "hi"), "omega.hi", kInf)};
  }
  if (type == "ball") {
    check_keys(obj, where, {"type", "center", "radius"});
    return Ball{vector_of(field(obj, where, "center"), "omega.center"),
                number(field(obj, where, "radius"), "omega.radius")};
  }
  if (type == "halfspace") {
    check_keys(obj, where, {"type", "normal", "offset"});
    return Halfspace{vector_of(field(obj, where, "normal"), "omega.normal"),
                     number(field(obj, where, "offset"), "omega.offset")};
  }
  throw InputError("omega.type: unknown set type '" + type + "'");
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

json bound_json(const Vec& v) {
  json out = json::array();
  for (double x : v) {
    if (std::isfinite(x)) {
      out.push_back(x);
    } else {
      out.push_back(x > 0 ? "inf" : "-inf");
    }
  }
  return out;
}

json operator_json(const OperatorSpec& op) {
  return std::visit(overloaded{
                        [](const Affine& a) {
                          json rows = json::array();
                          for (Eigen::Index r = 0; r < a.matrix.rows(); ++r) {
                            rows.push_back(vec_json(a.matrix.row(r).transpose()));
                          }
                          return json{{"type", "affine"}, {"matrix", rows}, {"offset", vec_json(a.offset)}};
                        },
                        [](const ScalarLinear& s) {
                          return json{{"type", "scalar_linear"}, {"c", s.coefficient}};
                        },
                        [](const CustomOperator& c) { return json{{"type", "custom"}, {"name", c.name}}; },
                    },
                    op);
}

}  // namespace

ProblemInstance load_problem(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("problem document is not valid JSON: ") + e.what());
  }
  check_keys(doc, "problem", {"dimension", "F", "h", "g", "omega", "gamma"});

  const json& dim = field(doc, "problem", "dimension");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) {
    throw InputError("problem.dimension: expected a positive integer");
  }
  ProblemInstance p;
  p.d = static_cast<int>(dim.get<long long>());
  p.F = parse_operator(field(doc, "problem", "F"), "F", p.d);
  p.h = parse_operator(field(doc, "problem", "h"), "h", p.d);
  p.g = doc.contains("g") ? parse_g(doc["g"], p.d) : GSpec{ZeroFunction{}};
  p.omega = doc.contains("omega") ? parse_omega(doc["omega"]) : SetSpec{WholeSpace{}};
  p.gamma = number(field(doc, "problem", "gamma"), "gamma");
  validate(p);
  return p;
}

ProblemInstance load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_problem(buf.str());
}

std::string save_problem(const ProblemInstance& p) {
  json doc;
  doc["dimension"] = p.d;
  doc["F"] = operator_json(p.F);
  doc["h"] = operator_json(p.h);
  doc["g"] = std::visit(
      overloaded{
          [](const ZeroFunction&) { return json{{"type", "zero"}}; },
          [](const SeparableQuadratic& q) {
            return json{{"type", "separable_quadratic"}, {"a", vec_json(q.a)}, {"b", vec_json(q.b)}, {"c", q.c}};
          },
          [](const L1Norm& l) { return json{{"type", "l1"}, {"weight", l.weight}}; },
          [](const SeparableCustom1D& s) { return json{{"type", "custom1d"}, {"names", s.names}}; },
      },
      p.g);
  doc["omega"] = std::visit(
      overloaded{
          [](const WholeSpace&) { return json{{"type", "whole_space"}}; },
          [](const NonnegativeOrthant&) { return json{{"type", "nonnegative"}}; },
          [](const Box& b) { return json{{"type", "box"}, {"lo", bound_json(b.lo)}, {"hi", bound_json(b.hi)}}; },
          [](const Ball& b) {
            return json{{"type", "ball"}, {"center", vec_json(b.center)}, {"radius", b.radius}};
          },
          [](const Halfspace& h) {
            return json{{"type", "halfspace"}, {"normal", vec_json(h.normal)}, {"offset", h.offset}};
          },
      },
      p.omega);
  doc["gamma"] = p.gamma;
  return doc.dump(2);
}

}  // namespace gimvip
