#include <doctest.h>

#include <limits>
#include <random>

#include "gimvip/errors.hpp"
#include "gimvip/model.hpp"

using namespace gimvip;

namespace {

const char* kExample1Doc = R"({
  "dimension": 1,
  "F": {"type": "scalar_linear", "c": 0.75},
  "h": {"type": "scalar_linear", "c": 0.5},
  "g": {"type": "separable_quadratic", "a": [1], "b": [2], "c": 1},
  "omega": {"type": "nonnegative"},
  "gamma": 1
})";

Vec v1(double x) { return Vec::Constant(1, x); }

}  // namespace

TEST_CASE("load_problem accepts the scalar example document") {
  const ProblemInstance p = load_problem(kExample1Doc);
  CHECK(p.d == 1);
  CHECK(p.gamma == 1.0);
  CHECK(eval_operator(p.F, v1(12))[0] == doctest::Approx(9.0));
  CHECK(eval_operator(p.h, v1(-4))[0] == doctest::Approx(-2.0));
  CHECK(eval_g(p.g, v1(1.0)) == doctest::Approx(4.0));
  CHECK(std::holds_alternative<NonnegativeOrthant>(p.omega));
}

TEST_CASE("load_problem rejects invalid documents") {
  auto message_of = [](const std::string& doc) {
    try {
      load_problem(doc);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message_of(R"({"dimension":1,"F":{"type":"scalar_linear","c":1},"h":{"type":"scalar_linear","c":1},"gamma":0})")
            .find("gamma must be positive") != std::string::npos);
  CHECK(message_of(R"({"dimension":1,"F":{"type":"scalar_linear","c":1},"h":{"type":"scalar_linear","c":1},
                       "omega":{"type":"box","lo":[1],"hi":[0]},"gamma":1})")
            .find("empty box") != std::string::npos);
  CHECK(message_of(R"({"dimension":1,"F":{"type":"scalar_linear","c":1},"h":{"type":"scalar_linear","c":1},
                       "gamma":1,"extra":3})") != "no error");
  CHECK(message_of(R"({"dimension":2,"F":{"type":"affine","matrix":[[1,0]]},"h":{"type":"scalar_linear","c":1},
                       "gamma":1})") != "no error");
  CHECK(message_of(R"({"dimension":1,"F":{"type":"custom","name":"nope"},"h":{"type":"scalar_linear","c":1},
                       "gamma":1})") != "no error");
  CHECK(message_of("{not json") != "no error");
}

TEST_CASE("eval_operator on simple maps") {
  CHECK(eval_operator(ScalarLinear{0.75}, v1(12))[0] == 9.0);
  CHECK(eval_operator(ScalarLinear{0.5}, v1(-4))[0] == -2.0);
  Vec w(3);
  w << 1.5, -2.0, 7.0;
  const Vec out = eval_operator(Affine{Mat::Identity(3, 3), Vec::Zero(3)}, w);
  CHECK((out - w).norm() == 0.0);
}

TEST_CASE("builtin example matches its definition") {
  const ProblemInstance p = builtin_example1();
  CHECK(p.d == 1);
  CHECK(p.gamma == 1.0);
  CHECK(eval_operator(p.F, v1(4))[0] == doctest::Approx(3.0));
  CHECK(eval_operator(p.h, v1(4))[0] == doctest::Approx(2.0));
  CHECK(eval_g(p.g, v1(-1.0)) == doctest::Approx(0.0));
  CHECK(contains(p.omega, v1(0.0)));
  CHECK_FALSE(contains(p.omega, v1(-1e-6)));
  CHECK_THROWS_AS(builtin_problem("example2"), InputError);
}

TEST_CASE("affine evaluation is linear plus offset") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  const int d = 4;
  Mat m(d, d);
  Vec q(d);
  for (int i = 0; i < d; ++i) {
    q[i] = u(rng);
    for (int j = 0; j < d; ++j) m(i, j) = u(rng);
  }
  const Affine op{m, q};
  for (int trial = 0; trial < 200; ++trial) {
    Vec a(d), b(d);
    for (int i = 0; i < d; ++i) {
      a[i] = u(rng);
      b[i] = u(rng);
    }
    const double s = u(rng), t = u(rng);
    const Vec lhs = eval_operator(op, s * a + t * b) - q;
    const Vec rhs = s * (eval_operator(op, a) - q) + t * (eval_operator(op, b) - q);
    CHECK((lhs - rhs).norm() <= 1e-12 * (1 + rhs.norm()));
  }
}

TEST_CASE("save and reload keep operator evaluations bit-identical") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  const int d = 3;
  ProblemInstance p;
  p.d = d;
  Mat m(d, d);
  Vec q(d);
  for (int i = 0; i < d; ++i) {
    q[i] = u(rng) / 7.0;
    for (int j = 0; j < d; ++j) m(i, j) = u(rng) / 3.0;
  }
  p.F = Affine{m, q};
  p.h = CustomOperator{"linear_plus_half_tanh"};
  p.g = SeparableCustom1D{{"huber", "abs", "softplus"}};
  Vec lo(d), hi(d);
  lo << -1, -std::numeric_limits<double>::infinity(), 0;
  hi << 1, 2, std::numeric_limits<double>::infinity();
  p.omega = Box{lo, hi};
  p.gamma = 0.3;

  const ProblemInstance back = load_problem(save_problem(p));
  CHECK(save_problem(back) == save_problem(p));
  for (int trial = 0; trial < 100; ++trial) {
    Vec w(d);
    for (int i = 0; i < d; ++i) w[i] = u(rng) * 10;
    CHECK((eval_operator(back.F, w) - eval_operator(p.F, w)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((eval_operator(back.h, w) - eval_operator(p.h, w)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(eval_g(back.g, w) == eval_g(p.g, w));
  }
}

TEST_CASE("every set form survives a round trip") {
  Vec c(2), n(2);
  c << 0.5, -1;
  n << 1, 2;
  const std::vector<SetSpec> sets{WholeSpace{}, NonnegativeOrthant{}, Ball{c, 2.0}, Halfspace{n, 0.25}};
  for (const auto& s : sets) {
    ProblemInstance p;
    p.d = 2;
    p.omega = s;
    p.g = L1Norm{0.5};
    const ProblemInstance back = load_problem(save_problem(p));
    CHECK(back.omega.index() == s.index());
    CHECK(save_problem(back) == save_problem(p));
  }
}

TEST_CASE("validate catches dimension and range errors") {
  ProblemInstance p;
  p.d = 2;
  p.F = Affine{Mat::Identity(3, 3), Vec::Zero(3)};
  CHECK_THROWS_AS(validate(p), InputError);
  p = ProblemInstance{};
  p.g = SeparableQuadratic{v1(-1.0), v1(0.0), 0.0};
  CHECK_THROWS_AS(validate(p), InputError);
  p = ProblemInstance{};
  p.omega = Ball{v1(0.0), -1.0};
  CHECK_THROWS_AS(validate(p), InputError);
  p = ProblemInstance{};
  p.gamma = -2;
  CHECK_THROWS_AS(validate(p), InputError);
}

TEST_CASE("parse_vector broadcasts a scalar and checks length") {
  CHECK(parse_vector("2.5", 3) == Vec::Constant(3, 2.5));
  const Vec v = parse_vector("1,-2,3e2", 3);
  CHECK(v[2] == 300.0);
  CHECK_THROWS_AS(parse_vector("1,2", 3), InputError);
  CHECK_THROWS_AS(parse_vector("abc", 1), InputError);
}

TEST_CASE("registries expose their names") {
  CHECK(find_operator("identity") != nullptr);
  CHECK(find_operator("missing") == nullptr);
  CHECK(find_scalar_function("abs") != nullptr);
  CHECK(registered_scalar_functions().size() >= 4);
  CHECK(registered_operators().size() >= 2);
}
