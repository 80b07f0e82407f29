#include "gimvip/shell.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "gimvip/certify.hpp"
#include "gimvip/constants.hpp"
#include "gimvip/detail/overloaded.hpp"
#include "gimvip/io.hpp"
#include "gimvip/iterate.hpp"
#include "gimvip/reports.hpp"

namespace gimvip {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CommonOpts {
  std::string problem;
  std::string builtin;
  std::string out_dir = ".";
  std::uint64_t seed = 42;
  int samples = 2000;
  double radius = 100.0;
};

struct FixedOpts {
  FixedTimeParams fp;
  bool auto_gd = false;
};

struct SimulateOpts {
  std::string regime = "fixed";
  double kappa = 1.0;
  double tau = 1.0;
  double k = 3.0;
  FixedOpts fixed;
  std::string w0 = "50";
  std::string scheme = "rk4";
  double dt = 1e-3;
  double t_max = 50.0;
  double settle_tol = 1e-9;
  int stride = 1;
  double dt_min = 1e-8;
  bool no_limiter = false;
};

struct SolveOpts {
  std::string method = "eq29";
  int iters = 150;
  std::string schedule = "paper";
  double theta = 0.0;
  double theta_min = 1e-4;
  double stop_tol = 1e-12;
  double eps = 1e-2;
  double tau = 1.0;
  double k = 2.0;
  double kappa = 1.0;
  FixedOpts fixed;
  std::string w0 = "50";
};

struct Context {
  std::ostream& out;
  std::ostream& err;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  auto* prob = sub->add_option("--problem", o.problem, "Problem JSON file");
  auto* bi = sub->add_option("--builtin", o.builtin, "Builtin problem name (example1)");
  prob->excludes(bi);
  sub->add_option("--out-dir", o.out_dir, "Directory for output files")->capture_default_str();
  sub->add_option("--seed", o.seed, "Seed for sampled constants and checks")->capture_default_str();
  sub->add_option("--samples", o.samples, "Sample count for constant estimation")->capture_default_str();
  sub->add_option("--radius", o.radius, "Sampling radius")->capture_default_str();
}

void add_fixed(CLI::App* sub, FixedOpts& o) {
  sub->add_option("--a1", o.fp.a1)->capture_default_str();
  sub->add_option("--a2", o.fp.a2)->capture_default_str();
  sub->add_option("--a3", o.fp.a3)->capture_default_str();
  sub->add_option("--k1", o.fp.k1)->capture_default_str();
  sub->add_option("--k2", o.fp.k2)->capture_default_str();
  sub->add_option("--k3", o.fp.k3)->capture_default_str();
  sub->add_option("--Gd", o.fp.Gd)->capture_default_str();
  sub->add_option("--Td", o.fp.Td)->capture_default_str();
  sub->add_flag("--auto-gd", o.auto_gd, "Set Gd to the predefined-time gain for Td");
}

ProblemInstance load(const CommonOpts& o) {
  if (o.problem.empty() == o.builtin.empty()) throw InputError("exactly one of --problem or --builtin is required");
  ProblemInstance p = o.problem.empty() ? builtin_problem(o.builtin) : load_problem_file(o.problem);
  validate(p);
  return p;
}

json manifest(const std::string& command, const CommonOpts& o) {
  return {{"command", command},
          {"problem", o.problem.empty() ? "builtin:" + o.builtin : o.problem},
          {"seed", o.seed},
          {"samples", o.samples},
          {"radius", o.radius}};
}

fs::path prepare_out_dir(const CommonOpts& o) {
  fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory '" + o.out_dir + "'");
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  f << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

bool usable(const ConstantsReport& r) { return r.derived_valid && r.m > 0 && r.gamma_const > 0; }

void apply_auto_gd(FixedOpts& o, const ConstantsReport& r) {
  if (!o.auto_gd) return;
  if (!usable(r)) throw InputError("--auto-gd needs a contraction modulus m > 0");
  o.fp.Gd = predefined_gd(o.fp.a1, o.fp.a2, o.fp.a3, o.fp.k1, o.fp.k2, r.m, r.gamma_const);
}

json fixed_json(const FixedTimeParams& fp) {
  return {{"a1", fp.a1}, {"a2", fp.a2}, {"a3", fp.a3}, {"k1", fp.k1},
          {"k2", fp.k2}, {"k3", fp.k3}, {"Gd", fp.Gd}, {"Td", fp.Td}};
}

/// Settling-time bound of the regime from w0; +inf when none applies.
double predicted_flow_bound(const RegimeConfig& rc, const ConstantsReport& r, double dist0) {
  if (!usable(r)) return kInf;
  return std::visit(
      detail::overloaded{
          [](const NominalRegime&) { return kInf; },
          [&](const FiniteTimeRegime& f) { return finite_time_bound(dist0, f.tau, f.k, r.m); },
          [&](const FixedTimeRegime& f) {
            const auto a = a_coefficients(f.params, r.m, r.gamma_const);
            double b = fixed_time_bound(a.A1, a.A2, (1 + f.params.k1) / 2, (1 + f.params.k2) / 2);
            if (f.params.k3 == 0.0 && f.params.a3 > 0) {
              const double gd = predefined_gd(f.params.a1, f.params.a2, f.params.a3, f.params.k1, f.params.k2,
                                               r.m, r.gamma_const);
              if (f.params.Gd >= gd * (1 - 1e-12)) b = std::min(b, f.params.Td);
            }
            return b;
          },
      },
      rc);
}

struct FlowRun {
  Trajectory traj;
  CertificateReport report;
  json extras;
};

FlowRun run_flow(const ProblemInstance& p, const ConstantsReport& r, SimulateOpts& o) {
  RegimeConfig rc;
  if (o.regime == "nominal") {
    rc = NominalRegime{o.kappa};
  } else if (o.regime == "finite") {
    rc = FiniteTimeRegime{o.tau, o.k};
  } else {
    if (o.regime == "predefined") {
      o.fixed.fp.k3 = 0.0;
      o.fixed.auto_gd = true;
    }
    apply_auto_gd(o.fixed, r);
    rc = FixedTimeRegime{o.fixed.fp};
  }
  validate(rc);

  IntegratorConfig ic;
  if (o.scheme == "euler") {
    ic.scheme = Scheme::EulerFixed;
  } else if (o.scheme == "rk4-adaptive") {
    ic.scheme = Scheme::RK4Adaptive;
  } else {
    ic.scheme = Scheme::RK4Fixed;
  }
  ic.dt = o.dt;
  ic.t_max = o.t_max;
  ic.settle_tol = o.settle_tol;
  ic.sample_stride = o.stride;
  ic.dt_min = o.dt_min;
  if (!o.no_limiter && usable(r)) ic.limiter = StepLimiter{r.m, r.gamma_const};
  validate(ic);

  const Vec w0 = parse_vector(o.w0, p.d);
  FlowRun run;
  run.traj = integrate(p, rc, w0, ic);
  run.report.regime = run.traj.regime;
  run.report.constants_used = r;
  run.report.predicted_bound = kInf;
  if (usable(r)) {
    const Vec wbar = reference_solution(p, r);
    run.report.reference_solution = wbar;
    attach_lyapunov(run.traj, wbar);
    run.report.predicted_bound = predicted_flow_bound(rc, r, (w0 - wbar).norm());

    InequalityCheck decrease;
    decrease.name = "lyapunov_decrease";
    const auto bad = lyapunov_increases(run.traj, wbar);
    decrease.worst_violation = static_cast<double>(bad.size());
    decrease.pass = bad.empty();
    if (!bad.empty()) decrease.worst_point = run.traj.samples[bad.front()].w;
    run.report.checks.push_back(decrease);

    if (const auto* f = std::get_if<FixedTimeRegime>(&rc)) {
      const auto a = a_coefficients(f->params, r.m, r.gamma_const);
      try {
        const auto v = check_diff_inequality(run.traj, wbar, a.A1, a.A2, (1 + f->params.k1) / 2,
                                             (1 + f->params.k2) / 2);
        InequalityCheck di;
        di.name = "diff_inequality";
        di.worst_violation = v.worst_violation;
        di.pass = v.pass;
        di.informational = true;
        run.report.checks.push_back(di);
      } catch (const InputError&) {
        // Too few samples for central differences.
      }
    }
  }
  run.report.observed = run.traj.settled_at;
  finalize_bound(run.report);

  run.extras = {{"scheme", o.scheme},
                {"dt", o.dt},
                {"t_max", o.t_max},
                {"settle_tol", o.settle_tol},
                {"steps", run.traj.steps},
                {"limited_steps", run.traj.limited_steps},
                {"limiter", ic.limiter.has_value()},
                {"final_w", json_vector(run.traj.samples.back().w)},
                {"final_xi_norm", json_number(run.traj.samples.back().xi_norm)}};
  if (const auto* f = std::get_if<FixedTimeRegime>(&rc)) run.extras["fixed_time_params"] = fixed_json(f->params);
  return run;
}

std::string flow_summary(const FlowRun& run) {
  std::ostringstream s;
  s << run.report.regime << ": ";
  if (run.report.observed) {
    s << "settled at t=" << format_double(*run.report.observed);
  } else {
    s << "not settled";
  }
  s << ", predicted bound " << format_double(run.report.predicted_bound)
    << (run.report.bound_respected ? " (respected)" : " (VIOLATED)");
  return s.str();
}

ConstantsReport constants(const ProblemInstance& p, const CommonOpts& o) {
  return constants_for(p, o.samples, o.radius, o.seed);
}

int cmd_validate(Context& ctx, const CommonOpts& o, const std::vector<std::string>& overrides) {
  const ProblemInstance p = load(o);
  ConstantsReport r = constants(p, o);
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InputError("--override expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const Vec val = parse_vector(kv.substr(eq + 1), 1);
    double* slot = key == "alpha"    ? &r.alpha
                   : key == "lambda" ? &r.lambda_mono
                   : key == "mu"     ? &r.mu
                   : key == "rho"    ? &r.rho
                   : key == "beta"   ? &r.beta
                   : key == "sigma"  ? &r.sigma
                                     : nullptr;
    if (!slot) throw InputError("--override: unknown constant '" + key + "'");
    *slot = val[0];
  }
  refresh_derived(r);
  const AssumptionVerdict v = check_assumption_a(r);
  json report = constants_json(r, v);
  const fs::path dir = prepare_out_dir(o);
  write_json(dir / "validate.json", report);
  ctx.out << report.dump(2) << "\n";
  return v.all_pass() ? kExitOk : kExitVerdict;
}

int cmd_simulate(Context& ctx, const CommonOpts& o, SimulateOpts& so) {
  const ProblemInstance p = load(o);
  const ConstantsReport r = constants(p, o);
  FlowRun run = run_flow(p, r, so);
  const fs::path dir = prepare_out_dir(o);
  write_trajectory_csv((dir / "simulate.csv").string(), run.traj);
  json report = certificate_json(run.report);
  report["manifest"] = manifest("simulate", o);
  report["run"] = run.extras;
  write_json(dir / "simulate.json", report);
  ctx.out << flow_summary(run) << "\n";
  if (!run.report.observed) {
    ctx.err << "warning: trajectory did not settle within t_max=" << format_double(so.t_max) << "\n";
    return kExitOk;
  }
  return run.report.all_pass() ? kExitOk : kExitVerdict;
}

MethodConfig method_config(const ConstantsReport& r, SolveOpts& o, bool theta_given) {
  MethodConfig mc;
  mc.n_max = o.iters;
  mc.stop_tol = o.stop_tol;
  if (o.method == "alg2") {
    mc.method = Alg2Method{o.tau, theta_given ? o.theta : 0.2, o.k};
  } else if (o.method == "nominal") {
    mc.method = NominalIterMethod{o.kappa * (theta_given ? o.theta : 0.1)};
  } else {
    apply_auto_gd(o.fixed, r);
    Eq29Method e;
    e.params = o.fixed.fp;
    if (o.schedule == "constant") {
      e.schedule = ConstantStep{theta_given ? o.theta : 1e-3};
    } else {
      e.schedule = HarmonicStep{o.theta_min};
    }
    validate(e.params);
    mc.method = e;
  }
  validate(mc);
  return mc;
}

int cmd_solve(Context& ctx, const CommonOpts& o, SolveOpts& so, bool theta_given) {
  const ProblemInstance p = load(o);
  const ConstantsReport r = constants(p, o);
  const MethodConfig mc = method_config(r, so, theta_given);
  const Vec w0 = parse_vector(so.w0, p.d);
  Trajectory traj = run(p, mc, w0);

  CertificateReport report;
  report.regime = traj.regime;
  report.constants_used = r;
  report.predicted_bound = kInf;
  json extras = {{"method", so.method}, {"iterations", static_cast<long>(traj.samples.size()) - 1}};
  if (usable(r)) {
    const Vec wbar = reference_solution(p, r);
    report.reference_solution = wbar;
    attach_lyapunov(traj, wbar);

    const auto* e = std::get_if<Eq29Method>(&mc.method);
    const auto* cs = e ? std::get_if<ConstantStep>(&e->schedule) : nullptr;
    if (cs && e->params.k1 > 0 && e->params.k1 < 1) {
      const double chi = 2.0 / (1.0 - e->params.k1);
      if (chi > 2 && std::abs(e->params.k2 - (1 + 2 / chi)) <= 1e-12) {
        const auto a = a_coefficients(e->params, r.m, r.gamma_const);
        const long horizon = envelope_horizon(a.A1, a.A2, chi, cs->theta);
        InequalityCheck env;
        env.name = "discrete_envelope";
        env.worst_violation = -kInf;
        for (std::size_t n = 1; n < traj.samples.size() && static_cast<long>(n) <= horizon; ++n) {
          const double err = (traj.samples[n].w - wbar).norm();
          const double gap = err - discrete_envelope(static_cast<long>(n), a.A1, a.A2, chi, cs->theta, so.eps);
          if (gap > env.worst_violation) {
            env.worst_violation = gap;
            env.worst_point = traj.samples[n].w;
          }
        }
        if (!env.worst_point) env.worst_violation = 0;
        env.pass = env.worst_violation <= 0;
        report.checks.push_back(env);
        extras["envelope_horizon"] = horizon;
        extras["chi"] = chi;
      }
    }
  }
  report.observed = traj.settled_at;
  finalize_bound(report);

  extras["final_w"] = json_vector(traj.samples.back().w);
  extras["final_xi_norm"] = json_number(traj.samples.back().xi_norm);
  const fs::path dir = prepare_out_dir(o);
  write_trajectory_csv((dir / "solve.csv").string(), traj);
  json j = certificate_json(report);
  j["manifest"] = manifest("solve", o);
  j["run"] = extras;
  write_json(dir / "solve.json", j);

  ctx.out << traj.regime << ": " << extras["iterations"].get<long>() << " iterations, final w = ";
  const Vec& wf = traj.samples.back().w;
  for (Eigen::Index i = 0; i < wf.size(); ++i) ctx.out << (i ? " " : "") << format_double(wf[i]);
  ctx.out << ", ||Xi|| = " << format_double(traj.samples.back().xi_norm) << "\n";
  return report.all_pass() ? kExitOk : kExitVerdict;
}

int cmd_certify(Context& ctx, const CommonOpts& o, SimulateOpts& so, int points) {
  const ProblemInstance p = load(o);
  const ConstantsReport r = constants(p, o);
  if (!usable(r)) throw InputError("certify needs valid constants with m > 0");
  FlowRun run = run_flow(p, r, so);
  const auto lemma = check_lemma_bdt(p, r, run.report.reference_solution, points, o.radius, o.seed);
  run.report.checks.insert(run.report.checks.end(), lemma.begin(), lemma.end());

  json j = certificate_json(run.report);
  j["manifest"] = manifest("certify", o);
  j["run"] = run.extras;
  const fs::path dir = prepare_out_dir(o);
  write_json(dir / "certify.json", j);

  ctx.out << flow_summary(run) << "\n";
  for (const auto& c : run.report.checks) {
    ctx.out << "  " << c.name << ": " << (c.pass ? "pass" : "FAIL") << (c.informational ? " (informational)" : "")
            << ", worst violation " << format_double(c.worst_violation) << "\n";
  }
  return run.report.all_pass() ? kExitOk : kExitVerdict;
}

struct BenchRow {
  std::string name;
  std::string method;
  std::optional<double> final_w;
  std::optional<double> paper_reported;
  std::optional<long> iterations;
  std::optional<double> observed_settling;
  std::optional<double> predicted_bound;
};

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

int cmd_bench(Context& ctx, const CommonOpts& o, const std::string& name) {
  if (name != "example1") throw InputError("unknown benchmark '" + name + "' (available: example1)");
  const ProblemInstance p = builtin_example1();
  const ConstantsReport r = constants(p, o);
  const fs::path dir = prepare_out_dir(o);
  const Vec w0 = Vec::Constant(1, 50.0);
  std::vector<BenchRow> rows;

  auto iterate_case = [&](const std::string& id, const MethodConfig& mc, double reported) {
    const Trajectory traj = run(p, mc, w0);
    write_trajectory_csv((dir / ("bench_example1_" + id + ".csv")).string(), traj);
    rows.push_back({id, traj.regime, traj.samples.back().w[0], reported,
                    static_cast<long>(traj.samples.size()) - 1, std::nullopt, std::nullopt});
  };
  // The full 150-step budget is spent unless the residual vanishes exactly.
  constexpr double kFullBudget = 1e-300;
  for (double k3 : {1.0, 0.0}) {
    Eq29Method e;
    e.params.k3 = k3;
    MethodConfig mc;
    mc.method = e;
    mc.stop_tol = kFullBudget;
    iterate_case(k3 == 1.0 ? "eq29_k3_1" : "eq29_k3_0", mc, k3 == 1.0 ? -5.33e-5 : -1.13e-4);
  }
  for (double k : {3.0, 2.0}) {
    MethodConfig mc;
    mc.method = Alg2Method{1.0, 0.2, k};
    mc.stop_tol = kFullBudget;
    iterate_case(k == 3.0 ? "alg2_k_3" : "alg2_k_2", mc, k == 3.0 ? 2.08 : 1.39e-3);
  }

  auto flow_case = [&](const std::string& id, SimulateOpts so) {
    so.w0 = "50";
    so.settle_tol = 1e-8;
    FlowRun fr = run_flow(p, r, so);
    write_trajectory_csv((dir / ("bench_example1_" + id + ".csv")).string(), fr.traj);
    rows.push_back({id, fr.traj.regime, fr.traj.samples.back().w[0], std::nullopt, fr.traj.steps,
                    fr.report.observed, fr.report.predicted_bound});
  };
  SimulateOpts finite;
  finite.regime = "finite";
  flow_case("flow_finite", finite);
  SimulateOpts fixed;
  fixed.fixed.fp.k3 = 1.0;
  flow_case("flow_fixed", fixed);
  SimulateOpts predefined;
  predefined.regime = "predefined";
  flow_case("flow_predefined", predefined);

  std::ostringstream csv;
  csv << "case,method,final_w,paper_reported,iterations,observed_settling,predicted_bound\n";
  json table = json::array();
  for (const auto& row : rows) {
    csv << row.name << ",\"" << row.method << "\"," << cell(row.final_w) << ',' << cell(row.paper_reported) << ','
        << (row.iterations ? std::to_string(*row.iterations) : "") << ',' << cell(row.observed_settling) << ','
        << cell(row.predicted_bound) << '\n';
    table.push_back({{"case", row.name},
                     {"method", row.method},
                     {"final_w", row.final_w ? json_number(*row.final_w) : json(nullptr)},
                     {"paper_reported", row.paper_reported ? json_number(*row.paper_reported) : json(nullptr)},
                     {"iterations", row.iterations ? json(*row.iterations) : json(nullptr)},
                     {"observed_settling", row.observed_settling ? json_number(*row.observed_settling) : json(nullptr)},
                     {"predicted_bound", row.predicted_bound ? json_number(*row.predicted_bound) : json(nullptr)}});
  }
  write_text(dir / "bench_example1.csv", csv.str());
  json j = {{"benchmark", name}, {"rows", table}, {"manifest", manifest("bench", o)}};
  j["constants"] = constants_json(r, check_assumption_a(r));
  write_json(dir / "bench_example1.json", j);
  ctx.out << csv.str();
  return kExitOk;
}

int cmd_plot(Context& ctx, const std::string& csv_path, std::string out_path) {
  const SeriesTable table = read_series_csv(csv_path);
  if (out_path.empty()) out_path = fs::path(csv_path).replace_extension(".svg").string();
  const fs::path out(out_path);
  if (out.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(out.parent_path(), ec);
  }
  write_text(out, render_svg_plot(table, fs::path(csv_path).filename().string()));
  ctx.out << "wrote " << out_path << " (" << table.index.size() << " rows)\n";
  return kExitOk;
}

void add_simulate_flags(CLI::App* sub, SimulateOpts& o) {
  sub->add_option("--regime", o.regime)
      ->check(CLI::IsMember({"nominal", "finite", "fixed", "predefined"}))
      ->capture_default_str();
  sub->add_option("--kappa", o.kappa)->capture_default_str();
  sub->add_option("--tau", o.tau)->capture_default_str();
  sub->add_option("--k", o.k, "Exponent of the finite-time regime")->capture_default_str();
  add_fixed(sub, o.fixed);
  sub->add_option("--w0", o.w0, "Initial point: one value (broadcast) or a comma list")->capture_default_str();
  sub->add_option("--scheme", o.scheme)
      ->check(CLI::IsMember({"rk4", "euler", "rk4-adaptive"}))
      ->capture_default_str();
  sub->add_option("--dt", o.dt)->capture_default_str();
  sub->add_option("--t-max", o.t_max)->capture_default_str();
  sub->add_option("--settle-tol", o.settle_tol)->capture_default_str();
  sub->add_option("--stride", o.stride, "Keep every n-th step in the CSV")->capture_default_str();
  sub->add_option("--dt-min", o.dt_min)->capture_default_str();
  sub->add_flag("--no-limiter", o.no_limiter, "Disable the displacement limiter");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"Solver for generalized inverse mixed variational inequality problems", "gimvip"};
  app.require_subcommand(1);

  CommonOpts common;
  std::vector<std::string> overrides;
  SimulateOpts sim;
  SolveOpts sol;
  int points = 10000;
  std::string bench_name;
  std::string csv_path, svg_path;

  auto* validate_cmd = app.add_subcommand("validate", "Compute operator constants and check the standing assumption");
  add_common(validate_cmd, common);
  validate_cmd->add_option("--override", overrides, "Replace a constant, e.g. alpha=10");

  auto* simulate_cmd = app.add_subcommand("simulate", "Integrate a continuous-time system");
  add_common(simulate_cmd, common);
  add_simulate_flags(simulate_cmd, sim);

  auto* solve_cmd = app.add_subcommand("solve", "Run a discrete iteration");
  add_common(solve_cmd, common);
  solve_cmd->add_option("--method", sol.method)->check(CLI::IsMember({"eq29", "alg2", "nominal"}))->capture_default_str();
  solve_cmd->add_option("--iters", sol.iters)->capture_default_str();
  solve_cmd->add_option("--schedule", sol.schedule)->check(CLI::IsMember({"paper", "constant"}))->capture_default_str();
  auto* theta_opt = solve_cmd->add_option("--theta", sol.theta, "Step size (alg2 0.2, constant schedule 1e-3, nominal 0.1)");
  solve_cmd->add_option("--theta-min", sol.theta_min)->capture_default_str();
  solve_cmd->add_option("--stop-tol", sol.stop_tol)->capture_default_str();
  solve_cmd->add_option("--eps", sol.eps, "Slack of the discrete envelope")->capture_default_str();
  solve_cmd->add_option("--tau", sol.tau)->capture_default_str();
  solve_cmd->add_option("--k", sol.k, "Exponent of alg2")->capture_default_str();
  solve_cmd->add_option("--kappa", sol.kappa)->capture_default_str();
  add_fixed(solve_cmd, sol.fixed);
  solve_cmd->add_option("--w0", sol.w0)->capture_default_str();

  auto* certify_cmd = app.add_subcommand("certify", "Simulate and check every certificate inequality");
  add_common(certify_cmd, common);
  add_simulate_flags(certify_cmd, sim);
  certify_cmd->add_option("--points", points, "Random points for the residual inequalities")->capture_default_str();

  auto* bench_cmd = app.add_subcommand("bench", "Run a named benchmark grid");
  add_common(bench_cmd, common);
  bench_cmd->add_option("name", bench_name, "Benchmark name")->required();

  auto* plot_cmd = app.add_subcommand("plot", "Render a trajectory CSV as SVG");
  plot_cmd->add_option("--csv", csv_path)->required();
  plot_cmd->add_option("--out", svg_path, "Output SVG (default: CSV path with .svg)");

  std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(ctx, common, overrides);
    if (simulate_cmd->parsed()) return cmd_simulate(ctx, common, sim);
    if (solve_cmd->parsed()) return cmd_solve(ctx, common, sol, theta_opt->count() > 0);
    if (certify_cmd->parsed()) return cmd_certify(ctx, common, sim, points);
    if (bench_cmd->parsed()) return cmd_bench(ctx, common, bench_name);
    if (plot_cmd->parsed()) return cmd_plot(ctx, csv_path, svg_path);
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NumericalFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace gimvip
