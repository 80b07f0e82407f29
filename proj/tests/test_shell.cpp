#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gimvip/shell.hpp"

namespace fs = std::filesystem;
using gimvip::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gimvip");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("gimvip_shell_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

nlohmann::json load_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_CASE("validate") {
  const fs::path dir = scratch("validate");
  const Run ok = cli({"validate", "--builtin", "example1", "--out-dir", dir.string()});
  CHECK(ok.code == 0);
  CHECK(load_json(dir / "validate.json")["verdict"]["cond_iii_lhs"].get<double>() == doctest::Approx(0.75));
  CHECK(cli({"validate", "--builtin", "example1", "--out-dir", dir.string(), "--override", "alpha=10"}).code == 1);
  CHECK(cli({"validate", "--builtin", "example1", "--out-dir", dir.string(), "--override", "zeta=1"}).code == 2);
  CHECK(cli({"validate", "--problem", (dir / "missing.json").string()}).code == 2);
  CHECK(cli({"validate"}).code == 2);
  CHECK(cli({"validate", "--builtin", "example1", "--problem", "x.json"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
}

TEST_CASE("validate reads a problem file") {
  const fs::path dir = scratch("validate_file");
  std::ofstream(dir / "p.json") << R"({"dimension":2,
    "F":{"type":"affine","matrix":[[0.8,0],[0,0.8]]},
    "h":{"type":"custom","name":"half_linear_plus_quarter_atan"},
    "g":{"type":"l1","weight":0.1},"omega":{"type":"box","lo":[-1,-1],"hi":[1,"inf"]},"gamma":0.5})";
  const Run r = cli({"validate", "--problem", (dir / "p.json").string(), "--out-dir", dir.string(), "--samples", "500"});
  CHECK(r.code <= 1);
  CHECK(load_json(dir / "validate.json")["source"]["type"] == "empirical");
  std::ofstream(dir / "bad.json") << R"({"dimension":1,"gamma":0})";
  CHECK(cli({"validate", "--problem", (dir / "bad.json").string()}).code == 2);
}

TEST_CASE("simulate") {
  const fs::path dir = scratch("simulate");
  const Run fin = cli({"simulate", "--builtin", "example1", "--regime", "finite", "--tau", "1", "--k", "3", "--w0",
                       "50", "--out-dir", dir.string()});
  CHECK(fin.code == 0);
  auto j = load_json(dir / "simulate.json");
  CHECK(j["bound_respected"] == true);
  CHECK(j["observed"].get<double>() <= 20.0);
  CHECK(slurp(dir / "simulate.csv").rfind("t,w_0,xi_norm,V\n", 0) == 0);

  CHECK(cli({"simulate", "--builtin", "example1", "--regime", "fixed", "--k3", "0", "--Td", "1", "--auto-gd",
             "--out-dir", dir.string()})
            .code == 0);
  j = load_json(dir / "simulate.json");
  CHECK(j["observed"].get<double>() <= 1.0);
  CHECK(j["predicted_bound"].get<double>() == 1.0);

  const Run short_run = cli({"simulate", "--builtin", "example1", "--t-max", "1e-6", "--out-dir", dir.string()});
  CHECK(short_run.code == 0);
  CHECK(short_run.err.find("warning") != std::string::npos);
  CHECK(load_json(dir / "simulate.json")["observed"].is_null());

  CHECK(cli({"simulate", "--builtin", "example1", "--regime", "finite", "--k", "1.5"}).code == 2);
  CHECK(cli({"simulate", "--builtin", "example1", "--regime", "sideways"}).code == 2);
}

TEST_CASE("simulate reports non-finite states") {
  const fs::path dir = scratch("diverge");
  std::ofstream(dir / "p.json") << R"({"dimension":1,"F":{"type":"scalar_linear","c":1},
    "h":{"type":"scalar_linear","c":-1},"gamma":1})";
  const Run r = cli({"simulate", "--problem", (dir / "p.json").string(), "--regime", "nominal", "--dt", "1",
                     "--t-max", "5000", "--out-dir", dir.string()});
  CHECK(r.code == 3);
}

TEST_CASE("solve") {
  const fs::path dir = scratch("solve");
  CHECK(cli({"solve", "--builtin", "example1", "--method", "eq29", "--k3", "1", "--iters", "150", "--schedule",
             "paper", "--out-dir", dir.string()})
            .code == 0);
  auto j = load_json(dir / "solve.json");
  CHECK(std::abs(j["run"]["final_w"][0].get<double>()) <= 1e-3);

  CHECK(cli({"solve", "--builtin", "example1", "--method", "alg2", "--k", "2", "--theta", "0.2", "--iters", "150",
             "--out-dir", dir.string()})
            .code == 0);
  j = load_json(dir / "solve.json");
  CHECK(std::abs(j["run"]["final_w"][0].get<double>()) <= 1e-2);

  CHECK(cli({"solve", "--builtin", "example1", "--iters", "0", "--out-dir", dir.string()}).code == 0);
  CHECK(slurp(dir / "solve.csv") == "t,w_0,xi_norm,V\n0,50,34,1250\n");

  CHECK(cli({"solve", "--builtin", "example1", "--method", "eq29", "--k1", "0.5", "--schedule", "constant",
             "--theta", "1e-3", "--iters", "11000", "--out-dir", dir.string()})
            .code == 0);
  j = load_json(dir / "solve.json");
  CHECK(j["checks"][0]["name"] == "discrete_envelope");
  CHECK(j["checks"][0]["pass"] == true);
}

TEST_CASE("certify") {
  const fs::path dir = scratch("certify");
  const Run r = cli({"certify", "--builtin", "example1", "--points", "2000", "--out-dir", dir.string()});
  CHECK(r.code == 0);
  const auto j = load_json(dir / "certify.json");
  bool saw_printed = false;
  for (const auto& c : j["checks"]) {
    if (c["name"] == "iii_lower_rho_minus_Lambda") {
      saw_printed = true;
      CHECK(c["pass"] == false);
      CHECK(c["informational"] == true);
    }
  }
  CHECK(saw_printed);
}

TEST_CASE("bench is deterministic and labels reported values") {
  const fs::path a = scratch("bench_a"), b = scratch("bench_b");
  CHECK(cli({"bench", "example1", "--out-dir", a.string()}).code == 0);
  CHECK(cli({"bench", "example1", "--out-dir", b.string()}).code == 0);
  const std::string csv = slurp(a / "bench_example1.csv");
  CHECK(csv == slurp(b / "bench_example1.csv"));
  CHECK(slurp(a / "bench_example1.json") == slurp(b / "bench_example1.json"));
  CHECK(csv.find("paper_reported") != std::string::npos);
  for (const char* row : {"eq29_k3_1,", "eq29_k3_0,", "alg2_k_3,", "alg2_k_2,", "flow_finite,", "flow_fixed,",
                          "flow_predefined,"}) {
    CHECK(csv.find(row) != std::string::npos);
  }
  CHECK(csv.find("2.0800000000000001") != std::string::npos);
  CHECK(cli({"bench", "unknown", "--out-dir", a.string()}).code == 2);
}

TEST_CASE("plot") {
  const fs::path dir = scratch("plot");
  CHECK(cli({"solve", "--builtin", "example1", "--method", "alg2", "--out-dir", dir.string()}).code == 0);
  CHECK(cli({"plot", "--csv", (dir / "solve.csv").string(), "--out", (dir / "solve.svg").string()}).code == 0);
  const std::string svg = slurp(dir / "solve.svg");
  CHECK(svg.find("<polyline") != std::string::npos);

  std::ofstream(dir / "empty.csv").close();
  CHECK(cli({"plot", "--csv", (dir / "empty.csv").string()}).code == 2);
  std::ofstream(dir / "one.csv") << "t,w_0,xi_norm,V\n0,1,0.5,\n";
  CHECK(cli({"plot", "--csv", (dir / "one.csv").string()}).code == 0);
  CHECK(fs::exists(dir / "one.svg"));
  CHECK(cli({"plot", "--csv", (dir / "nothere.csv").string()}).code == 2);
}

TEST_CASE("the installed binary honours the exit-code contract") {
  const char* exe = std::getenv("GIMVIP_CLI");
  if (!exe) return;
  const fs::path dir = scratch("binary");
  auto status = [&](const std::string& args) {
    const std::string cmd = std::string("\"") + exe + "\" " + args + " --out-dir \"" + dir.string() + "\" > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WEXITSTATUS(raw);
  };
  CHECK(status("validate --builtin example1") == 0);
  CHECK(status("validate --builtin example1 --override alpha=10") == 1);
  CHECK(status("validate --problem /nonexistent.json") == 2);
}
