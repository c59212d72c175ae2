#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <doctest.h>

#include "nevlab/cli.hpp"
#include "nevlab/errors.hpp"

using namespace nevlab;
using namespace nevlab::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kData = NEVLAB_DATA_DIR;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Undefined;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nevlab_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(NEVLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

const nlohmann::ordered_json* verdict(const nlohmann::ordered_json& list, const std::string& theorem) {
  for (const auto& v : list)
    if (v["theorem"] == theorem) return &v;
  return nullptr;
}

}  // namespace

TEST_CASE("config validation and grid specs") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.r_min = 0.05;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::InvalidArgument);
  c = RunConfig{};
  c.tolerance = 0.0;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::InvalidArgument);
  c = RunConfig{};
  c.tail_fraction = 1.5;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::InvalidArgument);

  RunConfig g;
  apply_grid_spec(g, "2:20:36:lin");
  CHECK(g.r_min == 2.0);
  CHECK(g.r_max == 20.0);
  CHECK(g.spacing == Spacing::Linear);
  CHECK(g.grid().size() == 37);
  apply_grid_spec(g, "1:100:10");
  CHECK(g.spacing == Spacing::Geometric);
  CHECK(g.grid().size() == 21);
  for (const char* bad : {"1:2", "a:b:c", "0.01:10:40", "5:2:40", "1:10:40:log"})
    CHECK(code_of([&] {
            RunConfig x;
            apply_grid_spec(x, bad);
          }) == ErrorCode::InvalidArgument);
}

TEST_CASE("density command") {
  const auto comb = cmd_density("comb 1 0.5", 1000.0);
  CHECK(std::abs(comb.report["density"]["upper_linear_density"].get<double>() - 0.5) <= 0.02);
  const auto decay = cmd_density("decay 2^-n", 1000.0);
  CHECK(decay.report["density"]["upper_linear_density"].get<double>() <= 0.01);
  const auto empty = cmd_density("empty", 1000.0);
  CHECK(empty.report["intervals"] == 0);
  CHECK(empty.report["density"]["upper_linear_density"].get<double>() == 0.0);

  const fs::path dir = scratch("density");
  {
    std::ofstream out(dir / "e.json");
    out << "[[0, 10], [50, 60]]";
  }
  const auto file = cmd_density((dir / "e.json").string(), 100.0);
  CHECK(file.report["density"]["linear_measure"].get<double>() == doctest::Approx(20.0));
  CHECK(file.report["density"]["upper_linear_density"].get<double>() == doctest::Approx(1.0));

  CHECK(code_of([] { cmd_density("comb 1", 10.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { cmd_density("decay 2^n", 10.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { cmd_density("/no/such/file.json", 10.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("lemma command") {
  const RunConfig c;
  const auto borel = cmd_lemma("borel", LemmaParams{}, c);
  CHECK(borel.exit_code == Pass);
  CHECK(borel.report["pass"] == true);
  for (const char* k : {"F", "phi", "xi_of_log", "C", "report"}) CHECK(borel.report.contains(k));

  LemmaParams weak;
  weak.C = 1.0;
  CHECK(code_of([&] { cmd_lemma("borel", weak, c); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { cmd_lemma("wiman", LemmaParams{}, c); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { cmd_lemma("zero-count", LemmaParams{}, c); }) == ErrorCode::InvalidArgument);

  LemmaParams zc;
  zc.expr = "(exp(z)-1)/z";
  const auto z = cmd_lemma("zero-count", zc, c);
  CHECK(z.report["pass"] == true);
  CHECK(z.csv.rfind("r,value,bound,violated\n", 0) == 0);
}

TEST_CASE("curve command") {
  RunConfig c;
  apply_grid_spec(c, "1:20:20");
  const auto five = cmd_curve("5", {"m", "T", "N"}, "inf", c);
  REQUIRE(five.report["curves"].size() == 3);
  for (const auto& row : five.report["curves"][0]["samples"])
    CHECK(row["value"].get<double>() == doctest::Approx(std::log(5.0)).epsilon(1e-10));
  for (const auto& row : five.report["curves"][2]["samples"]) CHECK(row["value"].get<double>() == 0.0);

  const auto e = cmd_curve("exp(z)", {"m"}, "inf", c);
  for (const auto& row : e.report["curves"][0]["samples"]) {
    const double r = row["r"].get<double>();
    CHECK(row["value"].get<double>() == doctest::Approx(r / M_PI).epsilon(1e-8));
    CHECK(row["accuracy_flag"].is_string());
  }

  // every CSV row carries a flag
  std::istringstream lines(e.csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "r,value,label,accuracy_flag");
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 3);
    CHECK(line.substr(line.rfind(',') + 1).size() > 0);
    ++rows;
  }
  CHECK(rows == static_cast<int>(c.grid().size()));

  CHECK(code_of([&] { cmd_curve("exp(z", {"T"}, "inf", c); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { cmd_curve("exp(z)", {"Q"}, "inf", c); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("curve command: T of exp(exp(z))") {
  // the exact T exceeds the asymptote by about 0.17/r, so 2.09% at r = 8
  RunConfig c;
  apply_grid_spec(c, "8:20:12:lin");
  const auto res = cmd_curve("exp(exp(z))", {"T"}, "inf", c);
  double prev = kInf;
  for (const auto& row : res.report["curves"][0]["samples"]) {
    const double r = row["r"].get<double>();
    const double ref = std::exp(r) / std::sqrt(2.0 * M_PI * M_PI * M_PI * r);
    const double err = std::abs(row["value"].get<double>() / ref - 1.0);
    CHECK(err <= (r < 9.0 ? 0.021 : 0.02));
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("deficiency command") {
  const RunConfig c;
  const auto one = cmd_deficiency("1+exp(z)", "P", {"1"}, c);
  CHECK(one.exit_code == Pass);
  CHECK(std::abs(one.report["estimates"][0]["estimate"].get<double>() - M_PI) <= 0.03);

  const auto both = cmd_deficiency("exp(z)", "N", {"0", "inf"}, c);
  CHECK(both.exit_code == Pass);
  REQUIRE(both.report["estimates"].size() == 2);
  for (const auto& e : both.report["estimates"]) CHECK(std::abs(e["estimate"].get<double>() - 1.0) <= 0.02);
  REQUIRE(both.report["checks"].size() == 1);
  CHECK(std::abs(both.report["checks"][0]["value"].get<double>() - 2.0) <= 0.05);

  const auto e = cmd_deficiency("exp(z)", "E", {"0"}, c);
  CHECK(e.report["checks"].size() == 1);
  CHECK(e.report["pass"] == true);

  CHECK(code_of([&] { cmd_deficiency("5", "N", {"0"}, c); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { cmd_deficiency("exp(z)", "N", {}, c); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("verify-ode command") {
  const RunConfig c;
  VerifyOptions vo;
  vo.samples = 200;

  const auto frei = cmd_verify_ode(kData / "frei.ode", c, vo);
  CHECK(frei.report["pass"] == true);
  REQUIRE(frei.report["solutions"].size() == 2);
  for (const auto& s : frei.report["solutions"])
    CHECK(s["residual"]["max_relative_residual"].get<double>() <= 1e-10);
  const auto& f1 = frei.report["solutions"][0];
  CHECK(f1["name"] == "f1");
  const auto* t22 = verdict(f1["verdicts"], "T2.2");
  REQUIRE(t22);
  CHECK((*t22)["verdict"] == "violated");

  const auto p = cmd_verify_ode(kData / "example_p.ode", c, vo);
  CHECK(p.report["solutions"][0]["residual_pass"] == true);
  CHECK(p.report["solutions"][0]["wittich"]["verdict"] == "violated");

  const auto ex = cmd_verify_ode(kData / "exponential.ode", c, vo);
  const auto* c24 = verdict(ex.report["solutions"][0]["verdicts"], "C2.4");
  REQUIRE(c24);
  CHECK((*c24)["verdict"] == "supported");

  // a jet-only solution has no residual
  const auto airy = cmd_verify_ode(kData / "airy.ode", c, vo);
  CHECK(airy.report["solutions"][0].contains("note"));
}

TEST_CASE("standardness command on the sine equation") {
  const RunConfig c;
  const auto s = cmd_standardness(kData / "sine.ode", c);
  CHECK(s.exit_code == Pass);
  CHECK(s.report["solution"] == "s");
  CHECK(s.report["numeric"] == false);
  const auto* t33 = verdict(s.report["verdicts"], "T3.3");
  REQUIRE(t33);
  CHECK((*t33)["verdict"] == "supported");
  StandardnessOptions o;
  o.solution = "nope";
  CHECK(code_of([&] { cmd_standardness(kData / "sine.ode", c, o); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("identical config and seed give byte-identical outputs") {
  RunConfig c;
  apply_grid_spec(c, "1:10:80");
  c.seed = 7;
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  for (const fs::path& dir : {a, b}) {
    c.out_dir = dir;
    write_outputs(c, "curve", cmd_curve("exp(z)+z", {"T", "N", "m"}, "0", c));
    VerifyOptions vo;
    vo.samples = 100;
    write_outputs(c, "ode", cmd_verify_ode(kData / "frei.ode", c, vo));
  }
  for (const char* f : {"curve.json", "curve.csv", "ode.json"}) {
    INFO(f);
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  CHECK_FALSE(fs::exists(a / "ode.csv"));

  // a different seed moves the residual sample points
  c.seed = 8;
  c.out_dir = scratch("det_c");
  VerifyOptions vo;
  vo.samples = 100;
  write_outputs(c, "ode", cmd_verify_ode(kData / "frei.ode", c, vo));
  CHECK(slurp(a / "ode.json") != slurp(c.out_dir / "ode.json"));
}

TEST_CASE("binary exit codes") {
  const std::string frei = (kData / "frei.ode").string();
  CHECK(run_cli("density \"comb 1 0.5\" -R 100") == 0);
  CHECK(run_cli("--grid 1:50:80 deficiency \"exp(z)\" -k N -a 0 -a inf") == 0);
  CHECK(run_cli("--grid 1:10:20 curve \"exp(z\" -f T") == 2);
  CHECK(run_cli("--grid nonsense curve \"exp(z)\" -f T") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("verify-ode /no/such/file.ode") == 2);
  CHECK(run_cli("lemma borel --C 1") == 2);
  CHECK(run_cli("verify-ode " + frei + " --samples 100") == 0);
  CHECK(run_cli("standardness " + frei + " -s f1") == 0);

  const fs::path out = scratch("bin");
  {
    std::ofstream bad(out / "wrong.ode");
    bad << "order: 1\nA0: -1\nsolution f: exp(2z)\n";
  }
  CHECK(run_cli("verify-ode " + (out / "wrong.ode").string() + " --samples 50") == 1);
  CHECK(run_cli("--out " + out.string() + " --grid 1:10:20 curve \"exp(z)\" -f T -f m -a inf") == 0);
  CHECK(fs::exists(out / "curve.json"));
  CHECK(fs::exists(out / "curve.csv"));
}
