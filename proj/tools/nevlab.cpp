#include <iostream>

#include <CLI11.hpp>

#include "nevlab/cli.hpp"
#include "nevlab/errors.hpp"

using namespace nevlab;

int main(int argc, char** argv) {
  CLI::App app{"Value-distribution functionals, deviation estimates and ODE standardness checks"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::RunConfig config;
  std::string grid_spec;
  std::string out_dir;
  app.add_option("--grid", grid_spec, "rmin:rmax:density[:lin|geo]");
  app.add_option("--tol", config.tolerance, "relative quadrature tolerance");
  app.add_option("--tail", config.tail_fraction, "tail window fraction");
  app.add_option("--m-exponent", config.m_exponent, "exponent m > 1 in the log-power conditions");
  app.add_option("--out", out_dir, "directory for JSON and CSV outputs");
  app.add_option("--seed", config.seed, "seed for sample points");

  auto* curve = app.add_subcommand("curve", "growth curves of an expression");
  std::string expr, target = "inf";
  std::vector<std::string> functionals{"T"};
  curve->add_option("expr", expr, "expression in z")->required();
  curve->add_option("-f,--functional", functionals, "m, N, T, T0, A, L, M");
  curve->add_option("-a,--target", target, "target value for m, N and L");

  auto* deficiency = app.add_subcommand("deficiency", "deviation estimates");
  std::string kind = "N";
  std::vector<std::string> targets{"0"};
  deficiency->add_option("expr", expr, "expression in z")->required();
  deficiency->add_option("-k,--kind", kind, "N, P, E or V");
  deficiency->add_option("-a,--target", targets, "target values");

  auto* verify = app.add_subcommand("verify-ode", "residuals and hypotheses for an equation file");
  std::string file;
  cli::VerifyOptions vo;
  verify->add_option("file", file, "equation file")->required()->check(CLI::ExistingFile);
  verify->add_option("--samples", vo.samples, "sample points in the disc");
  verify->add_option("--radius", vo.radius, "sample disc radius");
  verify->add_option("--residual-tol", vo.residual_tolerance, "residual tolerance");

  auto* standard = app.add_subcommand("standardness", "theorem verdicts for one solution");
  cli::StandardnessOptions so;
  standard->add_option("file", file, "equation file")->required()->check(CLI::ExistingFile);
  standard->add_option("-s,--solution", so.solution, "solution name");
  standard->add_option("--rays", so.rays, "rays for numeric solutions");

  auto* lemma = app.add_subcommand("lemma", "empirical checks of the growth lemmas");
  std::string lemma_id;
  cli::LemmaParams lp;
  lemma->add_option("lemma", lemma_id, "borel, zero-count, min-modulus or log-deriv")->required();
  lemma->add_option("--expr", lp.expr, "g or f as an expression in z");
  lemma->add_option("--F", lp.F, "Borel: F as an expression in r");
  lemma->add_option("--phi", lp.phi, "Borel: phi as an expression in r");
  lemma->add_option("--xi", lp.xi, "Borel: xi(x) as an expression in L = log x");
  lemma->add_option("--C", lp.C, "Borel constant C > 1");
  lemma->add_option("--r0", lp.r0, "Borel range start");
  lemma->add_option("--R", lp.R, "Borel range end");
  lemma->add_option("--delta", lp.delta, "min-modulus density threshold");
  lemma->add_option("--k", lp.k, "log-deriv: upper derivative order");
  lemma->add_option("--j", lp.j, "log-deriv: lower derivative order");

  auto* density = app.add_subcommand("density", "measures and density proxies of a radius set");
  std::string source;
  double horizon = 1000.0;
  density->add_option("source", source, "interval JSON file, or 'comb a len', 'decay 2^-n', 'empty'")->required();
  density->add_option("-R,--horizon", horizon, "horizon R");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::InputError;
  }

  try {
    if (!grid_spec.empty()) cli::apply_grid_spec(config, grid_spec);
    config.out_dir = out_dir;
    config.validate();
    cli::CommandResult res;
    std::string name;
    if (*curve) {
      res = cli::cmd_curve(expr, functionals, target, config);
      name = "curve";
    } else if (*deficiency) {
      res = cli::cmd_deficiency(expr, kind, targets, config);
      name = "deficiency";
    } else if (*verify) {
      res = cli::cmd_verify_ode(file, config, vo);
      name = "verify-ode";
    } else if (*standard) {
      res = cli::cmd_standardness(file, config, so);
      name = "standardness";
    } else if (*lemma) {
      res = cli::cmd_lemma(lemma_id, lp, config);
      name = "lemma-" + lemma_id;
    } else {
      res = cli::cmd_density(source, horizon);
      name = "density";
    }
    cli::write_outputs(config, name, res);
    std::cout << res.report.dump(2) << '\n';
    return res.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? cli::InputError : cli::NumericFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::NumericFailure;
  }
}
