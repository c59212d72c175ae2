#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nevlab/deficiency.hpp"
#include "nevlab/grid.hpp"
#include "nevlab/nevanlinna.hpp"

namespace nevlab::cli {

enum ExitCode : int { Pass = 0, Violated = 1, InputError = 2, NumericFailure = 3 };

struct RunConfig {
  double r_min = 1.0;
  double r_max = 50.0;
  /// Points per decade for geometric grids, intervals for linear ones.
  double density = 80.0;
  Spacing spacing = Spacing::Geometric;
  double tolerance = 1e-11;
  double tail_fraction = 0.25;
  double m_exponent = 1.5;
  std::filesystem::path out_dir;
  std::uint64_t seed = 1;

  /// Throws InvalidArgument.
  void validate() const;
  RadiusGrid grid() const;
  FunctionalOptions functionals() const;
  TailOptions tail() const;
  nlohmann::ordered_json to_json() const;
};

/// "rmin:rmax:density[:lin|geo]".
void apply_grid_spec(RunConfig& config, const std::string& spec);

struct CommandResult {
  int exit_code = Pass;
  nlohmann::ordered_json report;
  /// Plot-ready rows, written next to the JSON when an output directory is set.
  std::string csv;
};

/// Writes <name>.json (and <name>.csv when present) under config.out_dir.
void write_outputs(const RunConfig& config, const std::string& name, const CommandResult& result);

/// Functional names: m, N, T, T0, A, L, M.
CommandResult cmd_curve(const std::string& expr, const std::vector<std::string>& functionals,
                        const std::string& target, const RunConfig& config);

CommandResult cmd_deficiency(const std::string& expr, const std::string& kind, const std::vector<std::string>& targets,
                             const RunConfig& config);

struct VerifyOptions {
  std::size_t samples = 1000;
  double radius = 10.0;
  double residual_tolerance = 1e-9;
};

CommandResult cmd_verify_ode(const std::filesystem::path& file, const RunConfig& config,
                             const VerifyOptions& options = {});

struct StandardnessOptions {
  /// Empty: the first listed solution.
  std::string solution;
  int rays = 512;
};

CommandResult cmd_standardness(const std::filesystem::path& file, const RunConfig& config,
                               const StandardnessOptions& options = {});

struct LemmaParams {
  std::string expr;             // g or f for the function lemmas
  std::string F = "exp(r)";     // Borel: F as an expression in r
  std::string phi = "r";        // Borel: phi in r
  std::string xi = "L^2";       // Borel: xi in L = log x
  double C = 2.0;
  double r0 = 2.0;
  double R = 100.0;
  double delta = 0.1;
  int k = 1;
  int j = 0;
};

/// lemma in {borel, zero-count, min-modulus, log-deriv}.
CommandResult cmd_lemma(const std::string& lemma, const LemmaParams& params, const RunConfig& config);

/// source: a path to a JSON interval file, or a generator spec "comb a len",
/// "decay 2^-n", "empty".
CommandResult cmd_density(const std::string& source, double horizon);

}  // namespace nevlab::cli
