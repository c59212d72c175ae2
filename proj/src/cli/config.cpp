#include <charconv>
#include <fstream>
#include <sstream>

#include "nevlab/cli.hpp"
#include "nevlab/errors.hpp"
#include "nevlab/serialize.hpp"

namespace nevlab::cli {

namespace {

double number_field(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end) throw Error(ErrorCode::InvalidArgument, "bad " + what + " '" + text + "'");
  return v;
}

}  // namespace

void RunConfig::validate() const {
  if (!(r_min >= 0.1)) throw Error(ErrorCode::InvalidArgument, "r_min must be at least 0.1");
  if (!(r_max > r_min)) throw Error(ErrorCode::InvalidArgument, "r_max must exceed r_min");
  if (!(density > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid density must be positive");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "tail fraction must lie in (0, 1]");
  if (!(m_exponent > 1.0)) throw Error(ErrorCode::InvalidArgument, "m exponent must exceed 1");
}

RadiusGrid RunConfig::grid() const {
  validate();
  if (spacing == Spacing::Linear) return RadiusGrid::linear(r_min, r_max, static_cast<std::size_t>(density));
  return RadiusGrid::geometric(r_min, r_max, density);
}

FunctionalOptions RunConfig::functionals() const {
  FunctionalOptions o;
  o.quadrature.rel_tol = tolerance;
  return o;
}

TailOptions RunConfig::tail() const {
  TailOptions t;
  t.fraction = tail_fraction;
  return t;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["r_min"] = json_number(r_min);
  j["r_max"] = json_number(r_max);
  j["density"] = json_number(density);
  j["spacing"] = spacing == Spacing::Linear ? "lin" : "geo";
  j["tolerance"] = json_number(tolerance);
  j["tail_fraction"] = json_number(tail_fraction);
  j["m_exponent"] = json_number(m_exponent);
  j["seed"] = seed;
  return j;
}

void apply_grid_spec(RunConfig& config, const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4)
    throw Error(ErrorCode::InvalidArgument, "grid spec is rmin:rmax:density[:lin|geo], got '" + spec + "'");
  config.r_min = number_field(parts[0], "r_min");
  config.r_max = number_field(parts[1], "r_max");
  config.density = number_field(parts[2], "grid density");
  config.spacing = Spacing::Geometric;
  if (parts.size() == 4) {
    if (parts[3] == "lin")
      config.spacing = Spacing::Linear;
    else if (parts[3] == "geo")
      config.spacing = Spacing::Geometric;
    else
      throw Error(ErrorCode::InvalidArgument, "grid spacing must be lin or geo");
  }
  config.validate();
}

void write_outputs(const RunConfig& config, const std::string& name, const CommandResult& result) {
  if (config.out_dir.empty()) return;
  std::filesystem::create_directories(config.out_dir);
  {
    std::ofstream out(config.out_dir / (name + ".json"));
    out << result.report.dump(2) << '\n';
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write to " + config.out_dir.string());
  }
  if (!result.csv.empty()) {
    std::ofstream out(config.out_dir / (name + ".csv"));
    out << result.csv;
  }
}

}  // namespace nevlab::cli
