#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "herbst/error.hpp"

namespace herbst::cli {

namespace {
void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError("config: " + msg);
}
}  // namespace

void RunConfig::validate() const {
  const bool table = potential.rfind("table:", 0) == 0;
  require(potential == "bump" || potential == "gauss" || potential == "well" || (table && potential.size() > 6),
          "potential must be bump, gauss, well or table:PATH, got '" + potential + "'");
  require(std::isfinite(depth) && depth >= 0.0, "depth must be finite and >= 0");
  require(std::isfinite(radius) && radius > 0.0, "radius must be positive");
  require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
  require(grid_n >= 8 && grid_n <= 4000, "grid_n must lie in [8, 4000]");
  require(alpha_max > 0.0 && alpha_max < mass, "alpha_max must lie in (0, mass)");
  require(alpha_count >= 8, "alpha_count must be at least 8");
  require(tol > 0.0 && std::isfinite(tol), "tol must be positive");
  require(a_zero_tol > 0.0 && a_zero_tol < 1.0, "a_zero_tol must lie in (0, 1)");
  require(format == "csv" || format == "json", "format must be csv or json");
  require(r_min > 0.0 && r_max > r_min, "need 0 < r_min < r_max");
  require(rows >= 2, "rows must be at least 2");
  require(state == "ground" || state == "zero_overlap", "state must be ground or zero_overlap");
  require(branch == "auto" || branch == "a_zero", "branch must be auto or a_zero");
  require(lambda_points >= 2, "lambda_points must be at least 2");
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["potential"] = potential;
  j["depth"] = depth;
  j["radius"] = radius;
  j["mass"] = mass;
  j["grid_n"] = grid_n;
  j["alpha_max"] = alpha_max;
  j["alpha_count"] = alpha_count;
  j["tol"] = tol;
  j["a_zero_tol"] = a_zero_tol;
  j["format"] = format;
  j["out"] = out;
  j["energy"] = std::isfinite(energy) ? nlohmann::ordered_json(energy) : nlohmann::ordered_json(nullptr);
  j["mu"] = std::isfinite(mu) ? nlohmann::ordered_json(mu) : nlohmann::ordered_json(nullptr);
  j["r_min"] = r_min;
  j["r_max"] = r_max;
  j["rows"] = rows;
  j["state"] = state;
  j["branch"] = branch;
  j["lambda_points"] = lambda_points;
  return j;
}

void load_config(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw DomainError(path + ": cannot open config file");
  YAML::Node root;
  try {
    root = YAML::Load(in);
  } catch (const YAML::ParserException& e) {
    throw DomainError(fmt::format("{}:{}: {}", path, e.mark.line + 1, e.msg));
  }
  if (root.IsNull()) return;
  if (!root.IsMap()) throw DomainError(fmt::format("{}:{}: expected a mapping of key: value", path, root.Mark().line + 1));

  using Setter = std::function<void(const YAML::Node&)>;
  auto num = [](double& dst) { return Setter([&dst](const YAML::Node& n) { dst = n.as<double>(); }); };
  auto integer = [](int& dst) { return Setter([&dst](const YAML::Node& n) { dst = n.as<int>(); }); };
  auto text = [](std::string& dst) { return Setter([&dst](const YAML::Node& n) { dst = n.as<std::string>(); }); };
  const std::map<std::string, Setter> fields{
      {"potential", text(cfg.potential)},     {"depth", num(cfg.depth)},
      {"radius", num(cfg.radius)},            {"mass", num(cfg.mass)},
      {"grid_n", integer(cfg.grid_n)},        {"alpha_max", num(cfg.alpha_max)},
      {"alpha_count", integer(cfg.alpha_count)}, {"tol", num(cfg.tol)},
      {"a_zero_tol", num(cfg.a_zero_tol)},    {"format", text(cfg.format)},
      {"out", text(cfg.out)},                 {"energy", num(cfg.energy)},
      {"mu", num(cfg.mu)},                    {"r_min", num(cfg.r_min)},
      {"r_max", num(cfg.r_max)},              {"rows", integer(cfg.rows)},
      {"state", text(cfg.state)},             {"branch", text(cfg.branch)},
      {"lambda_points", integer(cfg.lambda_points)},
  };

  for (const auto& kv : root) {
    const int line = kv.first.Mark().line + 1;
    const auto key = kv.first.as<std::string>();
    const auto it = fields.find(key);
    if (it == fields.end()) throw DomainError(fmt::format("{}:{}: unknown key '{}'", path, line, key));
    if (!kv.second.IsScalar()) throw DomainError(fmt::format("{}:{}: '{}' expects a scalar", path, line, key));
    try {
      it->second(kv.second);
    } catch (const YAML::BadConversion&) {
      throw DomainError(fmt::format("{}:{}: bad value '{}' for '{}'", path, line, kv.second.Scalar(), key));
    }
  }
  // energy given without mu in the file selects the energy path.
  if (root["energy"] && !root["mu"]) cfg.mu = std::numeric_limits<double>::quiet_NaN();
}

spectral::RadialPotential make_potential(const RunConfig& cfg) {
  if (cfg.potential == "bump") return spectral::bump(cfg.depth, cfg.radius);
  if (cfg.potential == "gauss") return spectral::truncated_gaussian(cfg.depth, cfg.radius);
  if (cfg.potential == "well") return spectral::square_well_smoothed(cfg.depth, cfg.radius);
  return spectral::scaled(spectral::tabulated_from_file(cfg.potential.substr(6)), cfg.depth);
}

kernel::PhysParams kernel_params(const RunConfig& cfg) {
  if (std::isfinite(cfg.mu)) return kernel::PhysParams::from_mu(cfg.mu, cfg.mass);
  if (std::isfinite(cfg.energy)) return kernel::PhysParams::from_energy(cfg.energy, cfg.mass);
  throw DomainError("config: kernel needs energy or mu");
}

}  // namespace herbst::cli
