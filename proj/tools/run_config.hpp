#pragma once

#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "herbst/kernel.hpp"
#include "herbst/spectral.hpp"

namespace herbst::cli {

// Everything a subcommand reads. Defaults: bump of depth 1 and radius 1, m = 1, n = 200.
struct RunConfig {
  std::string potential = "bump";  // bump | gauss | well | table:PATH
  double depth = 1.0;
  double radius = 1.0;
  double mass = 1.0;
  int grid_n = 200;
  double alpha_max = 0.05;  // continuation runs on alpha_count points in [0, alpha_max]
  int alpha_count = 11;
  double tol = 1.0;  // multiplies the pinned tolerances of the verification suites
  double a_zero_tol = 1e-8;
  std::string format = "csv";
  std::string out;  // empty: stdout

  // kernel and bound: either energy or mu; mu wins when both are set.
  double energy = std::numeric_limits<double>::quiet_NaN();
  double mu = 0.5;
  double r_min = 0.01;
  double r_max = 10.0;
  int rows = 100;

  // threshold
  std::string state = "ground";  // ground | zero_overlap
  std::string branch = "auto";   // auto | a_zero
  int lambda_points = 20;

  // Throws DomainError naming the offending field.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

// Reads a YAML mapping of RunConfig fields into cfg. Unknown keys and bad
// values raise DomainError as "path:line: message".
void load_config(const std::string& path, RunConfig& cfg);

spectral::RadialPotential make_potential(const RunConfig& cfg);
kernel::PhysParams kernel_params(const RunConfig& cfg);

}  // namespace herbst::cli
