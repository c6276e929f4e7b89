#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "herbst/spectral.hpp"

// Verification suites: every closed form checked against an independent
// quadrature oracle, every property against a brute-force computation.
namespace herbst::verify {

struct Check {
  std::string suite;
  std::string group;  // checks sharing a group are one claim, e.g. "green_transform"
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double residual = 0.0;   // what is compared against tolerance
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
  // Checks of one group, and whether all of them pass.
  std::vector<Check> group(std::string_view g) const;
  bool group_passed(std::string_view g) const;
};

struct SuiteOptions {
  double m = 1.0;
  int grid_n = 200;
  spectral::RadialPotential potential = spectral::bump();
  double tol_scale = 1.0;  // multiplies every pinned tolerance
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"specfun", "appendix_a", "appendix_b",
                                              "appendix_c", "series", "continuation"};
  return names;
}

// Throws DomainError for an unknown suite name.
SuiteReport run_suite(std::string_view name, const SuiteOptions& opt = {});

}  // namespace herbst::verify
