#pragma once

#include <json.hpp>

#include "heckelab/hecke_affine.hpp"
#include "heckelab/rep_finite.hpp"

namespace heckelab {

struct CheckResult {
  std::string name;
  std::string params;
  bool pass = false;
  std::string measured;
  double ms = 0.0;
};

struct Report {
  std::string suite;
  nlohmann::json config;
  std::vector<CheckResult> checks;
  int failures() const;
  nlohmann::json to_json(bool with_times = true) const;
};

struct SuiteConfig {
  std::string suite = "all";
  std::string group = "gl:2:3";   // fam:n:q for the finite suites
  int p = 0;                      // residue characteristic for the affine suites
                                  // (defaults to the q of --group)
  std::string coeff;              // fp:P | gf:Q | q; empty picks a suite default
  uint64_t seed = 0;
  int jobs = 1;
};

// parse "fam:n:q"
std::tuple<std::string, int, int> parse_group(const std::string& descriptor);

Report run_suite(const SuiteConfig& config);

extern const std::vector<std::string> kSuiteNames;

}  // namespace heckelab
