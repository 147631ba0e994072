#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zeeman {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double time_limit = 0.0;
  double residual = 0.0; // worst normalized residual; pass needs <= 1
  std::string detail;
};

//! Runs the nine acceptance checks. quick trims the sampled grids, not the tolerances.
std::vector<CheckResult> run_acceptance(bool quick, std::uint64_t seed = 20240611);

//! "PASS  3 fock-oracle  0.41 s  residual 2.1e-05  ..." style line.
std::string format_check(const CheckResult& r);

} // namespace zeeman
