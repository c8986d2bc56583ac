#pragma once

// Command-line front end. run() is the whole program minus process setup, so tests can drive it.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lrl::cli {

inline constexpr const char* kSchemaVersion = "1.0.0";

enum ExitCode { ok = 0, usage = 1, verification_failed = 2, numerical_failure = 3 };

struct RunConfig {
  std::string subcommand;
  int d = 3;
  std::string spin = "scalar";  // scalar, half, one, one-extended
  std::string m = "1";
  std::string alpha = "1";
  int l = 0;
  std::string j = "1/2";
  int n = 0;
  int nmax = 2;
  int dmin = 2;
  int dmax = 10;
  int lmax = 2;
  // grid; zero extent means the default grid for the channel
  std::string grid = "log";
  double rmin = 0;
  double rmax = 0;
  int grid_points = 4000;
  // identity testing
  int npoints = 20;
  int nfunctions = 2;
  std::uint64_t seed = 1;
  bool numeric = false;
  double tol = 0;  // 0: per-channel default
  bool tamper = false;
  // eval-specfun
  std::string function = "k0";
  double x = 1;
  double b = 1;
  std::string format;  // json or csv; empty picks the subcommand default
  std::string output;
};

/// args excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lrl::cli
