#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace calabi::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kNumericalFailure = 2, kVerificationFailure = 3 };

struct RunConfig {
  std::string subcommand;
  int n = 1;
  // Exactly one curvature source: s_m directly, or a curve of (genus, degree).
  std::optional<double> s_m;
  std::optional<int> genus;
  std::optional<int> degree;
  std::optional<std::string> tau0;  // exact fiber area for dims
  double k = 400.0;
  std::vector<double> k_list;
  std::optional<long> a_min, a_max;
  double quad_tol = 1e-10;
  std::string format = "csv";
  std::string out;  // empty: stdout
  int threads = 1;
  std::uint64_t seed = 7;

  bool geometry_mode() const { return !s_m.has_value(); }
  int genus_or_default() const { return genus.value_or(2); }
  int degree_or_default() const { return degree.value_or(2); }
  void validate() const;
};

// Throws InvalidInput on malformed or inconsistent flags. Returns nullopt after --help.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& help_out);

// Runs one subcommand and writes its table to os; returns the process exit code.
int run(const RunConfig& cfg, std::ostream& os);

// parse_args + run, with errors mapped to exit codes and written to err.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace calabi::cli
