#pragma once

// Command implementations behind the `minlab` executable. Each command is
// also callable in-process so tests can drive it without spawning a binary.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "minlab/measures.hpp"
#include "minlab/oracle.hpp"
#include "minlab/state_io.hpp"
#include "minlab/states.hpp"

namespace minlab::cli {

enum ExitCode : int { kOk = 0, kNumerical = 1, kUsage = 2, kIo = 3 };

inline constexpr double kDefaultEqualityTol = 1e-6;
inline constexpr double kDefaultThresholdTol = 1e-4;
inline constexpr double kVerifyTol = 1e-5;

/// Inclusive grid start:end:step. The end point is included when `step`
/// divides the range (up to roundoff).
struct Grid {
  double start = 0.0;
  double end = 1.0;
  double step = 0.01;

  [[nodiscard]] std::vector<double> points() const;
};

[[nodiscard]] Grid parse_grid(const std::string& text);

/// 12 significant digits, '.' separator, independent of the C locale.
[[nodiscard]] std::string format_number(double v);

struct MeasureReport {
  DimensionProfile profile;
  std::size_t part = 0;  // 0-based
  double n_value = 0.0;
  double d_value = 0.0;
  std::string n_method;
  std::string d_method;
  double s_norm = 0.0;
  std::vector<double> k_eigenvalues;  // non-increasing
  std::optional<EqualityVerdict> verdict;
  std::optional<OracleResult> n_oracle;
  std::optional<OracleResult> d_oracle;
};

[[nodiscard]] MeasureReport measure(const StateInput& state, std::size_t part, const SearchConfig& cfg,
                                    bool with_oracle);
void print_measure(const MeasureReport& r, bool json, std::ostream& out);

struct SweepRow {
  double p = 0.0;
  double n_value = 0.0;
  double d_value = 0.0;
  std::array<double, 3> eta{};
  double s_norm = 0.0;
  EqualityCase equality_case = EqualityCase::NotApplicable;
  bool predicted_equal = false;
  bool observed_equal = false;
};

[[nodiscard]] SweepRow sweep_point(Family family, double p, std::size_t part, double tol_eq);
[[nodiscard]] std::vector<SweepRow> sweep(Family family, const Grid& grid, std::size_t part, double tol_eq);

inline constexpr const char* kSweepHeader = "p,N,D,eta1,eta2,eta3,s_norm,case,predicted_equal,observed_equal";
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_sweep_json(const std::vector<SweepRow>& rows, Family family, std::size_t part, double tol_eq,
                      std::ostream& out);
/// gnuplot script plotting N and D from a sweep CSV.
[[nodiscard]] std::string plot_script(const std::string& csv_path, Family family);

/// Boundaries of the eigenvector ordering condition in p, refined by bisection
/// to `tol`. Empty when the condition never changes sign on (0, 1).
[[nodiscard]] std::vector<double> threshold(Family family, std::size_t part, double tol);

struct VerifySuite {
  DimensionProfile profile;
  bool pure = true;
  std::size_t rank = 2;  // mixed suites only
  int count = 100;
};

struct VerifySuiteResult {
  std::string name;
  int samples = 0;
  int skipped = 0;
  double n_max_dev = 0.0;
  std::optional<double> d_max_dev;
  bool pass = true;
};

[[nodiscard]] std::vector<VerifySuite> default_verify_suites();
[[nodiscard]] VerifySuiteResult run_verify_suite(const VerifySuite& suite, std::uint64_t seed,
                                                 const SearchConfig& cfg);
/// Runs every suite and writes the text report. Returns true if all pass.
bool verify(const std::vector<VerifySuite>& suites, std::uint64_t seed, const SearchConfig& cfg,
            std::ostream& out);

/// Entry point for the executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace minlab::cli
