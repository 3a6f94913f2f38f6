#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace gittins {

class IndexTable;

// tau = min{m, min{t >= 1/nu^2 : mean_t + sqrt((4/t) log(4 t nu^2)) <= 0}}.
struct StoppingRule {
  double nu = -1.0;  // < 0
  int m = 1;         // >= 1
};

// Needs path.size() >= m. Reads only the first tau rewards.
int stopping_time(const StoppingRule& rule, std::span<const double> path);

enum class Verdict { Pass, Fail, Report };

// One row of a verification report. `margin` is positive when the check holds with
// room to spare (in the units of the estimate).
struct CheckRow {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  long reps = 0;
  Verdict verdict = Verdict::Report;
};

// Monte-Carlo mean of tau for rewards theta + N(0, 1). For theta >= 0 the row checks
// E[tau] >= m/2 (with 3 standard errors of slack); for theta < 0 it is report-only and
// `bound` holds the fitted constant c' = (E[tau] - 1) nu^2.
CheckRow mc_expected_tau(const StoppingRule& rule, double theta, long reps, std::uint64_t seed,
                         int jobs = 0);

struct Violation {
  int T;
  int m;
  double beta;
  double bound;
};

// beta = exp(T gamma0^2 / 2) <= m / log^{3/2}(m) for every entry with m >= 2, and the
// largest c with c min{m/log_+^{3/2} m, (m/T)/log_+^{1/2}(m/T)} <= beta on all of them.
struct BracketReport {
  std::size_t checked = 0;
  std::vector<Violation> violations;
  double fitted_c = 0.0;
  int fitted_T = 0;  // entry attaining fitted_c
  int fitted_m = 0;
};
BracketReport check_index_bracket(const IndexTable& table);

// Structural rows for a table: entries with m = 1 are exactly 0, all entries are >= 0,
// and each row T is nondecreasing in m up to `slack`.
std::vector<CheckRow> check_table_entries(const IndexTable& table, double slack);

// f(beta) = (1/beta) / sqrt(2 pi) - sqrt(log(beta) / 2) erfc(sqrt(log beta)), beta >= 1.
double f_beta(double beta);

inline constexpr double kLimitFBeta = 0.19947114020071633897;  // 1 / sqrt(8 pi)

// Rows for each grid point: f >= 1/(10 beta log beta) (beta >= 3) and
// f <= kLimitFBeta / (beta log beta); plus a report-only row with f beta log beta at
// the largest grid point against the limit. Its margin is
// limit_rel_tol * limit - |f beta log beta - limit|.
std::vector<CheckRow> check_f_beta(std::span<const double> grid, double limit_rel_tol = 0.05);

// Monte-Carlo checks of the Gaussian tail bound P{X >= x} <= exp(-(nu - x)^2 / (2 s^2)),
// the truncated mean E[X 1{X <= 0}] >= nu - s / sqrt(2 pi), and the maximal inequality
//   P{exists t <= n : S_t >= n Delta + sqrt(2 n log(1/delta))}
//     <= delta / sqrt(pi log(1/delta)) exp(-n Delta^2 / 2)
// for the random walk S_t of n standard normals. Each row allows 3 standard errors.
std::vector<CheckRow> mc_gaussian_tails(long reps, std::uint64_t seed, int jobs = 0);

// Below this many replications statistical rows are downgraded to Report.
inline constexpr long kMinStatReps = 1000;

// '%'-commented header, then "name estimate bound margin verdict" per row.
void write_checks(std::ostream& out, std::span<const CheckRow> rows);

const char* verdict_name(Verdict v);

}  // namespace gittins
