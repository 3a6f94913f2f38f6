#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "gittins/index_engine.hpp"

namespace gittins {

// gamma(0, 1/T, m) for every T >= 1, m >= 1 with T + m <= horizon. This is all
// the flat-prior Gittins policy needs on a horizon-n run: the arm index is
// empirical mean + lookup(T, m).
class IndexTable {
 public:
  IndexTable() = default;
  IndexTable(int horizon, double tol);

  int horizon() const { return horizon_; }
  double tol() const { return tol_; }
  std::size_t size() const { return values_.size(); }

  // Throws RangeError unless T >= 1, m >= 1 and T + m <= horizon.
  double lookup(int T, int m) const { return values_[offset(T, m)]; }
  double& at(int T, int m) { return values_[offset(T, m)]; }
  bool contains(int T, int m) const { return T >= 1 && m >= 1 && T + m <= horizon_; }

  friend bool operator==(const IndexTable&, const IndexTable&) = default;

 private:
  std::size_t offset(int T, int m) const;

  int horizon_ = 0;
  double tol_ = 0.0;
  std::vector<double> values_;  // row T holds m = 1 .. horizon - T
};

struct TableBuildStats {
  std::size_t max_segments = 0;
  std::size_t evaluations = 0;
  double seconds = 0.0;
};

// One backward induction per horizon h in 1..n-1 starting at variance 1; stage k of
// induction h has variance 1/(h-k+1) and yields gamma(0, 1/(h-k+1), k).
// Horizons run in parallel (OpenMP, `jobs` threads, 0 = runtime default).
IndexTable build_table(int horizon, const EngineOptions& opts = {}, int jobs = 0,
                       TableBuildStats* stats = nullptr);

// Serial reference for build_table; bit-identical output.
IndexTable build_table_serial(int horizon, const EngineOptions& opts = {},
                              TableBuildStats* stats = nullptr);

// Bytes needed to hold a table for `horizon` in memory.
std::size_t table_bytes(int horizon);

// Text format:
//   % gittins index table
//   % format=1
//   % n=<horizon>
//   % tol=<tol>
//   T m value        (one row per entry, T ascending then m ascending, 17 sig. digits)
void save_table(const IndexTable& table, const std::filesystem::path& path);
IndexTable load_table(const std::filesystem::path& path);

}  // namespace gittins
