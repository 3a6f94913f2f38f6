#include "gittins/index_table.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gittins/errors.hpp"

namespace gittins {

IndexTable::IndexTable(int horizon, double tol) : horizon_(horizon), tol_(tol) {
  if (horizon < 2) throw InputError("IndexTable: horizon must be >= 2");
  values_.assign(std::size_t(horizon) * std::size_t(horizon - 1) / 2, 0.0);
}

std::size_t IndexTable::offset(int T, int m) const {
  if (!contains(T, m))
    throw RangeError("index table lookup (T=" + std::to_string(T) + ", m=" + std::to_string(m) +
                     ") outside T + m <= " + std::to_string(horizon_));
  const std::size_t t = std::size_t(T - 1);
  const std::size_t n = std::size_t(horizon_);
  return t * n - t * (t + 1) / 2 + std::size_t(m - 1);
}

std::size_t table_bytes(int horizon) {
  const std::size_t n = std::size_t(std::max(horizon, 0));
  return n * (n > 0 ? n - 1 : 0) / 2 * sizeof(double);
}

namespace {

// Fills the anti-diagonal T + m = h + 1.
void fill_horizon(IndexTable& table, int h, const EngineOptions& opts, TableBuildStats& local) {
  DiagonalSolve solve;
  try {
    solve = solve_diagonal(1.0, h, opts);
  } catch (const AccuracyError& e) {
    const int T = e.stage() > 0 ? h - e.stage() + 1 : 0;
    throw AccuracyError("build_table: horizon h=" + std::to_string(h) +
                            ", T=" + std::to_string(T) + ": " + e.what(),
                        e.achieved_tolerance(), e.stage());
  }
  for (int k = 1; k <= h; ++k) table.at(h - k + 1, k) = solve.zero_index[std::size_t(k - 1)];
  local.max_segments = std::max(local.max_segments, solve.max_segments);
  local.evaluations += solve.evaluations;
}

}  // namespace

IndexTable build_table(int horizon, const EngineOptions& opts, int jobs, TableBuildStats* stats) {
  IndexTable table(horizon, opts.tol);
  const auto start = std::chrono::steady_clock::now();
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  std::exception_ptr failure;
  std::size_t max_segments = 0;
  std::size_t evaluations = 0;

  // Longest inductions first so the dynamic schedule balances.
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) \
    reduction(max : max_segments) reduction(+ : evaluations)
  for (int i = 0; i < horizon - 1; ++i) {
    const int h = horizon - 1 - i;
    TableBuildStats local;
    try {
      fill_horizon(table, h, opts, local);
    } catch (...) {
#pragma omp critical(gittins_table_failure)
      if (!failure) failure = std::current_exception();
    }
    max_segments = std::max(max_segments, local.max_segments);
    evaluations += local.evaluations;
  }
  if (failure) std::rethrow_exception(failure);

  if (stats) {
    stats->max_segments = max_segments;
    stats->evaluations = evaluations;
    stats->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return table;
}

IndexTable build_table_serial(int horizon, const EngineOptions& opts, TableBuildStats* stats) {
  IndexTable table(horizon, opts.tol);
  const auto start = std::chrono::steady_clock::now();
  TableBuildStats local;
  for (int h = 1; h < horizon; ++h) fill_horizon(table, h, opts, local);
  if (stats) {
    *stats = local;
    stats->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return table;
}

void save_table(const IndexTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_table: cannot open " + path.string() + " for writing");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", table.tol());
  out << "% gittins index table: gamma(0, 1/T, m) for T + m <= n\n"
      << "% format=1\n"
      << "% n=" << table.horizon() << "\n"
      << "% tol=" << buf << "\n"
      << "% columns: T m value\n";
  for (int T = 1; T < table.horizon(); ++T) {
    for (int m = 1; T + m <= table.horizon(); ++m) {
      std::snprintf(buf, sizeof buf, "%.17g", table.lookup(T, m));
      out << T << ' ' << m << ' ' << buf << '\n';
    }
  }
  out.flush();
  if (!out) throw std::runtime_error("save_table: write failed for " + path.string());
}

namespace {

std::string missing_entry(int T, int m) {
  return "(T=" + std::to_string(T) + ", m=" + std::to_string(m) + ")";
}

}  // namespace

IndexTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("load_table: cannot open " + path.string(), 0);

  std::string line;
  std::size_t lineno = 0;
  int horizon = -1;
  int format = -1;
  double tol = -1.0;
  IndexTable table;
  bool allocated = false;
  int T = 1;
  int m = 1;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '%') {
      std::istringstream words(line.substr(1));
      std::string word;
      while (words >> word) {
        const auto eq = word.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = word.substr(0, eq);
        const std::string value = word.substr(eq + 1);
        char* end = nullptr;
        if (key == "n") {
          horizon = int(std::strtol(value.c_str(), &end, 10));
        } else if (key == "format") {
          format = int(std::strtol(value.c_str(), &end, 10));
        } else if (key == "tol") {
          tol = std::strtod(value.c_str(), &end);
        } else {
          continue;
        }
        if (end == value.c_str() || *end != '\0')
          throw FormatError("load_table: bad header value '" + word + "' on line " +
                                std::to_string(lineno),
                            lineno);
      }
      continue;
    }

    if (!allocated) {
      if (format != 1)
        throw FormatError("load_table: unsupported or missing format (expected format=1)", lineno);
      if (horizon < 2) throw FormatError("load_table: missing or invalid n=<horizon> header", lineno);
      if (!(tol > 0.0)) throw FormatError("load_table: missing or invalid tol=<tol> header", lineno);
      table = IndexTable(horizon, tol);
      allocated = true;
    }
    if (T >= horizon)
      throw FormatError("load_table: extra row beyond n=" + std::to_string(horizon) + " on line " +
                            std::to_string(lineno),
                        lineno);

    std::istringstream row(line);
    int rT = 0;
    int rm = 0;
    std::string value_text;
    std::string trailing;
    if (!(row >> rT >> rm >> value_text) || (row >> trailing))
      throw FormatError("load_table: malformed row on line " + std::to_string(lineno), lineno);
    if (rT != T || rm != m)
      throw FormatError("load_table: expected entry " + missing_entry(T, m) + " on line " +
                            std::to_string(lineno) + ", found " + missing_entry(rT, rm),
                        lineno);
    char* end = nullptr;
    const double value = std::strtod(value_text.c_str(), &end);
    if (end == value_text.c_str() || *end != '\0' || !std::isfinite(value))
      throw FormatError("load_table: bad value on line " + std::to_string(lineno), lineno);
    table.at(T, m) = value;
    if (T + m < horizon) {
      ++m;
    } else {
      ++T;
      m = 1;
    }
  }

  if (!allocated) {
    if (format != 1 || horizon < 2)
      throw FormatError("load_table: missing header in " + path.string(), lineno);
    table = IndexTable(horizon, tol);
  }
  if (T < horizon)
    throw FormatError("load_table: truncated file, first missing entry " + missing_entry(T, m),
                      lineno);
  return table;
}

}  // namespace gittins
