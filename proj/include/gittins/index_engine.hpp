#pragma once

#include <cstddef>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "gittins/value_function.hpp"

namespace gittins {

struct IndexQuery {
  double mean = 0.0;
  double variance = 1.0;
  int remaining = 1;
};

struct EngineOptions {
  double tol = 1e-6;                   // per-stage fit tolerance, relative to t * sqrt(s)
  double root_tol = 1e-12;             // x tolerance of the root search
  std::size_t max_segments = 1u << 16;
  double domain_sd = 10.0;             // right end of the working domain, in posterior sds
};

// Signed stage value V_t(x) = x + E[W_{t-1}(x + eta)], eta ~ N(0, noise_var), where
// W_{t-1} = max{0, V_{t-1}}. With an empty `previous` this is V_1(x) = x.
// Holds a reference: `previous` must outlive the StageValue.
class StageValue {
 public:
  StageValue(const ValueFunction& previous, double noise_var);

  int stage() const { return previous_->stage() + 1; }
  double operator()(double x) const;

 private:
  const ValueFunction* previous_;
  double noise_var_;
};

// Largest zero of the (strictly increasing) signed stage value. Brackets on
// [-8 scale, 0], widens once to [-64 scale, 0], then runs Illinois regula falsi.
// Throws DomainError when neither bracket contains a sign change.
double largest_root(const StageValue& v, double scale, double xtol = 1e-12);

// gamma(0, sigma^2, m) = -(largest root of V_m).
double index_zero_root(const StageValue& v, double scale = 1.0);

// One step of the Bellman recursion: fits max{0, V_t} on [root, domain_sd * sqrt(var)]
// with adaptive quadratic pieces; right tail has slope t. The returned function's lo()
// is the root of V_t.
ValueFunction bellman_backup(const ValueFunction& previous, double stage_variance,
                             double noise_var, const EngineOptions& opts = {},
                             FitStats* stats = nullptr);

// Result of one backward induction from prior variance `variance` over m stages.
// zero_index[k-1] = gamma(0, s_k, k) with s_k = variance / (1 + (m-k) variance).
struct DiagonalSolve {
  std::vector<double> zero_index;
  std::size_t max_segments = 0;
  std::size_t evaluations = 0;
  double max_fit_error = 0.0;
};

DiagonalSolve solve_diagonal(double variance, int m, const EngineOptions& opts = {});

// Gittins index with memoization of gamma(0, ., .). Every induction also stores the
// intermediate stages it passes through, so queries along one diagonal cost one solve.
// Safe for concurrent use.
class IndexEngine {
 public:
  explicit IndexEngine(EngineOptions opts = {}) : opts_(opts) {}

  const EngineOptions& options() const { return opts_; }

  double zero_index(double variance, int m) const;
  double index(const IndexQuery& q) const { return q.mean + zero_index(q.variance, q.remaining); }
  std::size_t cache_size() const;

 private:
  struct Key {
    double variance;
    int m;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  static Key make_key(double variance, int m);

  EngineOptions opts_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Key, double, KeyHash> cache_;
};

double gittins_index(const IndexQuery& q, double tol = 1e-6);

}  // namespace gittins
