#ifndef MUMENET_LP_HPP
#define MUMENET_LP_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "mumenet/milp.hpp"

namespace mumenet {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Computational form: min c·x subject to lo <= Ax <= hi, lb <= x <= ub.
/// Structural bounds are finite; row activities may be one-sided.
struct LpProblem {
  std::vector<double> obj;
  std::vector<double> lb, ub;
  struct Row {
    std::vector<LinTerm> terms;
    double lo = -kInf;
    double hi = kInf;
  };
  std::vector<Row> rows;

  std::size_t num_vars() const { return obj.size(); }
};

/// Relaxation of a MILP model (integrality dropped).
LpProblem lp_relaxation(const MilpModel& model);

enum class LpStatus { Optimal, Infeasible, IterLimit, TimeLimit, Numerical };

struct LpResult {
  LpStatus status = LpStatus::Numerical;
  std::vector<double> x;  // structural values
  double objective = 0.0;
  std::int64_t iterations = 0;
};

struct SimplexOptions {
  double feas_tol = 1e-7;
  double opt_tol = 1e-9;
  double pivot_tol = 1e-9;
  std::int64_t max_iterations = 2000000;
  double time_limit_ms = kInf;
  bool bland = false;  // force Bland's rule from the first iteration
  int refactor_interval = 64;
};

/// Bounded-variable primal simplex with a composite phase 1. The basis is
/// kept as a sparse LU factorization (refreshed periodically) plus
/// product-form updates. Variable bounds may be tightened between solves
/// for warm-started re-solves.
class RevisedSimplex {
 public:
  RevisedSimplex(const LpProblem& problem, SimplexOptions options = {});
  ~RevisedSimplex();
  RevisedSimplex(const RevisedSimplex&) = delete;
  RevisedSimplex& operator=(const RevisedSimplex&) = delete;

  /// Replaces the bounds of structural variable j (used to fix binaries).
  void set_var_bounds(std::int32_t j, double lb, double ub);
  /// Restores the original bounds of structural variable j.
  void reset_var_bounds(std::int32_t j);
  /// Wall-clock budget applied to subsequent solve() calls.
  void set_time_limit_ms(double limit_ms);

  /// Solves from the all-logical basis (warm = false) or from the basis
  /// left by the previous call (warm = true).
  LpResult solve(bool warm = false);

  std::int64_t total_iterations() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Exact dense tableau simplex over rationals; exists as the numerical
/// fallback and as an independent check for the revised engine. Only
/// sensible for small instances.
LpResult solve_lp_exact(const LpProblem& problem, std::int64_t max_iterations = 200000);

}  // namespace mumenet

#endif
