#include <algorithm>
#include <chrono>
#include <cmath>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "mumenet/errors.hpp"
#include "mumenet/lp.hpp"

namespace mumenet {

LpProblem lp_relaxation(const MilpModel& model) {
  LpProblem p;
  const std::size_t n = model.vars.size();
  p.obj.assign(n, 0.0);
  p.lb.resize(n);
  p.ub.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    p.lb[j] = model.vars[j].lb;
    p.ub[j] = model.vars[j].ub;
  }
  for (const LinTerm& t : model.objective) p.obj[static_cast<std::size_t>(t.var)] += t.coef;
  p.rows.reserve(model.cons.size());
  for (const Constraint& c : model.cons) {
    LpProblem::Row row;
    row.terms = c.terms;
    switch (c.rel) {
      case Rel::Eq: row.lo = row.hi = c.rhs; break;
      case Rel::Le: row.lo = -kInf; row.hi = c.rhs; break;
      case Rel::Ge: row.lo = c.rhs; row.hi = kInf; break;
    }
    p.rows.push_back(std::move(row));
  }
  return p;
}

namespace {

enum class VStat : std::uint8_t { AtLower, AtUpper, Basic, Fixed };

struct Eta {
  std::int32_t pos = -1;
  double pivot = 0.0;
  std::vector<std::pair<std::int32_t, double>> others;  // nonzeros except pos
};

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

}  // namespace

struct RevisedSimplex::Impl {
  // Problem in [A | -I] form: n structural columns, m logical columns.
  std::int32_t n = 0, m = 0;
  std::vector<std::int32_t> col_ptr;  // structural columns, CSC
  std::vector<std::int32_t> col_row;
  std::vector<double> col_val;
  std::vector<double> cost;             // size n+m (logicals 0)
  std::vector<double> lb, ub;           // size n+m
  std::vector<double> orig_lb, orig_ub; // structural originals
  SimplexOptions opt;

  // Basis state.
  std::vector<VStat> status;            // size n+m
  std::vector<std::int32_t> basic_of_row;  // size m, variable index
  std::vector<std::int32_t> row_of_basic;  // size n+m, -1 if nonbasic
  std::vector<double> xval;             // size n+m
  bool basis_valid = false;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  bool lu_ok = false;
  std::vector<Eta> etas;
  std::int64_t iterations_total = 0;

  // Scratch
  Eigen::VectorXd work;

  explicit Impl(const LpProblem& p, SimplexOptions options) : opt(options) {
    n = static_cast<std::int32_t>(p.num_vars());
    m = static_cast<std::int32_t>(p.rows.size());
    col_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
    // Column counts from row-major input.
    std::vector<std::int32_t> counts(static_cast<std::size_t>(n), 0);
    for (const auto& row : p.rows)
      for (const LinTerm& t : row.terms)
        if (t.coef != 0.0) ++counts[static_cast<std::size_t>(t.var)];
    for (std::int32_t j = 0; j < n; ++j) col_ptr[static_cast<std::size_t>(j) + 1] = col_ptr[j] + counts[static_cast<std::size_t>(j)];
    col_row.resize(static_cast<std::size_t>(col_ptr[n]));
    col_val.resize(static_cast<std::size_t>(col_ptr[n]));
    std::vector<std::int32_t> fill(col_ptr.begin(), col_ptr.end() - 1);
    for (std::int32_t i = 0; i < m; ++i)
      for (const LinTerm& t : p.rows[static_cast<std::size_t>(i)].terms)
        if (t.coef != 0.0) {
          const auto at = static_cast<std::size_t>(fill[static_cast<std::size_t>(t.var)]++);
          col_row[at] = i;
          col_val[at] = t.coef;
        }

    cost.assign(static_cast<std::size_t>(n + m), 0.0);
    for (std::int32_t j = 0; j < n; ++j) cost[static_cast<std::size_t>(j)] = p.obj[static_cast<std::size_t>(j)];
    lb.resize(static_cast<std::size_t>(n + m));
    ub.resize(static_cast<std::size_t>(n + m));
    for (std::int32_t j = 0; j < n; ++j) {
      lb[static_cast<std::size_t>(j)] = p.lb[static_cast<std::size_t>(j)];
      ub[static_cast<std::size_t>(j)] = p.ub[static_cast<std::size_t>(j)];
    }
    for (std::int32_t i = 0; i < m; ++i) {
      lb[static_cast<std::size_t>(n + i)] = p.rows[static_cast<std::size_t>(i)].lo;
      ub[static_cast<std::size_t>(n + i)] = p.rows[static_cast<std::size_t>(i)].hi;
    }
    orig_lb.assign(lb.begin(), lb.begin() + n);
    orig_ub.assign(ub.begin(), ub.begin() + n);
    status.assign(static_cast<std::size_t>(n + m), VStat::AtLower);
    basic_of_row.assign(static_cast<std::size_t>(m), -1);
    row_of_basic.assign(static_cast<std::size_t>(n + m), -1);
    xval.assign(static_cast<std::size_t>(n + m), 0.0);
    work.resize(m);
  }

  // ---- basis plumbing ------------------------------------------------

  double bound_start_value(std::int32_t j) const {
    const double l = lb[static_cast<std::size_t>(j)], u = ub[static_cast<std::size_t>(j)];
    if (l == u) return l;
    if (std::isfinite(l)) return l;
    if (std::isfinite(u)) return u;
    return 0.0;
  }

  VStat bound_start_status(std::int32_t j) const {
    const double l = lb[static_cast<std::size_t>(j)], u = ub[static_cast<std::size_t>(j)];
    if (l == u) return VStat::Fixed;
    if (std::isfinite(l)) return VStat::AtLower;
    return VStat::AtUpper;
  }

  void reset_to_logical_basis() {
    for (std::int32_t j = 0; j < n + m; ++j) {
      status[static_cast<std::size_t>(j)] = bound_start_status(j);
      xval[static_cast<std::size_t>(j)] = bound_start_value(j);
      row_of_basic[static_cast<std::size_t>(j)] = -1;
    }
    for (std::int32_t i = 0; i < m; ++i) {
      basic_of_row[static_cast<std::size_t>(i)] = n + i;
      status[static_cast<std::size_t>(n + i)] = VStat::Basic;
      row_of_basic[static_cast<std::size_t>(n + i)] = i;
    }
    basis_valid = true;
  }

  bool refactorize() {
    Eigen::SparseMatrix<double> B(m, m);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(col_ptr[n] / std::max(1, n) + 2) * static_cast<std::size_t>(m));
    for (std::int32_t i = 0; i < m; ++i) {
      const std::int32_t j = basic_of_row[static_cast<std::size_t>(i)];
      if (j < n) {
        for (std::int32_t t = col_ptr[static_cast<std::size_t>(j)]; t < col_ptr[static_cast<std::size_t>(j) + 1]; ++t)
          trips.emplace_back(col_row[static_cast<std::size_t>(t)], i, col_val[static_cast<std::size_t>(t)]);
      } else {
        trips.emplace_back(j - n, i, -1.0);
      }
    }
    B.setFromTriplets(trips.begin(), trips.end());
    B.makeCompressed();
    lu.compute(B);
    lu_ok = lu.info() == Eigen::Success;
    etas.clear();
    return lu_ok;
  }

  void ftran(Eigen::VectorXd& v) const {
    Eigen::VectorXd solved = lu.solve(v);
    v.swap(solved);
    for (const Eta& e : etas) {
      const double piv = v[e.pos] / e.pivot;
      if (piv != 0.0)
        for (const auto& [i, w] : e.others) v[i] -= w * piv;
      v[e.pos] = piv;
    }
  }

  void btran(Eigen::VectorXd& u) const {
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
      double acc = u[it->pos];
      for (const auto& [i, w] : it->others) acc -= w * u[i];
      u[it->pos] = acc / it->pivot;
    }
    Eigen::VectorXd solved = lu.transpose().solve(u);
    u.swap(solved);
  }

  /// Recomputes basic values from nonbasic bounds (fresh, no drift).
  void recompute_basics() {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    for (std::int32_t j = 0; j < n + m; ++j) {
      if (status[static_cast<std::size_t>(j)] == VStat::Basic) continue;
      const double v = xval[static_cast<std::size_t>(j)];
      if (v == 0.0) continue;
      if (j < n) {
        for (std::int32_t t = col_ptr[static_cast<std::size_t>(j)]; t < col_ptr[static_cast<std::size_t>(j) + 1]; ++t)
          rhs[col_row[static_cast<std::size_t>(t)]] -= col_val[static_cast<std::size_t>(t)] * v;
      } else {
        rhs[j - n] += v;
      }
    }
    ftran(rhs);
    for (std::int32_t i = 0; i < m; ++i) xval[static_cast<std::size_t>(basic_of_row[static_cast<std::size_t>(i)])] = rhs[i];
  }

  void column_into(std::int32_t j, Eigen::VectorXd& v) const {
    v.setZero();
    if (j < n) {
      for (std::int32_t t = col_ptr[static_cast<std::size_t>(j)]; t < col_ptr[static_cast<std::size_t>(j) + 1]; ++t)
        v[col_row[static_cast<std::size_t>(t)]] = col_val[static_cast<std::size_t>(t)];
    } else {
      v[j - n] = -1.0;
    }
  }

  double dot_column(std::int32_t j, const Eigen::VectorXd& y) const {
    if (j >= n) return -y[j - n];
    double acc = 0.0;
    for (std::int32_t t = col_ptr[static_cast<std::size_t>(j)]; t < col_ptr[static_cast<std::size_t>(j) + 1]; ++t)
      acc += col_val[static_cast<std::size_t>(t)] * y[col_row[static_cast<std::size_t>(t)]];
    return acc;
  }

  // ---- iteration machinery -------------------------------------------

  double infeasibility() const {
    double total = 0.0;
    for (std::int32_t i = 0; i < m; ++i) {
      const std::int32_t j = basic_of_row[static_cast<std::size_t>(i)];
      const double v = xval[static_cast<std::size_t>(j)];
      if (v < lb[static_cast<std::size_t>(j)] - opt.feas_tol) total += lb[static_cast<std::size_t>(j)] - v;
      else if (v > ub[static_cast<std::size_t>(j)] + opt.feas_tol) total += v - ub[static_cast<std::size_t>(j)];
    }
    return total;
  }

  /// Phase-1 costs live on infeasible basics only.
  void phase1_costs(Eigen::VectorXd& cb) const {
    for (std::int32_t i = 0; i < m; ++i) {
      const std::int32_t j = basic_of_row[static_cast<std::size_t>(i)];
      const double v = xval[static_cast<std::size_t>(j)];
      if (v < lb[static_cast<std::size_t>(j)] - opt.feas_tol) cb[i] = -1.0;
      else if (v > ub[static_cast<std::size_t>(j)] + opt.feas_tol) cb[i] = 1.0;
      else cb[i] = 0.0;
    }
  }

  void phase2_costs(Eigen::VectorXd& cb) const {
    for (std::int32_t i = 0; i < m; ++i) cb[i] = cost[static_cast<std::size_t>(basic_of_row[static_cast<std::size_t>(i)])];
  }

  LpResult run(bool warm) {
    LpResult result;
    const double t_start = now_ms();
    if (!warm || !basis_valid) reset_to_logical_basis();
    // Nonbasic variables may sit outside freshly tightened bounds; clamp.
    for (std::int32_t j = 0; j < n + m; ++j) {
      if (status[static_cast<std::size_t>(j)] == VStat::Basic) continue;
      double v = xval[static_cast<std::size_t>(j)];
      const double l = lb[static_cast<std::size_t>(j)], u = ub[static_cast<std::size_t>(j)];
      if (l == u) { status[static_cast<std::size_t>(j)] = VStat::Fixed; v = l; }
      else if (status[static_cast<std::size_t>(j)] == VStat::Fixed) {
        // bounds were relaxed again
        status[static_cast<std::size_t>(j)] = std::isfinite(l) ? VStat::AtLower : VStat::AtUpper;
        v = std::isfinite(l) ? l : u;
      }
      else if (v <= l || !std::isfinite(u)) { v = l; status[static_cast<std::size_t>(j)] = VStat::AtLower; }
      else if (v >= u || !std::isfinite(l)) { v = u; status[static_cast<std::size_t>(j)] = VStat::AtUpper; }
      else { v = std::isfinite(l) ? l : u; status[static_cast<std::size_t>(j)] = std::isfinite(l) ? VStat::AtLower : VStat::AtUpper; }
      xval[static_cast<std::size_t>(j)] = v;
    }
    if (!refactorize()) {
      reset_to_logical_basis();
      if (!refactorize()) { result.status = LpStatus::Numerical; return result; }
    }
    recompute_basics();

    Eigen::VectorXd cb(m), y(m), w(m);
    std::int64_t iter = 0;
    std::int64_t stall = 0;
    bool bland = opt.bland;
    double last_metric = kInf;
    int since_refactor = 0;

    while (true) {
      if (iter >= opt.max_iterations) { result.status = LpStatus::IterLimit; break; }
      if ((iter & 127) == 0 && now_ms() - t_start > opt.time_limit_ms) {
        result.status = LpStatus::TimeLimit;
        break;
      }

      const double infeas = infeasibility();
      const bool phase1 = infeas > opt.feas_tol;

      // Pricing.
      if (phase1) phase1_costs(cb); else phase2_costs(cb);
      y = cb;
      btran(y);

      std::int32_t enter = -1;
      double best_score = phase1 ? 1e-9 : opt.opt_tol;
      int enter_dir = 0;
      for (std::int32_t j = 0; j < n + m; ++j) {
        const VStat st = status[static_cast<std::size_t>(j)];
        if (st == VStat::Basic || st == VStat::Fixed) continue;
        const double cj = phase1 ? 0.0 : cost[static_cast<std::size_t>(j)];
        const double d = cj - dot_column(j, y);
        if (st == VStat::AtLower) {
          if (d < -best_score) {
            if (bland) { enter = j; enter_dir = +1; break; }
            best_score = -d; enter = j; enter_dir = +1;
          }
        } else {  // AtUpper
          if (d > best_score) {
            if (bland) { enter = j; enter_dir = -1; break; }
            best_score = d; enter = j; enter_dir = -1;
          }
        }
      }

      if (enter < 0) {
        if (phase1) { result.status = LpStatus::Infeasible; break; }
        result.status = LpStatus::Optimal;
        break;
      }

      // Direction through the basis.
      column_into(enter, w);
      ftran(w);

      // Ratio test. x_B moves by -dir * w per unit step of the entering var.
      double limit = ub[static_cast<std::size_t>(enter)] - lb[static_cast<std::size_t>(enter)];
      if (!std::isfinite(limit)) limit = kInf;
      std::int32_t leave_row = -1;
      double leave_to = 0.0;
      double best_ratio = limit;
      double best_pivot = 0.0;
      for (std::int32_t i = 0; i < m; ++i) {
        const double wi = w[i];
        if (std::abs(wi) <= opt.pivot_tol) continue;
        const double delta = -enter_dir * wi;  // movement of basic i per unit step
        const std::int32_t bj = basic_of_row[static_cast<std::size_t>(i)];
        const double v = xval[static_cast<std::size_t>(bj)];
        const double l = lb[static_cast<std::size_t>(bj)], u = ub[static_cast<std::size_t>(bj)];
        double ratio = kInf;
        double target = 0.0;
        if (v < l - opt.feas_tol) {
          // below its lower bound: blocks only when rising back to it
          if (delta > 0) { ratio = (l - v) / delta; target = l; }
        } else if (v > u + opt.feas_tol) {
          if (delta < 0) { ratio = (u - v) / delta; target = u; }
        } else if (delta < 0) {
          if (std::isfinite(l)) { ratio = (l - v) / delta; target = l; }
        } else {
          if (std::isfinite(u)) { ratio = (u - v) / delta; target = u; }
        }
        if (ratio == kInf) continue;
        if (ratio < -opt.feas_tol) ratio = 0.0;
        if (ratio < best_ratio - 1e-10 ||
            (ratio < best_ratio + 1e-10 &&
             (std::abs(wi) > std::abs(best_pivot) + 1e-12 ||
              (std::abs(std::abs(wi) - std::abs(best_pivot)) <= 1e-12 && leave_row >= 0 &&
               bj < basic_of_row[static_cast<std::size_t>(leave_row)])))) {
          best_ratio = std::max(ratio, 0.0);
          leave_row = i;
          leave_to = target;
          best_pivot = wi;
        }
      }

      if (best_ratio == kInf) { result.status = LpStatus::Numerical; break; }  // unbounded ray

      const double step = best_ratio;
      // Apply the move.
      if (step != 0.0) {
        for (std::int32_t i = 0; i < m; ++i) {
          if (w[i] == 0.0) continue;
          const std::int32_t bj = basic_of_row[static_cast<std::size_t>(i)];
          xval[static_cast<std::size_t>(bj)] -= enter_dir * step * w[i];
        }
        xval[static_cast<std::size_t>(enter)] += enter_dir * step;
      }

      if (leave_row < 0) {
        // Bound flip: entering variable crossed to its other bound.
        status[static_cast<std::size_t>(enter)] =
            enter_dir > 0 ? VStat::AtUpper : VStat::AtLower;
        xval[static_cast<std::size_t>(enter)] =
            enter_dir > 0 ? ub[static_cast<std::size_t>(enter)] : lb[static_cast<std::size_t>(enter)];
      } else {
        const std::int32_t leave_var = basic_of_row[static_cast<std::size_t>(leave_row)];
        xval[static_cast<std::size_t>(leave_var)] = leave_to;
        status[static_cast<std::size_t>(leave_var)] =
            (lb[static_cast<std::size_t>(leave_var)] == ub[static_cast<std::size_t>(leave_var)])
                ? VStat::Fixed
                : (leave_to == lb[static_cast<std::size_t>(leave_var)] ? VStat::AtLower : VStat::AtUpper);
        row_of_basic[static_cast<std::size_t>(leave_var)] = -1;
        basic_of_row[static_cast<std::size_t>(leave_row)] = enter;
        row_of_basic[static_cast<std::size_t>(enter)] = leave_row;
        status[static_cast<std::size_t>(enter)] = VStat::Basic;

        Eta eta;
        eta.pos = leave_row;
        eta.pivot = w[leave_row];
        for (std::int32_t i = 0; i < m; ++i)
          if (i != leave_row && w[i] != 0.0) eta.others.emplace_back(i, w[i]);
        etas.push_back(std::move(eta));

        if (++since_refactor >= opt.refactor_interval) {
          since_refactor = 0;
          if (!refactorize()) { result.status = LpStatus::Numerical; break; }
          recompute_basics();
        }
      }

      ++iter;
      ++iterations_total;

      // Stall detection flips to Bland's rule for a while.
      const double metric = phase1 ? infeas : 0.0;
      if (!phase1) {
        double objv = 0.0;
        for (std::int32_t j = 0; j < n; ++j) objv += cost[static_cast<std::size_t>(j)] * xval[static_cast<std::size_t>(j)];
        if (objv < last_metric - 1e-12) { last_metric = objv; stall = 0; }
        else if (++stall > 300) { bland = true; }
      } else {
        if (metric < last_metric - 1e-12) { last_metric = metric; stall = 0; }
        else if (++stall > 300) { bland = true; }
      }
      if (bland && stall == 0 && !opt.bland) bland = false;  // progress resumed
    }

    result.iterations = iter;
    if (result.status == LpStatus::Optimal) {
      // Fresh residual pass kills accumulated drift before reporting.
      if (!refactorize()) { result.status = LpStatus::Numerical; return result; }
      recompute_basics();
      if (infeasibility() > 100 * opt.feas_tol * (1.0 + static_cast<double>(m))) {
        result.status = LpStatus::Numerical;
        return result;
      }
      result.x.assign(xval.begin(), xval.begin() + n);
      double objv = 0.0;
      for (std::int32_t j = 0; j < n; ++j) objv += cost[static_cast<std::size_t>(j)] * xval[static_cast<std::size_t>(j)];
      result.objective = objv;
    }
    return result;
  }
};

RevisedSimplex::RevisedSimplex(const LpProblem& problem, SimplexOptions options)
    : impl_(std::make_unique<Impl>(problem, options)) {}

RevisedSimplex::~RevisedSimplex() = default;

void RevisedSimplex::set_var_bounds(std::int32_t j, double new_lb, double new_ub) {
  impl_->lb[static_cast<std::size_t>(j)] = new_lb;
  impl_->ub[static_cast<std::size_t>(j)] = new_ub;
  if (impl_->status[static_cast<std::size_t>(j)] != VStat::Basic) {
    double v = impl_->xval[static_cast<std::size_t>(j)];
    v = std::clamp(v, new_lb, new_ub);
    impl_->xval[static_cast<std::size_t>(j)] = v;
  }
}

void RevisedSimplex::reset_var_bounds(std::int32_t j) {
  set_var_bounds(j, impl_->orig_lb[static_cast<std::size_t>(j)], impl_->orig_ub[static_cast<std::size_t>(j)]);
}

void RevisedSimplex::set_time_limit_ms(double limit_ms) { impl_->opt.time_limit_ms = limit_ms; }

LpResult RevisedSimplex::solve(bool warm) { return impl_->run(warm); }

std::int64_t RevisedSimplex::total_iterations() const { return impl_->iterations_total; }

}  // namespace mumenet
