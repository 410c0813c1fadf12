#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mumenet/lp.hpp"

namespace mumenet {

namespace {

using Rat = boost::multiprecision::cpp_rational;

/// Exact bounded-variable simplex with a dense basis inverse and Bland's
/// rule throughout. Termination is guaranteed; intended for small systems.
class ExactSimplex {
 public:
  explicit ExactSimplex(const LpProblem& p) {
    n = static_cast<int>(p.num_vars());
    m = static_cast<int>(p.rows.size());
    const int total = n + m;
    cols.resize(total);
    for (int i = 0; i < m; ++i)
      for (const LinTerm& t : p.rows[static_cast<std::size_t>(i)].terms)
        if (t.coef != 0.0) cols[t.var].emplace_back(i, Rat(t.coef));
    for (int i = 0; i < m; ++i) cols[n + i].emplace_back(i, Rat(-1));

    cost.assign(total, Rat(0));
    for (int j = 0; j < n; ++j) cost[j] = Rat(p.obj[static_cast<std::size_t>(j)]);
    lb.assign(total, Rat(0));
    ub.assign(total, Rat(0));
    has_lb.assign(total, true);
    has_ub.assign(total, true);
    for (int j = 0; j < n; ++j) {
      lb[j] = Rat(p.lb[static_cast<std::size_t>(j)]);
      ub[j] = Rat(p.ub[static_cast<std::size_t>(j)]);
    }
    for (int i = 0; i < m; ++i) {
      const auto& row = p.rows[static_cast<std::size_t>(i)];
      has_lb[n + i] = std::isfinite(row.lo);
      has_ub[n + i] = std::isfinite(row.hi);
      if (has_lb[n + i]) lb[n + i] = Rat(row.lo);
      if (has_ub[n + i]) ub[n + i] = Rat(row.hi);
    }

    status.assign(total, 0);  // 0 at-lower, 1 at-upper, 2 basic
    xval.assign(total, Rat(0));
    for (int j = 0; j < total; ++j) {
      if (has_lb[j]) { xval[j] = lb[j]; status[j] = 0; }
      else if (has_ub[j]) { xval[j] = ub[j]; status[j] = 1; }
      else { xval[j] = 0; status[j] = 0; }
    }
    basic.resize(m);
    binv.assign(m, std::vector<Rat>(m, Rat(0)));
    for (int i = 0; i < m; ++i) {
      basic[i] = n + i;
      status[n + i] = 2;
      binv[i][i] = Rat(-1);  // logical columns are -e_i
    }
    recompute_basics();
  }

  LpResult solve(std::int64_t max_iterations) {
    LpResult result;
    std::int64_t iter = 0;
    while (true) {
      if (iter++ > max_iterations) { result.status = LpStatus::IterLimit; return result; }
      const bool phase1 = total_infeasibility() > 0;

      std::vector<Rat> cb(m, Rat(0));
      for (int i = 0; i < m; ++i) {
        if (phase1) {
          const int bj = basic[i];
          if (has_lb[bj] && xval[bj] < lb[bj]) cb[i] = Rat(-1);
          else if (has_ub[bj] && xval[bj] > ub[bj]) cb[i] = Rat(1);
        } else {
          cb[i] = cost[basic[i]];
        }
      }
      std::vector<Rat> y(m, Rat(0));
      for (int i = 0; i < m; ++i)
        if (cb[i] != 0)
          for (int c = 0; c < m; ++c) y[c] += cb[i] * binv[i][c];

      int enter = -1, dir = 0;
      for (int j = 0; j < n + m && enter < 0; ++j) {
        if (status[j] == 2) continue;
        if (has_lb[j] && has_ub[j] && lb[j] == ub[j]) continue;
        Rat d = phase1 ? Rat(0) : cost[j];
        for (const auto& [row, a] : cols[j]) d -= y[row] * a;
        if (status[j] == 0 && d < 0) { enter = j; dir = +1; }
        else if (status[j] == 1 && d > 0) { enter = j; dir = -1; }
        else if (!has_lb[j] && !has_ub[j] && d != 0) { enter = j; dir = d < 0 ? +1 : -1; }
      }
      if (enter < 0) {
        if (phase1) { result.status = LpStatus::Infeasible; return result; }
        break;
      }

      std::vector<Rat> w(m, Rat(0));
      for (const auto& [row, a] : cols[enter])
        for (int i = 0; i < m; ++i)
          if (binv[i][row] != 0) w[i] += binv[i][row] * a;

      bool limited = has_lb[enter] && has_ub[enter];
      Rat best_ratio = limited ? ub[enter] - lb[enter] : Rat(0);
      bool have_ratio = limited;
      int leave_row = -1;
      Rat leave_to = 0;
      for (int i = 0; i < m; ++i) {
        if (w[i] == 0) continue;
        const Rat delta = -dir * w[i];
        const int bj = basic[i];
        const Rat& v = xval[bj];
        Rat ratio;
        Rat target;
        bool blocks = false;
        if (has_lb[bj] && v < lb[bj]) {
          if (delta > 0) { ratio = (lb[bj] - v) / delta; target = lb[bj]; blocks = true; }
        } else if (has_ub[bj] && v > ub[bj]) {
          if (delta < 0) { ratio = (ub[bj] - v) / delta; target = ub[bj]; blocks = true; }
        } else if (delta < 0) {
          if (has_lb[bj]) { ratio = (lb[bj] - v) / delta; target = lb[bj]; blocks = true; }
        } else {
          if (has_ub[bj]) { ratio = (ub[bj] - v) / delta; target = ub[bj]; blocks = true; }
        }
        if (!blocks) continue;
        if (ratio < 0) ratio = 0;
        if (!have_ratio || ratio < best_ratio ||
            (ratio == best_ratio && leave_row >= 0 && bj < basic[leave_row])) {
          have_ratio = true;
          best_ratio = ratio;
          leave_row = i;
          leave_to = target;
        }
      }
      if (!have_ratio) { result.status = LpStatus::Numerical; return result; }  // unbounded

      if (best_ratio != 0) {
        for (int i = 0; i < m; ++i)
          if (w[i] != 0) xval[basic[i]] -= dir * best_ratio * w[i];
        xval[enter] += dir * best_ratio;
      }

      if (leave_row < 0) {
        status[enter] = dir > 0 ? 1 : 0;
        xval[enter] = dir > 0 ? ub[enter] : lb[enter];
      } else {
        const int leave_var = basic[leave_row];
        xval[leave_var] = leave_to;
        status[leave_var] = (has_lb[leave_var] && leave_to == lb[leave_var]) ? 0 : 1;
        basic[leave_row] = enter;
        status[enter] = 2;
        // Dense inverse update.
        const Rat piv = w[leave_row];
        for (int c = 0; c < m; ++c) binv[leave_row][c] /= piv;
        for (int i = 0; i < m; ++i) {
          if (i == leave_row || w[i] == 0) continue;
          const Rat f = w[i];
          for (int c = 0; c < m; ++c) binv[i][c] -= f * binv[leave_row][c];
        }
      }
    }

    result.status = LpStatus::Optimal;
    result.iterations = iter;
    result.x.resize(static_cast<std::size_t>(n));
    Rat obj = 0;
    for (int j = 0; j < n; ++j) {
      result.x[static_cast<std::size_t>(j)] = static_cast<double>(xval[j]);
      obj += cost[j] * xval[j];
    }
    result.objective = static_cast<double>(obj);
    return result;
  }

 private:
  Rat total_infeasibility() const {
    Rat total = 0;
    for (int i = 0; i < m; ++i) {
      const int bj = basic[i];
      if (has_lb[bj] && xval[bj] < lb[bj]) total += lb[bj] - xval[bj];
      else if (has_ub[bj] && xval[bj] > ub[bj]) total += xval[bj] - ub[bj];
    }
    return total;
  }

  void recompute_basics() {
    std::vector<Rat> rhs(m, Rat(0));
    for (int j = 0; j < n + m; ++j) {
      if (status[j] == 2 || xval[j] == 0) continue;
      for (const auto& [row, a] : cols[j]) rhs[row] -= a * xval[j];
    }
    for (int i = 0; i < m; ++i) {
      Rat acc = 0;
      for (int c = 0; c < m; ++c)
        if (binv[i][c] != 0 && rhs[c] != 0) acc += binv[i][c] * rhs[c];
      xval[basic[i]] = acc;
    }
  }

  int n = 0, m = 0;
  std::vector<std::vector<std::pair<int, Rat>>> cols;
  std::vector<Rat> cost, lb, ub, xval;
  std::vector<bool> has_lb, has_ub;
  std::vector<int> status, basic;
  std::vector<std::vector<Rat>> binv;
};

}  // namespace

LpResult solve_lp_exact(const LpProblem& problem, std::int64_t max_iterations) {
  ExactSimplex solver(problem);
  return solver.solve(max_iterations);
}

}  // namespace mumenet
