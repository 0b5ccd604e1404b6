/*
   Copyright 2026 the wpsched authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "wpsched/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wpsched/kernels.hpp"

namespace wpsched::lp {

void LinearProgram::add_row(std::vector<double> coeffs, Relation rel,
                            double rhs) {
  Row r;
  r.coeffs = std::move(coeffs);
  r.rel = rel;
  r.rhs = rhs;
  rows.push_back(std::move(r));
}

void LinearProgram::validate() const {
  const std::size_t n = num_vars();
  if (n == 0) throw std::invalid_argument("lp: empty objective");
  for (double c : objective)
    if (!std::isfinite(c)) throw std::invalid_argument("lp: non-finite objective");
  for (const Row& r : rows) {
    if (r.coeffs.size() != n)
      throw std::invalid_argument("lp: row width does not match objective");
    for (double a : r.coeffs)
      if (!std::isfinite(a)) throw std::invalid_argument("lp: non-finite coefficient");
    if (!std::isfinite(r.rhs)) throw std::invalid_argument("lp: non-finite rhs");
  }
  if (!lower.empty() && lower.size() != n)
    throw std::invalid_argument("lp: lower bound width mismatch");
  if (!upper.empty() && upper.size() != n)
    throw std::invalid_argument("lp: upper bound width mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    const double l = lower.empty() ? 0.0 : lower[j];
    const double u = upper.empty() ? kInf : upper[j];
    if (l > u) throw std::invalid_argument("lp: lower > upper");
    if (l == kInf || u == -kInf)
      throw std::invalid_argument("lp: infinite bound with wrong sign");
  }
}

namespace {

constexpr std::size_t kNoBasis = static_cast<std::size_t>(-1);

// How each original variable maps onto the nonnegative internal columns.
struct VarXform {
  enum Kind { Shift, Mirror, Split } kind = Shift;
  std::size_t col = 0;   // primary internal column (0-based structural index)
  std::size_t col2 = 0;  // negative part when Split
  double offset = 0.0;   // lower bound (Shift) or upper bound (Mirror)
};

struct InternalRow {
  std::vector<double> a;  // structural coefficients
  Relation rel = Relation::LessEq;
  double rhs = 0.0;
};

struct Tableau {
  std::size_t n_rows = 0;   // constraint rows
  std::size_t width = 0;    // 1 (rhs) + structural + slack columns
  std::vector<double> data; // n_rows + 2 rows: constraints, z-row, w-row

  double* row(std::size_t r) { return data.data() + r * width; }
  const double* row(std::size_t r) const { return data.data() + r * width; }
  double* zrow() { return row(n_rows); }
  double* wrow() { return row(n_rows + 1); }
};

class Simplex {
 public:
  Simplex(const LinearProgram& prog, const SolverOptions& opt)
      : prog_(prog), opt_(opt) {
    transform_variables();
    build_rows();
    build_tableau();
  }

  Solution run() {
    price_out();
    if (has_artificials_) {
      if (!phase1()) return {Status::Infeasible, {}, 0.0};
    }
    if (!phase2()) return {Status::Unbounded, {}, kInf};
    return extract();
  }

 private:
  const LinearProgram& prog_;
  SolverOptions opt_;
  std::vector<VarXform> xforms_;
  std::size_t n_struct_ = 0;
  std::vector<InternalRow> rows_;
  Tableau t_;
  std::vector<std::size_t> basis_;  // per row: column index or kNoBasis for
                                    // an artificial basic variable
  bool has_artificials_ = false;
  std::size_t pivots_ = 0;
  std::size_t bland_after_ = 0;
  std::size_t max_pivots_ = 0;
  std::vector<double> colbuf_;

  void transform_variables() {
    const std::size_t n = prog_.num_vars();
    xforms_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double l = prog_.lower.empty() ? 0.0 : prog_.lower[j];
      const double u = prog_.upper.empty() ? kInf : prog_.upper[j];
      VarXform& xf = xforms_[j];
      if (l == -kInf && u == kInf) {
        xf.kind = VarXform::Split;
        xf.col = n_struct_++;
        xf.col2 = n_struct_++;
      } else if (l == -kInf) {
        xf.kind = VarXform::Mirror;
        xf.col = n_struct_++;
        xf.offset = u;
      } else {
        xf.kind = VarXform::Shift;
        xf.col = n_struct_++;
        xf.offset = l;
      }
    }
  }

  // Expand original rows onto internal columns, then append upper-bound rows
  // for Shift variables with a finite upper bound.
  void build_rows() {
    const std::size_t n = prog_.num_vars();
    rows_.reserve(prog_.rows.size() + n);
    for (const LinearProgram::Row& src : prog_.rows) {
      InternalRow r;
      r.a.assign(n_struct_, 0.0);
      r.rel = src.rel;
      r.rhs = src.rhs;
      for (std::size_t j = 0; j < n; ++j) {
        const double a = src.coeffs[j];
        if (a == 0.0) continue;
        const VarXform& xf = xforms_[j];
        switch (xf.kind) {
          case VarXform::Shift:
            r.a[xf.col] += a;
            r.rhs -= a * xf.offset;
            break;
          case VarXform::Mirror:
            r.a[xf.col] -= a;
            r.rhs -= a * xf.offset;
            break;
          case VarXform::Split:
            r.a[xf.col] += a;
            r.a[xf.col2] -= a;
            break;
        }
      }
      rows_.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const VarXform& xf = xforms_[j];
      if (xf.kind != VarXform::Shift) continue;
      const double u = prog_.upper.empty() ? kInf : prog_.upper[j];
      if (u == kInf) continue;
      InternalRow r;
      r.a.assign(n_struct_, 0.0);
      r.a[xf.col] = 1.0;
      r.rel = Relation::LessEq;
      r.rhs = u - xf.offset;
      rows_.push_back(std::move(r));
    }
    // Normalize every row to rhs >= 0.
    for (InternalRow& r : rows_) {
      if (r.rhs < 0.0) negate(r);
    }
  }

  static void negate(InternalRow& r) {
    for (double& a : r.a) a = -a;
    r.rhs = -r.rhs;
    if (r.rel == Relation::LessEq)
      r.rel = Relation::GreaterEq;
    else if (r.rel == Relation::GreaterEq)
      r.rel = Relation::LessEq;
  }

  // Column nonzero counts across rows, used by the crash-basis search.
  std::vector<int> column_counts() const {
    std::vector<int> cnt(n_struct_, 0);
    for (const InternalRow& r : rows_)
      for (std::size_t j = 0; j < n_struct_; ++j)
        if (r.a[j] != 0.0) ++cnt[j];
    return cnt;
  }

  void build_tableau() {
    const std::size_t m = rows_.size();
    std::size_t n_slack = 0;
    for (const InternalRow& r : rows_)
      if (r.rel != Relation::Equal) ++n_slack;

    t_.n_rows = m;
    t_.width = 1 + n_struct_ + n_slack;
    t_.data.assign((m + 2) * t_.width, 0.0);
    basis_.assign(m, kNoBasis);
    colbuf_.resize(m + 2);

    const std::vector<int> cnt = column_counts();
    std::vector<char> col_used(n_struct_, 0);

    std::size_t slack_at = 1 + n_struct_;
    for (std::size_t r = 0; r < m; ++r) {
      InternalRow& src = rows_[r];
      // Singleton crash: a column appearing only in this row can start basic,
      // which spares an artificial (rhs-0 equality rows may be flipped to
      // make the coefficient positive).
      if (src.rel != Relation::LessEq) {
        for (std::size_t j = 0; j < n_struct_; ++j) {
          if (cnt[j] != 1 || col_used[j] || src.a[j] == 0.0) continue;
          if (src.a[j] < 0.0) {
            if (src.rhs != 0.0) continue;
            negate(src);
            if (src.a[j] <= 0.0) continue;  // negate may have flipped back
          }
          if (src.a[j] <= opt_.pivot_tol) continue;
          basis_[r] = 1 + j;
          col_used[j] = 1;
          break;
        }
      }
      double* dst = t_.row(r);
      dst[0] = src.rhs;
      std::copy(src.a.begin(), src.a.end(), dst + 1);
      switch (src.rel) {
        case Relation::LessEq:
          dst[slack_at] = 1.0;
          if (basis_[r] == kNoBasis) basis_[r] = slack_at;
          ++slack_at;
          break;
        case Relation::GreaterEq:
          dst[slack_at] = -1.0;
          ++slack_at;
          break;
        case Relation::Equal:
          break;
      }
      if (basis_[r] == kNoBasis) has_artificials_ = true;
    }

    // z-row holds z_j - c_j; value sits in column 0.
    double* z = t_.zrow();
    for (std::size_t j = 0; j < prog_.num_vars(); ++j) {
      const double c = prog_.objective[j];
      if (c == 0.0) continue;
      const VarXform& xf = xforms_[j];
      switch (xf.kind) {
        case VarXform::Shift:
          z[1 + xf.col] -= c;
          break;
        case VarXform::Mirror:
          z[1 + xf.col] += c;
          break;
        case VarXform::Split:
          z[1 + xf.col] -= c;
          z[1 + xf.col2] += c;
          break;
      }
    }

    bland_after_ = opt_.bland_after ? opt_.bland_after
                                    : 10 * (m + t_.width) + 1000;
    max_pivots_ = opt_.max_pivots ? opt_.max_pivots
                                  : 50 * (m + t_.width) + 50000;
  }

  // Divide basic-crash rows to unit pivots and clear basic columns out of the
  // objective rows.
  void price_out() {
    for (std::size_t r = 0; r < t_.n_rows; ++r) {
      if (basis_[r] == kNoBasis) continue;
      double* row = t_.row(r);
      const double piv = row[basis_[r]];
      if (piv != 1.0) {
        for (std::size_t j = 0; j < t_.width; ++j) row[j] /= piv;
        row[basis_[r]] = 1.0;
      }
    }
    if (has_artificials_) {
      // Phase-1 objective: maximize -(sum of artificials), expressed directly
      // as w_j = -(sum of artificial-basic rows).
      double* w = t_.wrow();
      std::fill(w, w + t_.width, 0.0);
      for (std::size_t r = 0; r < t_.n_rows; ++r) {
        if (basis_[r] != kNoBasis) continue;
        kernels::axpy_minus(w, t_.row(r), 1.0, t_.width);
      }
    }
    double* z = t_.zrow();
    for (std::size_t r = 0; r < t_.n_rows; ++r) {
      if (basis_[r] == kNoBasis) continue;
      const double f = z[basis_[r]];
      if (f != 0.0) {
        kernels::axpy_minus(z, t_.row(r), f, t_.width);
        z[basis_[r]] = 0.0;
      }
    }
  }

  // Leaving-variable ordering key; artificials sort after every real column.
  std::size_t leave_key(std::size_t r) const {
    return basis_[r] == kNoBasis ? t_.width + r : basis_[r];
  }

  std::size_t pick_entering(const double* obj) const {
    const bool bland = pivots_ > bland_after_;
    std::size_t best = 0;
    double best_val = -opt_.pivot_tol;
    for (std::size_t j = 1; j < t_.width; ++j) {
      if (obj[j] < best_val) {
        if (bland) return j;
        best_val = obj[j];
        best = j;
      }
    }
    return best;  // 0 means optimal
  }

  std::size_t pick_leaving(std::size_t pc) {
    std::size_t pr = kNoBasis;
    double best_ratio = kInf;
    for (std::size_t r = 0; r < t_.n_rows; ++r) {
      const double a = t_.row(r)[pc];
      if (a <= opt_.pivot_tol) continue;
      const double ratio = t_.row(r)[0] / a;
      if (ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 &&
           (pr == kNoBasis || leave_key(r) < leave_key(pr)))) {
        best_ratio = ratio;
        pr = r;
      }
    }
    return pr;
  }

  void pivot(std::size_t pr, std::size_t pc, std::size_t n_update_rows) {
    if (++pivots_ > max_pivots_)
      throw std::runtime_error("lp: pivot limit exceeded (" +
                               std::to_string(max_pivots_) + ")");
    double* prow = t_.row(pr);
    const double piv = prow[pc];
    for (std::size_t j = 0; j < t_.width; ++j) prow[j] /= piv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r < n_update_rows; ++r) colbuf_[r] = t_.row(r)[pc];
    for (std::size_t r = 0; r < n_update_rows; ++r) {
      if (r == pr) continue;
      const double f = colbuf_[r];
      if (f == 0.0) continue;
      kernels::axpy_minus(t_.row(r), prow, f, t_.width);
      t_.row(r)[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  bool iterate(double* obj, std::size_t n_update_rows, bool* unbounded) {
    for (;;) {
      const std::size_t pc = pick_entering(obj);
      if (pc == 0) return true;
      const std::size_t pr = pick_leaving(pc);
      if (pr == kNoBasis) {
        if (!unbounded)
          throw std::runtime_error("lp: phase-1 objective unbounded");
        *unbounded = true;
        return false;
      }
      pivot(pr, pc, n_update_rows);
    }
  }

  bool phase1() {
    iterate(t_.wrow(), t_.n_rows + 2, nullptr);
    if (t_.wrow()[0] < -opt_.feas_tol) return false;
    // Drive leftover zero-valued artificials out of the basis where a real
    // pivot exists; rows without one are redundant and stay put.
    for (std::size_t r = 0; r < t_.n_rows; ++r) {
      if (basis_[r] != kNoBasis) continue;
      const double* row = t_.row(r);
      for (std::size_t j = 1; j < t_.width; ++j) {
        if (std::abs(row[j]) > opt_.pivot_tol) {
          pivot(r, j, t_.n_rows + 2);
          break;
        }
      }
    }
    return true;
  }

  bool phase2() {
    bool unbounded = false;
    iterate(t_.zrow(), t_.n_rows + 1, &unbounded);
    return !unbounded;
  }

  Solution extract() {
    std::vector<double> xcore(t_.width, 0.0);
    for (std::size_t r = 0; r < t_.n_rows; ++r)
      if (basis_[r] != kNoBasis) xcore[basis_[r]] = t_.row(r)[0];

    Solution sol;
    sol.status = Status::Optimal;
    sol.variables.resize(prog_.num_vars());
    for (std::size_t j = 0; j < prog_.num_vars(); ++j) {
      const VarXform& xf = xforms_[j];
      switch (xf.kind) {
        case VarXform::Shift:
          sol.variables[j] = xf.offset + xcore[1 + xf.col];
          break;
        case VarXform::Mirror:
          sol.variables[j] = xf.offset - xcore[1 + xf.col];
          break;
        case VarXform::Split:
          sol.variables[j] = xcore[1 + xf.col] - xcore[1 + xf.col2];
          break;
      }
    }
    double value = 0.0;
    for (std::size_t j = 0; j < prog_.num_vars(); ++j)
      value += prog_.objective[j] * sol.variables[j];
    sol.objective_value = value;
    return sol;
  }
};

}  // namespace

Solution solve(const LinearProgram& prog, const SolverOptions& opt) {
  prog.validate();
  Simplex s(prog, opt);
  return s.run();
}

double max_violation(const LinearProgram& prog, const std::vector<double>& x) {
  double worst = 0.0;
  for (const LinearProgram::Row& r : prog.rows) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += r.coeffs[j] * x[j];
    double v = 0.0;
    switch (r.rel) {
      case Relation::LessEq: v = lhs - r.rhs; break;
      case Relation::GreaterEq: v = r.rhs - lhs; break;
      case Relation::Equal: v = std::abs(lhs - r.rhs); break;
    }
    worst = std::max(worst, v);
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double l = prog.lower.empty() ? 0.0 : prog.lower[j];
    const double u = prog.upper.empty() ? kInf : prog.upper[j];
    if (l != -kInf) worst = std::max(worst, l - x[j]);
    if (u != kInf) worst = std::max(worst, x[j] - u);
  }
  return worst;
}

}  // namespace wpsched::lp
