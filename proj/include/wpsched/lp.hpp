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

#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace wpsched::lp {

enum class Relation { LessEq, Equal, GreaterEq };
enum class Status { Optimal, Infeasible, Unbounded };

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Dense LP in the form: maximize c.x subject to rows (a.x REL rhs) and
/// per-variable bounds [lower, upper]. Empty bound vectors mean the defaults
/// lower = 0, upper = +inf for every variable.
struct LinearProgram {
  std::vector<double> objective;
  struct Row {
    std::vector<double> coeffs;
    Relation rel = Relation::LessEq;
    double rhs = 0.0;
  };
  std::vector<Row> rows;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t num_vars() const { return objective.size(); }
  void add_row(std::vector<double> coeffs, Relation rel, double rhs);

  // Throws std::invalid_argument on dimension mismatch, non-finite
  // coefficients, or lower > upper.
  void validate() const;
};

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> variables;
  double objective_value = 0.0;
};

struct SolverOptions {
  double feas_tol = 1e-7;
  double pivot_tol = 1e-9;
  std::size_t bland_after = 0;  // 0: auto (switch to Bland's rule late)
  std::size_t max_pivots = 0;   // 0: auto; exceeding throws
};

/// Two-phase dense tableau simplex. Deterministic: Dantzig pricing with
/// lowest-index tie-breaking, Bland's rule after a pivot-count threshold.
Solution solve(const LinearProgram& prog, const SolverOptions& opt = {});

/// Largest constraint/bound violation of a candidate point (test support).
double max_violation(const LinearProgram& prog, const std::vector<double>& x);

}  // namespace wpsched::lp
