// Copyright 2026 The fairdiv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRDIV_EXACT_SOLVER_HPP_
#define FAIRDIV_EXACT_SOLVER_HPP_

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "fairdiv/cake.hpp"

namespace fairdiv {
namespace detail {

// One inequality sum(coeff[i] * v_i) + constant >= 0.
struct LinearIneq {
  std::vector<Rational> coeff;
  Rational constant;
};

// An affine function of the cut variables.
struct AffineExpr {
  std::vector<Rational> coeff;
  Rational constant;

  AffineExpr(int dims, Rational c) : coeff(dims, Rational(0)), constant(std::move(c)) {}
};

inline AffineExpr operator-(const AffineExpr& lhs, const AffineExpr& rhs) {
  AffineExpr out = lhs;
  for (size_t i = 0; i < out.coeff.size(); ++i) out.coeff[i] -= rhs.coeff[i];
  out.constant -= rhs.constant;
  return out;
}

// Feasibility and lexicographically-least point of {sum a_i v_i + b >= 0} by
// variable elimination: project out v_{d-1}, ..., v_1, then walk forward
// assigning each variable its smallest feasible value. Assumes every variable
// is bounded below and above (the callers always add box constraints).
class LexMinSolver {
 public:
  // Returns true and fills `point` when the system is feasible.
  static bool solve(int dims, std::vector<LinearIneq> system, std::vector<Rational>* point) {
    std::vector<std::vector<LinearIneq>> levels(dims + 1);
    levels[dims] = std::move(system);
    for (int t = dims; t >= 1; --t) {
      if (hasConstantViolation(levels[t])) return false;
      if (t == 1) break;
      levels[t - 1] = eliminate(levels[t], t - 1);
    }

    point->assign(dims, Rational(0));
    for (int t = 0; t < dims; ++t) {
      bool haveLower = false, haveUpper = false;
      Rational lower = 0, upper = 0;
      for (const LinearIneq& row : levels[t + 1]) {
        Rational value = row.constant;
        for (int i = 0; i < t; ++i) value += row.coeff[i] * (*point)[i];
        const Rational& a = row.coeff[t];
        if (a > 0) {
          Rational bound = -value / a;
          if (!haveLower || bound > lower) lower = std::move(bound);
          haveLower = true;
        } else if (a < 0) {
          Rational bound = -value / a;
          if (!haveUpper || bound < upper) upper = std::move(bound);
          haveUpper = true;
        } else {
          internalCheck(value >= 0, "eliminated constraint violated on substitution");
        }
      }
      internalCheck(haveLower && haveUpper, "cut variable is unbounded");
      if (lower > upper) {
        // Possible only for the first variable: the eliminations project the
        // system onto v_0 exactly, and later variables extend a point chosen
        // inside the projection.
        internalCheck(t == 0, "projection left an empty interval");
        return false;
      }
      (*point)[t] = lower;
    }
    return true;
  }

 private:
  static bool hasConstantViolation(const std::vector<LinearIneq>& system) {
    for (const LinearIneq& row : system) {
      bool allZero = true;
      for (const Rational& a : row.coeff)
        if (a != 0) {
          allZero = false;
          break;
        }
      if (allZero && row.constant < 0) return true;
    }
    return false;
  }

  // Project out variable `idx` by pairing every lower bound with every upper
  // bound; rows not mentioning the variable carry over.
  static std::vector<LinearIneq> eliminate(const std::vector<LinearIneq>& system, int idx) {
    std::vector<const LinearIneq*> lowers, uppers;
    std::vector<LinearIneq> out;
    for (const LinearIneq& row : system) {
      if (row.coeff[idx] > 0)
        lowers.push_back(&row);
      else if (row.coeff[idx] < 0)
        uppers.push_back(&row);
      else
        out.push_back(row);
    }
    for (const LinearIneq* lo : lowers) {
      for (const LinearIneq* up : uppers) {
        // lo: a v + e >= 0 with a > 0, up: a' v + e' >= 0 with a' < 0.
        // a * up + (-a') * lo removes v and stays implied.
        LinearIneq row;
        row.coeff.resize(lo->coeff.size());
        const Rational& a = lo->coeff[idx];
        const Rational& ap = up->coeff[idx];
        for (size_t i = 0; i < row.coeff.size(); ++i)
          row.coeff[i] = a * up->coeff[i] - ap * lo->coeff[i];
        row.constant = a * up->constant - ap * lo->constant;
        row.coeff[idx] = 0;
        out.push_back(std::move(row));
      }
    }
    return out;
  }
};

}  // namespace detail

// Exact envy-free division of a piecewise-constant cake.
//
// Every cut lives in some integer interval [m, m+1]; once each cut is pinned
// to an interval ("cell") and pieces are assigned to players, all values are
// affine in the cut coordinates and envy-freeness is a linear feasibility
// problem, solved exactly over the rationals. Cells and piece assignments are
// scanned in lexicographic order and the first feasible system's
// lexicographically-least vertex is returned, so output is deterministic.
inline ContinuousAllocation solveExact(const PiecewiseCake& cake) {
  const int n = cake.playerCount();
  const int k = cake.length();
  const int dims = n - 1;

  ContinuousAllocation result;
  result.certifiedEnvy = 0;
  if (n == 1) {
    result.assignment = {0};
    return result;
  }
  if (k == 0) {
    result.cutset.cuts.assign(dims, Rational(0));
    result.assignment.resize(n);
    std::iota(result.assignment.begin(), result.assignment.end(), 0);
    return result;
  }

  // Nondecreasing interval indices, one per cut.
  std::vector<int> cell(dims, 0);
  while (true) {
    // Player p's value of piece j as an affine function of the cuts.
    std::vector<std::vector<detail::AffineExpr>> piece(
        n, std::vector<detail::AffineExpr>(n, detail::AffineExpr(dims, Rational(0))));
    for (PlayerId p = 0; p < n; ++p) {
      // prefix expressions F_p(v_j) for each cut variable.
      std::vector<detail::AffineExpr> at;
      at.reserve(dims);
      for (int j = 0; j < dims; ++j) {
        detail::AffineExpr e(dims, Rational(0));
        int m = cell[j];
        const Rational& dens = cake.density(p, m);
        e.coeff[j] = dens;
        e.constant = cake.prefixAt(p, m) - dens * m;
        at.push_back(std::move(e));
      }
      detail::AffineExpr zero(dims, Rational(0));
      detail::AffineExpr total(dims, cake.totalValue(p));
      for (int j = 0; j < n; ++j) {
        const detail::AffineExpr& left = j == 0 ? zero : at[j - 1];
        const detail::AffineExpr& right = j == n - 1 ? total : at[j];
        piece[p][j] = right - left;
      }
    }

    // Cell-local constraints shared by every assignment: box and ordering.
    std::vector<detail::LinearIneq> shared;
    for (int j = 0; j < dims; ++j) {
      detail::LinearIneq lo;
      lo.coeff.assign(dims, Rational(0));
      lo.coeff[j] = 1;
      lo.constant = Rational(-cell[j]);
      shared.push_back(std::move(lo));
      detail::LinearIneq hi;
      hi.coeff.assign(dims, Rational(0));
      hi.coeff[j] = -1;
      hi.constant = Rational(cell[j] + 1);
      shared.push_back(std::move(hi));
      if (j + 1 < dims) {
        detail::LinearIneq order;
        order.coeff.assign(dims, Rational(0));
        order.coeff[j] = -1;
        order.coeff[j + 1] = 1;
        order.constant = 0;
        shared.push_back(std::move(order));
      }
    }

    std::vector<PlayerId> assignment(n);
    std::iota(assignment.begin(), assignment.end(), 0);
    do {
      std::vector<detail::LinearIneq> system = shared;
      for (int j = 0; j < n; ++j) {
        PlayerId q = assignment[j];
        for (int other = 0; other < n; ++other) {
          if (other == j) continue;
          detail::AffineExpr gap = piece[q][j] - piece[q][other];
          system.push_back(detail::LinearIneq{std::move(gap.coeff), std::move(gap.constant)});
        }
      }
      std::vector<Rational> point;
      if (detail::LexMinSolver::solve(dims, std::move(system), &point)) {
        result.cutset.cuts = std::move(point);
        result.assignment = assignment;
        EnvyReport check = envyReport(cake, result);
        internalCheck(check.maxEnvy == 0, "exact division fails its own envy check");
        return result;
      }
    } while (std::next_permutation(assignment.begin(), assignment.end()));

    // Advance to the next nondecreasing cell.
    int pos = dims - 1;
    while (pos >= 0 && cell[pos] == k - 1) --pos;
    if (pos < 0) break;
    ++cell[pos];
    for (int j = pos + 1; j < dims; ++j) cell[j] = cell[pos];
  }

  // An envy-free division of a piecewise-constant cake always exists.
  throw InternalError("no envy-free cell found");
}

}  // namespace fairdiv

#endif  // FAIRDIV_EXACT_SOLVER_HPP_
