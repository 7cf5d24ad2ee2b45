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

#ifndef FAIRDIV_ROUNDING_HPP_
#define FAIRDIV_ROUNDING_HPP_

#include <utility>
#include <vector>

#include "fairdiv/exact_solver.hpp"
#include "fairdiv/sperner.hpp"

namespace fairdiv {

// Continuous-phase solver selection for the rounding pipelines.
struct SolverBackend {
  enum class Kind { Exact, Sperner };
  Kind kind = Kind::Exact;
  Rational eps;  // Sperner tolerance; ignored by the exact backend

  static SolverBackend exact() { return SolverBackend{Kind::Exact, Rational(0)}; }
  static SolverBackend sperner(Rational eps) {
    return SolverBackend{Kind::Sperner, std::move(eps)};
  }
};

// What the rounding step did: the continuous division it started from, the
// integral cuts it produced, and the envy on both sides of the step.
struct RoundingTrace {
  ContinuousCutSet continuousCuts;
  DiscreteCutSet roundedCuts;
  std::vector<Rational> perCutShift;  // rounded - continuous, each in (-1/2, 1/2]
  Rational envyBefore;
  Rational envyAfter;
};

// Each cut goes to the nearest integer; exact halves go right. Rounding this
// way moves every cut by at most 1/2 and never by exactly -1/2, which is
// what makes the envy increase strictly less than twice the largest bead.
inline DiscreteCutSet roundCuts(const ContinuousCutSet& cutset) {
  DiscreteCutSet out;
  out.cuts.reserve(cutset.cuts.size());
  Rational prev = 0;
  for (const Rational& c : cutset.cuts) {
    if (c < prev) throw std::invalid_argument("cuts must be nondecreasing and nonnegative");
    prev = c;
    out.cuts.push_back(toInt(roundHalfUp(c)));
  }
  return out;
}

namespace detail {

// Runs the selected continuous solver. The Sperner scheme assumes every
// player wants something, so players with zero total value are split off
// first: they receive empty pieces at the left end and the hungry players
// divide the whole cake among themselves.
inline ContinuousAllocation solveContinuous(const PiecewiseCake& cake,
                                            const Necklace& necklace,
                                            const SolverBackend& backend) {
  if (backend.kind == SolverBackend::Kind::Exact) return solveExact(cake);

  const int n = necklace.playerCount();
  std::vector<PlayerId> hungry, starving;
  for (PlayerId p = 0; p < n; ++p) {
    (necklace.totalValue(p) > 0 ? hungry : starving).push_back(p);
  }
  if (starving.empty()) return solveSperner(cake, backend.eps);

  ContinuousAllocation result;
  if (hungry.empty()) {
    result.cutset.cuts.assign(n - 1, Rational(0));
    result.assignment.resize(n);
    std::iota(result.assignment.begin(), result.assignment.end(), 0);
    result.certifiedEnvy = 0;
    return result;
  }

  std::vector<std::vector<Rational>> subValues;
  subValues.reserve(necklace.length());
  for (int b = 0; b < necklace.length(); ++b) {
    std::vector<Rational> row;
    row.reserve(hungry.size());
    for (PlayerId p : hungry) row.push_back(necklace.value(b, p));
    subValues.push_back(std::move(row));
  }
  Necklace subNecklace(static_cast<int>(hungry.size()), std::move(subValues));
  ContinuousAllocation sub = solveSperner(buildCake(subNecklace), backend.eps);

  // Starving players take width-zero pieces at the left edge; the hungry
  // sub-division fills the rest. Envy is unchanged: empty pieces are worth
  // zero to everyone and the sub-pieces keep their geometry.
  const int starvingCount = static_cast<int>(starving.size());
  result.cutset.cuts.assign(starvingCount, Rational(0));
  result.cutset.cuts.insert(result.cutset.cuts.end(), sub.cutset.cuts.begin(),
                            sub.cutset.cuts.end());
  result.assignment.resize(n);
  for (int j = 0; j < starvingCount; ++j) result.assignment[j] = starving[j];
  for (size_t j = 0; j < hungry.size(); ++j)
    result.assignment[starvingCount + j] = hungry[sub.assignment[j]];
  result.certifiedEnvy = sub.certifiedEnvy;
  return result;
}

}  // namespace detail

// Envy-bounded integral division of an arbitrary necklace: solve the
// continuous relaxation envy-free, then round every cut to the lattice. Each
// piece loses less than one bead of value and each rival piece gains less
// than one bead of value, so the final envy stays below twice the largest
// bead value (plus the solver tolerance when the approximate backend runs).
inline std::pair<Allocation, RoundingTrace> divideGeneral(
    const Necklace& necklace, const SolverBackend& backend = SolverBackend::exact()) {
  PiecewiseCake cake = buildCake(necklace);
  ContinuousAllocation continuous = detail::solveContinuous(cake, necklace, backend);

  Allocation allocation{roundCuts(continuous.cutset), continuous.assignment};

  RoundingTrace trace;
  trace.continuousCuts = continuous.cutset;
  trace.roundedCuts = allocation.cutset;
  trace.perCutShift.reserve(allocation.cutset.cuts.size());
  for (size_t i = 0; i < allocation.cutset.cuts.size(); ++i) {
    Rational shift = Rational(allocation.cutset.cuts[i]) - continuous.cutset.cuts[i];
    internalCheck(shift > Rational(-1, 2) && shift <= Rational(1, 2),
                  "cut shifted by more than a half unit");
    trace.perCutShift.push_back(std::move(shift));
  }
  trace.envyBefore = envyReport(cake, continuous).maxEnvy;
  trace.envyAfter = envyReport(necklace, allocation).maxEnvy;

  const Rational& s = necklace.maxBeadValue();
  Rational bound = 2 * s;
  if (backend.kind == SolverBackend::Kind::Sperner) bound += backend.eps;
  internalCheck(s > 0 ? trace.envyAfter < bound : trace.envyAfter == 0,
                "rounded division exceeds its envy bound");
  return {std::move(allocation), std::move(trace)};
}

// Binary preferences: every bead is worth 0 or 1 to each player. The exact
// continuous phase makes the rounded envy strictly below 2, and an all-
// integer value matrix can only realize that as envy at most 1.
inline Allocation divideBinary(const Necklace& necklace) {
  if (!necklace.isBinary())
    throw std::invalid_argument("divideBinary requires every bead value to be 0 or 1");
  auto [allocation, trace] = divideGeneral(necklace, SolverBackend::exact());
  internalCheck(isIntegral(trace.envyAfter) && trace.envyAfter <= 1,
                "binary division exceeds envy 1");
  return allocation;
}

}  // namespace fairdiv

#endif  // FAIRDIV_ROUNDING_HPP_
