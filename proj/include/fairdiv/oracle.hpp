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

#ifndef FAIRDIV_ORACLE_HPP_
#define FAIRDIV_ORACLE_HPP_

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/grid.hpp"

namespace fairdiv {

// Thrown when an exhaustive search would evaluate more candidates than the
// caller allows; carries the budget that would be needed.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(BigInt required, BigInt allowed)
      : std::runtime_error("search space of " + required.str() + " candidates exceeds budget " +
                           allowed.str()),
        required_(std::move(required)) {}

  const BigInt& requiredBudget() const { return required_; }

 private:
  BigInt required_;
};

inline BigInt defaultOracleBudget() { return BigInt(10000000); }

struct OracleResult {
  Allocation bestAllocation;     // cutset populated by the 1D oracle only
  LatticeCutSet bestLatticeCuts; // populated by the 2D oracle only
  Rational minMaxEnvy;
  bool envyFreeExists = false;
  BigInt searchSpaceSize;
};

namespace detail {

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

// Advances a nondecreasing tuple over {0..limit} to its lexicographic
// successor; false once the last tuple (all limit) has been consumed.
inline bool nextNondecreasingTuple(std::vector<int>& tuple, int limit) {
  for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
    if (tuple[i] < limit) {
      int v = tuple[i] + 1;
      for (size_t j = i; j < tuple.size(); ++j) tuple[j] = v;
      return true;
    }
  }
  return false;
}

inline Rational maxEnvyOf(const std::vector<std::vector<Rational>>& matrix,
                          const std::vector<PlayerId>& assignment) {
  Rational worst = 0;
  const int n = static_cast<int>(assignment.size());
  std::vector<int> pieceOf(n);
  for (int piece = 0; piece < n; ++piece) pieceOf[assignment[piece]] = piece;
  for (PlayerId p = 0; p < n; ++p) {
    const Rational& own = matrix[p][pieceOf[p]];
    for (int piece = 0; piece < n; ++piece) {
      Rational envy = matrix[p][piece] - own;
      if (envy > worst) worst = envy;
    }
  }
  return worst;
}

}  // namespace detail

// Exhaustive minimum over every discrete cutset and assignment of a
// necklace. Candidates are scanned in lexicographic order (cutset first,
// then assignment), so the reported optimum is the lexicographically least
// one; the scan stops early once envy 0 is found, which is already the least
// candidate attaining the minimum.
inline OracleResult oracle1d(const Necklace& necklace, const BigInt& budget = defaultOracleBudget()) {
  const int n = necklace.playerCount();
  const int k = necklace.length();

  OracleResult result;
  result.searchSpaceSize = detail::binomial(k + n - 1, n - 1);
  BigInt factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  result.searchSpaceSize *= factorial;
  if (result.searchSpaceSize > budget)
    throw BudgetError(result.searchSpaceSize, budget);

  std::vector<std::vector<Rational>> prefix(n, std::vector<Rational>(k + 1, Rational(0)));
  for (PlayerId p = 0; p < n; ++p)
    for (int b = 0; b < k; ++b) prefix[p][b + 1] = prefix[p][b] + necklace.value(b, p);

  bool haveBest = false;
  std::vector<int> cuts(n - 1, 0);
  std::vector<std::vector<Rational>> matrix(n, std::vector<Rational>(n));
  do {
    for (PlayerId p = 0; p < n; ++p)
      for (int piece = 0; piece < n; ++piece) {
        int lo = piece == 0 ? 0 : cuts[piece - 1];
        int hi = piece == n - 1 ? k : cuts[piece];
        matrix[p][piece] = prefix[p][hi] - prefix[p][lo];
      }
    std::vector<PlayerId> assignment(n);
    std::iota(assignment.begin(), assignment.end(), 0);
    do {
      Rational envy = detail::maxEnvyOf(matrix, assignment);
      if (!haveBest || envy < result.minMaxEnvy) {
        haveBest = true;
        result.minMaxEnvy = envy;
        result.bestAllocation.cutset.cuts = cuts;
        result.bestAllocation.assignment = assignment;
      }
    } while (result.minMaxEnvy != 0 &&
             std::next_permutation(assignment.begin(), assignment.end()));
  } while (result.minMaxEnvy != 0 && detail::nextNondecreasingTuple(cuts, k));

  result.envyFreeExists = result.minMaxEnvy == 0;
  return result;
}

// Exhaustive minimum over every lattice cutset and assignment of a grid.
// A candidate chooses one nondecreasing cut tuple per row; tuples are
// compared row-major (row 0's tuple first), which is the order the scan
// visits them in.
inline OracleResult oracle2d(const GridSpec& grid, const BigInt& budget = defaultOracleBudget()) {
  const int n = grid.playerCount();
  const int k = grid.rows();
  const int l = grid.cols();

  OracleResult result;
  BigInt perRow = detail::binomial(l + n - 1, n - 1);
  result.searchSpaceSize = 1;
  for (int r = 0; r < k; ++r) result.searchSpaceSize *= perRow;
  BigInt factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  result.searchSpaceSize *= factorial;
  if (result.searchSpaceSize > budget)
    throw BudgetError(result.searchSpaceSize, budget);

  std::vector<std::vector<int>> rowTuples;
  {
    std::vector<int> tuple(n - 1, 0);
    do {
      rowTuples.push_back(tuple);
    } while (detail::nextNondecreasingTuple(tuple, l));
  }

  // pieceVal[r][t][p][piece]: p's value of piece's slice of row r under tuple t.
  std::vector<std::vector<std::vector<std::vector<Rational>>>> pieceVal(rowTuples.empty() ? 0 : k);
  for (int r = 0; r < k; ++r) {
    pieceVal[r].assign(rowTuples.size(),
                       std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))));
    for (size_t t = 0; t < rowTuples.size(); ++t)
      for (int c = 0; c < l; ++c) {
        int piece = 0;
        for (int i = 0; i < n - 1; ++i)
          if (rowTuples[t][i] <= c) ++piece;
        for (PlayerId p = 0; p < n; ++p)
          pieceVal[r][t][p][piece] += grid.value(r, c, p);
      }
  }

  bool haveBest = false;
  std::vector<size_t> choice(k, 0);
  std::vector<std::vector<Rational>> matrix(n, std::vector<Rational>(n));
  bool more = true;
  while (more) {
    for (PlayerId p = 0; p < n; ++p)
      for (int piece = 0; piece < n; ++piece) {
        Rational total = 0;
        for (int r = 0; r < k; ++r) total += pieceVal[r][choice[r]][p][piece];
        matrix[p][piece] = total;
      }
    std::vector<PlayerId> assignment(n);
    std::iota(assignment.begin(), assignment.end(), 0);
    do {
      Rational envy = detail::maxEnvyOf(matrix, assignment);
      if (!haveBest || envy < result.minMaxEnvy) {
        haveBest = true;
        result.minMaxEnvy = envy;
        result.bestLatticeCuts.cut.assign(n - 1, std::vector<int>(k));
        for (int i = 0; i < n - 1; ++i)
          for (int r = 0; r < k; ++r) result.bestLatticeCuts.cut[i][r] = rowTuples[choice[r]][i];
        result.bestAllocation.assignment = assignment;
      }
    } while (result.minMaxEnvy != 0 &&
             std::next_permutation(assignment.begin(), assignment.end()));
    if (result.minMaxEnvy == 0) break;
    more = false;
    for (int r = k - 1; r >= 0; --r) {
      if (++choice[r] < rowTuples.size()) {
        more = true;
        break;
      }
      choice[r] = 0;
    }
  }

  result.envyFreeExists = result.minMaxEnvy == 0;
  return result;
}

}  // namespace fairdiv

#endif  // FAIRDIV_ORACLE_HPP_
