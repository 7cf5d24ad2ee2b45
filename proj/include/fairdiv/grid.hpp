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

#ifndef FAIRDIV_GRID_HPP_
#define FAIRDIV_GRID_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/rounding.hpp"

namespace fairdiv {

// A k x l grid of indivisible unit squares. Row 0 is the top row. Each
// square carries one nonnegative value per player; a square with exactly one
// positive value is "owned" by that player, and a grid where every square
// has at most one positive value is monolithic. The 2D solver requires
// monolithic input; the oracle and projection accept any grid.
class GridSpec {
 public:
  GridSpec(int players, int rows, int cols)
      : players_(players), rows_(rows), cols_(cols) {
    if (players <= 0) throw std::invalid_argument("player count must be positive");
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("grid dimensions must be positive");
    values_.assign(static_cast<size_t>(rows) * cols,
                   std::vector<Rational>(players, Rational(0)));
  }

  int playerCount() const { return players_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void setValue(int r, int c, PlayerId p, Rational v) {
    if (v < 0) throw std::invalid_argument("square values must be nonnegative");
    values_[index(r, c)][checkPlayer(p)] = std::move(v);
  }

  const Rational& value(int r, int c, PlayerId p) const {
    return values_[index(r, c)][checkPlayer(p)];
  }

  // The unique player valuing the square positively, if there is exactly one.
  std::optional<PlayerId> owner(int r, int c) const {
    const auto& square = values_[index(r, c)];
    std::optional<PlayerId> found;
    for (PlayerId p = 0; p < players_; ++p) {
      if (square[p] > 0) {
        if (found) return std::nullopt;
        found = p;
      }
    }
    return found;
  }

  bool isMonolithic() const {
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) {
        int positive = 0;
        for (PlayerId p = 0; p < players_; ++p)
          if (value(r, c, p) > 0) ++positive;
        if (positive > 1) return false;
      }
    return true;
  }

  Rational columnTotal(PlayerId p, int c) const {
    Rational total = 0;
    for (int r = 0; r < rows_; ++r) total += value(r, c, p);
    return total;
  }

  // Largest total value any player assigns to a single column; the error
  // parameter of the vertical-cut corollary.
  Rational maxColumnTotal() const {
    Rational best = 0;
    for (PlayerId p = 0; p < players_; ++p)
      for (int c = 0; c < cols_; ++c) {
        Rational t = columnTotal(p, c);
        if (t > best) best = t;
      }
    return best;
  }

  Rational totalValue(PlayerId p) const {
    Rational total = 0;
    for (int c = 0; c < cols_; ++c) total += columnTotal(p, c);
    return total;
  }

  bool operator==(const GridSpec& other) const {
    return players_ == other.players_ && rows_ == other.rows_ && cols_ == other.cols_ &&
           values_ == other.values_;
  }

 private:
  size_t index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw std::out_of_range("grid coordinates out of range");
    return static_cast<size_t>(r) * cols_ + c;
  }
  PlayerId checkPlayer(PlayerId p) const {
    if (p < 0 || p >= players_) throw std::out_of_range("player index out of range");
    return p;
  }

  int players_;
  int rows_;
  int cols_;
  std::vector<std::vector<Rational>> values_;  // row-major squares
};

// n-1 grid cuts. cut[i][r] is the column position of cut i in row r, in
// [0, cols]; per-row positions are nondecreasing in i. Each cut is the
// boundary-to-boundary path running down row r at its column position and
// jogging horizontally between rows at integral heights. Piece j in row r is
// the column interval [cut[j-1][r], cut[j][r]) with sentinels 0 and cols.
struct LatticeCutSet {
  std::vector<std::vector<int>> cut;

  bool operator==(const LatticeCutSet& other) const { return cut == other.cut; }
};

// Straight vertical cuts: the 1D division applied to every row.
inline LatticeCutSet latticeFromColumns(const DiscreteCutSet& cutset, int rows) {
  LatticeCutSet out;
  out.cut.assign(cutset.cuts.size(), std::vector<int>(rows));
  for (size_t i = 0; i < cutset.cuts.size(); ++i)
    for (int r = 0; r < rows; ++r) out.cut[i][r] = cutset.cuts[i];
  return out;
}

// Piece index of square (r, c): the number of cuts at or left of it.
inline int pieceOfSquare(const LatticeCutSet& cuts, int r, int c) {
  int piece = 0;
  for (const auto& path : cuts.cut)
    if (path[r] <= c) ++piece;
  return piece;
}

struct LatticeVerification {
  bool ok = false;
  bool barelyConnected = false;
  std::vector<std::string> diagnostics;
};

// Checks that a lattice cut set is well-formed and non-intersecting: right
// shape, positions within the grid, per-row order. Transversal crossings are
// impossible once per-row order holds, since every horizontal jog happens at
// an integral height. Also flags pieces that are connected only along their
// bounding cuts (square sets that fall apart when cut paths sever the shared
// edges between vertically adjacent squares).
inline LatticeVerification verifyLatticeCuts(const GridSpec& grid, const LatticeCutSet& cuts) {
  LatticeVerification result;
  const int n = grid.playerCount();
  const int k = grid.rows();
  const int l = grid.cols();

  if (static_cast<int>(cuts.cut.size()) != n - 1) {
    result.diagnostics.push_back("expected " + std::to_string(n - 1) + " cuts, got " +
                                 std::to_string(cuts.cut.size()));
    return result;
  }
  for (size_t i = 0; i < cuts.cut.size(); ++i) {
    if (static_cast<int>(cuts.cut[i].size()) != k) {
      result.diagnostics.push_back("cut " + std::to_string(i) + " must give one position per row");
      return result;
    }
    for (int r = 0; r < k; ++r) {
      int pos = cuts.cut[i][r];
      if (pos < 0 || pos > l)
        result.diagnostics.push_back("cut " + std::to_string(i) + " row " + std::to_string(r) +
                                     " position " + std::to_string(pos) + " outside [0, " +
                                     std::to_string(l) + "]");
    }
  }
  for (size_t i = 0; i + 1 < cuts.cut.size(); ++i) {
    for (int r = 0; r < k; ++r) {
      if (cuts.cut[i][r] > cuts.cut[i + 1][r])
        result.diagnostics.push_back("cuts " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                     " are out of order in row " + std::to_string(r));
    }
  }
  if (!result.diagnostics.empty()) return result;
  result.ok = true;

  // Weak-connectivity caveat. Two same-piece squares stacked vertically are
  // severed when some cut's horizontal jog covers their shared edge; a piece
  // whose squares do not form one component under the surviving adjacencies
  // is only "barely" connected, along its own cuts.
  auto severed = [&](int r, int c) {
    // Shared edge between (r, c) and (r+1, c) spans columns [c, c+1].
    for (const auto& path : cuts.cut) {
      int lo = std::min(path[r], path[r + 1]);
      int hi = std::max(path[r], path[r + 1]);
      if (lo <= c && c + 1 <= hi) return true;
    }
    return false;
  };
  for (int piece = 0; piece < n; ++piece) {
    std::vector<std::pair<int, int>> squares;
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < l; ++c)
        if (pieceOfSquare(cuts, r, c) == piece) squares.emplace_back(r, c);
    if (squares.empty()) continue;

    std::vector<bool> seen(squares.size(), false);
    std::vector<size_t> stack{0};
    seen[0] = true;
    size_t reached = 1;
    auto indexOf = [&](int r, int c) -> int {
      for (size_t i = 0; i < squares.size(); ++i)
        if (squares[i].first == r && squares[i].second == c) return static_cast<int>(i);
      return -1;
    };
    while (!stack.empty()) {
      auto [r, c] = squares[stack.back()];
      stack.pop_back();
      const std::pair<int, int> sides[4] = {{r, c - 1}, {r, c + 1}, {r - 1, c}, {r + 1, c}};
      for (const auto& [nr, nc] : sides) {
        if (nr < 0 || nr >= k || nc < 0 || nc >= l) continue;
        if (nr != r && severed(std::min(r, nr), c)) continue;
        int idx = indexOf(nr, nc);
        if (idx < 0 || seen[idx]) continue;
        seen[idx] = true;
        ++reached;
        stack.push_back(idx);
      }
    }
    if (reached != squares.size()) {
      result.barelyConnected = true;
      result.diagnostics.push_back("piece " + std::to_string(piece) +
                                   " is connected only along its cuts");
    }
  }
  return result;
}

// Envy accounting for a lattice division.
inline EnvyReport gridEnvyReport(const GridSpec& grid, const LatticeCutSet& cuts,
                                 const std::vector<PlayerId>& assignment) {
  LatticeVerification check = verifyLatticeCuts(grid, cuts);
  if (!check.ok)
    throw std::invalid_argument("invalid lattice cuts: " + check.diagnostics.front());
  const int n = grid.playerCount();
  detail::checkAssignment(assignment, n);

  std::vector<std::vector<Rational>> matrix(n, std::vector<Rational>(n, Rational(0)));
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      int piece = pieceOfSquare(cuts, r, c);
      for (PlayerId p = 0; p < n; ++p) matrix[p][piece] += grid.value(r, c, p);
    }
  return envyFromMatrix(std::move(matrix), assignment);
}

// Collapses the grid onto a necklace of its columns: bead c's value to p is
// p's total value in column c. A division of the projection by vertical cuts
// induces the identical division of the grid.
inline Necklace projectColumns(const GridSpec& grid) {
  std::vector<std::vector<Rational>> beads(grid.cols());
  for (int c = 0; c < grid.cols(); ++c) {
    beads[c].reserve(grid.playerCount());
    for (PlayerId p = 0; p < grid.playerCount(); ++p)
      beads[c].push_back(grid.columnTotal(p, c));
  }
  return Necklace(grid.playerCount(), std::move(beads));
}

// Vertical-cut division of a grid via its column projection: envy stays
// strictly below twice the largest column total (plus the tolerance when
// the approximate backend runs).
inline std::pair<Allocation, RoundingTrace> divideByColumns(
    const GridSpec& grid, const SolverBackend& backend = SolverBackend::exact()) {
  auto result = divideGeneral(projectColumns(grid), backend);

  Rational s = grid.maxColumnTotal();
  Rational bound = 2 * s;
  if (backend.kind == SolverBackend::Kind::Sperner) bound += backend.eps;
  internalCheck(s > 0 ? result.second.envyAfter < bound : result.second.envyAfter == 0,
                "column division exceeds its envy bound");
  return result;
}

}  // namespace fairdiv

#endif  // FAIRDIV_GRID_HPP_
