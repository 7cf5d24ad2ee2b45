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

#ifndef FAIRDIV_GRID_SOLVER_HPP_
#define FAIRDIV_GRID_SOLVER_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fairdiv/exact_solver.hpp"
#include "fairdiv/grid.hpp"

namespace fairdiv {

// How a single donation ended: the donor's part of the square ran out, a
// sliding edge reached an integral position, or the transfer cap bound first.
enum class DonationOutcome { Exhausted, Frozen, Saturated };

struct SlidingStats {
  int preprocessedSquares = 0;  // squares handed wholly to their owner up front
  int snappedEdges = 0;         // edges inside worthless squares moved to bounds
  int totalEvents = 0;          // donation advances plus awards
  int progressEvents = 0;       // events that lowered the non-integral count
  int cycleEvents = 0;
  int awardEvents = 0;
};

// Raised when a sliding invariant breaks; carries the serialized state so the
// failure can be reproduced offline.
class GridSolveError : public InternalError {
 public:
  GridSolveError(const std::string& what, std::string dump)
      : InternalError(what), dump_(std::move(dump)) {}

  const std::string& stateDump() const { return dump_; }

 private:
  std::string dump_;
};

// A mid-slide division: n-1 cuts with independent rational positions per row,
// plus the fixed piece assignment. Piece j covers [x[j-1][r], x[j][r]) in row
// r, with sentinels 0 and cols. Positions stay ordered within each row; the
// mutators check that.
class SlidingState {
 public:
  SlidingState(const GridSpec& grid, const ContinuousCutSet& cuts,
               std::vector<PlayerId> assignment)
      : grid_(&grid), assignment_(std::move(assignment)) {
    detail::checkContinuousCuts(cuts, grid.playerCount(), grid.cols());
    detail::checkAssignment(assignment_, grid.playerCount());
    x_.assign(cuts.cuts.size(), std::vector<Rational>(grid.rows()));
    for (size_t i = 0; i < cuts.cuts.size(); ++i)
      for (int r = 0; r < grid.rows(); ++r) x_[i][r] = cuts.cuts[i];
    pieceOf_.assign(assignment_.size(), 0);
    for (size_t j = 0; j < assignment_.size(); ++j) pieceOf_[assignment_[j]] = static_cast<int>(j);
  }

  const GridSpec& grid() const { return *grid_; }
  int cutCount() const { return static_cast<int>(x_.size()); }
  const std::vector<PlayerId>& assignment() const { return assignment_; }
  int pieceOfPlayer(PlayerId p) const { return pieceOf_.at(p); }

  const Rational& position(int i, int r) const { return x_.at(i).at(r); }

  Rational pieceLeft(int j, int r) const { return j == 0 ? Rational(0) : x_.at(j - 1).at(r); }
  Rational pieceRight(int j, int r) const {
    return j == cutCount() ? Rational(grid_->cols()) : x_.at(j).at(r);
  }

  // Width of piece j's part of square (r, c); zero when they do not overlap.
  Rational sliceWidth(int j, int r, int c) const {
    Rational lo = pieceLeft(j, r);
    Rational hi = pieceRight(j, r);
    if (lo < c) lo = c;
    if (hi > c + 1) hi = c + 1;
    return hi > lo ? hi - lo : Rational(0);
  }

  bool edgeInside(int i, int r, int c) const {
    const Rational& pos = x_.at(i).at(r);
    return pos > c && pos < c + 1;
  }

  int nonIntegralSegments() const {
    int count = 0;
    for (const auto& row : x_)
      for (const Rational& pos : row)
        if (!isIntegral(pos)) ++count;
    return count;
  }

  // value[p][j]: p's total value of piece j, fractional squares pro rata.
  std::vector<std::vector<Rational>> valueMatrix() const {
    const int n = grid_->playerCount();
    std::vector<std::vector<Rational>> matrix(n, std::vector<Rational>(n, Rational(0)));
    for (int r = 0; r < grid_->rows(); ++r)
      for (int c = 0; c < grid_->cols(); ++c)
        for (PlayerId p = 0; p < n; ++p) {
          const Rational& v = grid_->value(r, c, p);
          if (v == 0) continue;
          for (int j = 0; j < n; ++j) {
            Rational w = sliceWidth(j, r, c);
            if (w > 0) matrix[p][j] += v * w;
          }
        }
    return matrix;
  }

  EnvyReport envyReportNow() const { return envyFromMatrix(valueMatrix(), assignment_); }

  std::vector<Rational> rowPositions(int r) const {
    std::vector<Rational> row(x_.size());
    for (size_t i = 0; i < x_.size(); ++i) row[i] = x_[i].at(r);
    return row;
  }

  // Replaces one row's positions wholesale; the result must still be an
  // ordered row within the grid.
  void setRow(int r, const std::vector<Rational>& positions) {
    internalCheck(positions.size() == x_.size(), "row update has wrong cut count");
    for (size_t i = 0; i < positions.size(); ++i) {
      internalCheck(positions[i] >= 0 && positions[i] <= grid_->cols(),
                    "edge pushed outside the grid");
      internalCheck(i == 0 || positions[i - 1] <= positions[i], "row update breaks cut order");
      x_[i].at(r) = positions[i];
    }
  }

  // Shifts selected edges of one row by per-edge deltas, preserving order.
  void shiftEdges(int r, const std::vector<std::pair<int, Rational>>& deltas) {
    for (const auto& [i, d] : deltas) x_.at(i).at(r) += d;
    for (size_t i = 0; i < x_.size(); ++i) {
      internalCheck(x_[i][r] >= 0 && x_[i][r] <= grid_->cols(), "edge slid outside the grid");
      internalCheck(i == 0 || x_[i - 1][r] <= x_[i][r], "sliding broke cut order");
    }
  }

  std::string dumpJson() const {
    nlohmann::json doc;
    doc["players"] = grid_->playerCount();
    doc["rows"] = grid_->rows();
    doc["cols"] = grid_->cols();
    nlohmann::json squares = nlohmann::json::array();
    for (int r = 0; r < grid_->rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < grid_->cols(); ++c) {
        nlohmann::json sq;
        auto owner = grid_->owner(r, c);
        if (owner) {
          sq["owner"] = *owner;
          sq["value"] = toString(grid_->value(r, c, *owner));
        } else {
          sq["owner"] = nullptr;
        }
        row.push_back(std::move(sq));
      }
      squares.push_back(std::move(row));
    }
    doc["squares"] = std::move(squares);
    doc["assignment"] = assignment_;
    nlohmann::json positions = nlohmann::json::array();
    for (const auto& cut : x_) {
      nlohmann::json row = nlohmann::json::array();
      for (const Rational& pos : cut) row.push_back(toString(pos));
      positions.push_back(std::move(row));
    }
    doc["positions"] = std::move(positions);
    nlohmann::json matrix = nlohmann::json::array();
    for (const auto& row : valueMatrix()) {
      nlohmann::json out = nlohmann::json::array();
      for (const Rational& v : row) out.push_back(toString(v));
      matrix.push_back(std::move(out));
    }
    doc["valueMatrix"] = std::move(matrix);
    return doc.dump(2);
  }

 private:
  const GridSpec* grid_;
  std::vector<PlayerId> assignment_;   // piece -> player
  std::vector<int> pieceOf_;           // player -> piece
  std::vector<std::vector<Rational>> x_;  // [cut][row]
};

namespace detail {

// One step of a donation cycle, in piece terms.
struct PlannedDonation {
  int row = 0;
  int col = 0;
  int fromPiece = 0;
  int toPiece = 0;
};

// The contiguous edges separating the two pieces' parts of the square, and
// the direction that shrinks the donor. All of them sit strictly inside the
// square whenever both parts are positive.
struct DonationBlock {
  int firstEdge = 0;
  int lastEdge = 0;
  int direction = 0;  // -1 slides left, +1 slides right
};

inline DonationBlock donationBlock(int fromPiece, int toPiece) {
  DonationBlock block;
  block.firstEdge = std::min(fromPiece, toPiece);
  block.lastEdge = std::max(fromPiece, toPiece) - 1;
  block.direction = fromPiece < toPiece ? -1 : 1;
  return block;
}

// Net edge velocities of a set of simultaneous donations, in columns per
// unit time. Each donation slides its block at speed 1/value(S) so that
// value moves at unit rate; overlapping blocks in one square superpose.
inline std::map<std::pair<int, int>, Rational> donationVelocities(
    const SlidingState& state, const std::vector<PlannedDonation>& plans) {
  std::map<std::pair<int, int>, Rational> vel;  // (edge, row) -> speed
  for (const PlannedDonation& d : plans) {
    auto owner = state.grid().owner(d.row, d.col);
    internalCheck(owner.has_value(), "donation through an unowned square");
    const Rational& v = state.grid().value(d.row, d.col, *owner);
    DonationBlock block = donationBlock(d.fromPiece, d.toPiece);
    Rational rate = Rational(block.direction) / v;
    for (int e = block.firstEdge; e <= block.lastEdge; ++e) {
      internalCheck(state.edgeInside(e, d.row, d.col),
                    "donation block leaves its square");
      vel[{e, d.row}] += rate;
    }
  }
  for (auto it = vel.begin(); it != vel.end();)
    it = it->second == 0 ? vel.erase(it) : std::next(it);
  return vel;
}

// Advances simultaneous donations to the first event: a donor part running
// out or an edge reaching an integral position. Returns true when the
// non-integral segment count dropped.
inline bool advanceDonations(SlidingState& state, const std::vector<PlannedDonation>& plans) {
  auto vel = donationVelocities(state, plans);
  internalCheck(!vel.empty(), "donation plan produces no motion");

  std::optional<Rational> step;
  auto bound = [&step](const Rational& t) {
    if (!step || t < *step) step = t;
  };

  for (const auto& [key, w] : vel) {
    const Rational& pos = state.position(key.first, key.second);
    Rational dist = w < 0 ? pos - Rational(ratFloor(pos)) : Rational(ratCeil(pos)) - pos;
    internalCheck(dist > 0, "moving edge already integral");
    bound(dist / ratAbs(w));
  }

  auto edgeVelocity = [&](int i, int r, int c) -> Rational {
    if (i < 0 || i >= state.cutCount() || !state.edgeInside(i, r, c)) return Rational(0);
    auto it = vel.find({i, r});
    return it == vel.end() ? Rational(0) : it->second;
  };

  std::vector<std::pair<int, int>> squares;
  for (const PlannedDonation& d : plans)
    squares.emplace_back(d.row, d.col);
  std::sort(squares.begin(), squares.end());
  squares.erase(std::unique(squares.begin(), squares.end()), squares.end());
  const int n = state.grid().playerCount();
  for (const auto& [r, c] : squares) {
    for (int j = 0; j < n; ++j) {
      Rational rate = edgeVelocity(j, r, c) - edgeVelocity(j - 1, r, c);
      if (rate < 0) {
        Rational width = state.sliceWidth(j, r, c);
        internalCheck(width > 0, "shrinking a piece part that is already empty");
        bound(width / -rate);
      }
    }
  }

  internalCheck(step.has_value() && *step > 0, "donation advance found no positive step");

  int before = state.nonIntegralSegments();
  std::map<int, std::vector<std::pair<int, Rational>>> perRow;
  for (const auto& [key, w] : vel) perRow[key.second].emplace_back(key.first, w * *step);
  for (const auto& [r, deltas] : perRow) state.shiftEdges(r, deltas);
  int after = state.nonIntegralSegments();
  internalCheck(after <= before, "donation advance raised the non-integral count");
  return after < before;
}

}  // namespace detail

// Slides the edges separating from's and to's parts of square (row, col)
// toward the donor at unit rate, transferring the square owner's value from
// one piece to the other. Stops at the donor part running out, an edge
// reaching an integral position, or the value cap, whichever binds first.
inline DonationOutcome donate(SlidingState& state, int row, int col, PlayerId from,
                              PlayerId to, const Rational& cap) {
  auto owner = state.grid().owner(row, col);
  if (!owner) throw std::invalid_argument("donation square has no owner");
  if (*owner == from || *owner == to)
    throw std::invalid_argument("the square's owner cannot take part in a donation");
  if (from == to) throw std::invalid_argument("donation endpoints must differ");
  if (cap < 0) throw std::invalid_argument("donation cap must be nonnegative");

  int fromPiece = state.pieceOfPlayer(from);
  int toPiece = state.pieceOfPlayer(to);
  Rational fromWidth = state.sliceWidth(fromPiece, row, col);
  Rational toWidth = state.sliceWidth(toPiece, row, col);
  if (fromWidth == 0 || toWidth == 0)
    throw std::invalid_argument("both donation endpoints must hold part of the square");

  const Rational& value = state.grid().value(row, col, *owner);
  detail::DonationBlock block = detail::donationBlock(fromPiece, toPiece);
  Rational capWidth = cap / value;
  Rational shift = std::min(fromWidth, capWidth);

  // Distance until the block's leading edge lands on the square boundary;
  // never smaller than the donor part, which exhausts at the same moment
  // only when that part touches the far boundary.
  int lead = block.direction < 0 ? block.firstEdge : block.lastEdge;
  Rational freezeDist = block.direction < 0 ? Rational(state.position(lead, row) - col)
                                            : Rational(col + 1 - state.position(lead, row));
  internalCheck(freezeDist >= fromWidth, "donor part outlasts its sliding block");

  if (shift > 0) {
    std::vector<std::pair<int, Rational>> deltas;
    for (int e = block.firstEdge; e <= block.lastEdge; ++e)
      deltas.emplace_back(e, Rational(block.direction) * shift);
    state.shiftEdges(row, deltas);
  }
  if (capWidth < fromWidth) return DonationOutcome::Saturated;
  return shift == freezeDist ? DonationOutcome::Frozen : DonationOutcome::Exhausted;
}

namespace detail {

// For one player P, the multigraph on the other players whose edges are P's
// squares still crossed by a non-integral edge, one edge per contesting pair.
struct ContestGraph {
  // pair (u, v) with u < v -> squares connecting them, in row-major order
  std::map<std::pair<PlayerId, PlayerId>, std::vector<std::pair<int, int>>> labels;
  std::map<PlayerId, int> degree;  // edge instances per vertex
};

inline ContestGraph buildContestGraph(const SlidingState& state, PlayerId p) {
  ContestGraph graph;
  const GridSpec& grid = state.grid();
  const int n = grid.playerCount();
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      if (grid.owner(r, c) != p) continue;
      bool crossed = false;
      for (int i = 0; i < state.cutCount() && !crossed; ++i)
        crossed = state.edgeInside(i, r, c);
      if (!crossed) continue;

      std::vector<PlayerId> contestants;
      for (int j = 0; j < n; ++j)
        if (state.sliceWidth(j, r, c) > 0) {
          PlayerId q = state.assignment()[j];
          internalCheck(q != p, "owner still holds part of a crossed square");
          contestants.push_back(q);
        }
      std::sort(contestants.begin(), contestants.end());
      for (size_t a = 0; a < contestants.size(); ++a)
        for (size_t b = a + 1; b < contestants.size(); ++b) {
          graph.labels[{contestants[a], contestants[b]}].emplace_back(r, c);
          ++graph.degree[contestants[a]];
          ++graph.degree[contestants[b]];
        }
    }
  return graph;
}

// Finds the shortest simple donation cycle that actually moves an edge,
// preferring the lexicographically least vertex sequence and then the least
// square labels. Two-step cycles must use two distinct squares. Returns the
// per-step donations, or nothing when every candidate stands still.
inline std::optional<std::vector<PlannedDonation>> findCyclePlan(const SlidingState& state,
                                                                 const ContestGraph& graph) {
  std::vector<PlayerId> vertices;
  for (const auto& [v, deg] : graph.degree)
    if (deg > 0) vertices.push_back(v);

  auto labelsOf = [&graph](PlayerId a, PlayerId b) -> const std::vector<std::pair<int, int>>* {
    auto it = graph.labels.find({std::min(a, b), std::max(a, b)});
    return it == graph.labels.end() ? nullptr : &it->second;
  };

  auto tryLabels = [&](const std::vector<PlayerId>& cycle)
      -> std::optional<std::vector<PlannedDonation>> {
    const size_t len = cycle.size();
    std::vector<const std::vector<std::pair<int, int>>*> options(len);
    for (size_t i = 0; i < len; ++i) {
      options[i] = labelsOf(cycle[i], cycle[(i + 1) % len]);
      if (!options[i]) return std::nullopt;
    }
    std::vector<size_t> choice(len, 0);
    while (true) {
      bool valid = len != 2 || (*options[0])[choice[0]] != (*options[1])[choice[1]];
      if (valid) {
        std::vector<PlannedDonation> plans(len);
        for (size_t i = 0; i < len; ++i) {
          const auto& square = (*options[i])[choice[i]];
          plans[i] = {square.first, square.second, state.pieceOfPlayer(cycle[i]),
                      state.pieceOfPlayer(cycle[(i + 1) % len])};
        }
        if (!donationVelocities(state, plans).empty()) return plans;
      }
      size_t i = len;
      while (i > 0) {
        --i;
        if (++choice[i] < options[i]->size()) break;
        choice[i] = 0;
        if (i == 0) return std::nullopt;
      }
    }
  };

  // Sequences are enumerated shortest first and lexicographically within a
  // length, anchored at their least vertex so rotations appear once.
  std::vector<PlayerId> seq;
  std::function<std::optional<std::vector<PlannedDonation>>(size_t)> extend =
      [&](size_t target) -> std::optional<std::vector<PlannedDonation>> {
    if (seq.size() == target) {
      if (!labelsOf(seq.back(), seq.front())) return std::nullopt;
      return tryLabels(seq);
    }
    for (PlayerId v : vertices) {
      if (v <= seq.front()) continue;
      if (std::find(seq.begin(), seq.end(), v) != seq.end()) continue;
      if (!labelsOf(seq.back(), v)) continue;
      seq.push_back(v);
      auto found = extend(target);
      if (found) return found;
      seq.pop_back();
    }
    return std::nullopt;
  };

  for (size_t len = 2; len <= vertices.size(); ++len)
    for (PlayerId start : vertices) {
      seq.assign(1, start);
      auto found = extend(len);
      if (found) return found;
    }
  return std::nullopt;
}

// Hands square (r, c) wholly to the player holding piece jTo by pushing the
// crossing edges to its boundaries.
inline void pushSquareToPiece(SlidingState& state, int r, int c, int jTo) {
  std::vector<Rational> row = state.rowPositions(r);
  for (int i = 0; i < state.cutCount(); ++i)
    if (row[i] > c && row[i] < c + 1) row[i] = i < jTo ? Rational(c) : Rational(c + 1);
  state.setRow(r, row);
}

// Awards squares crossed by an edge bordering their owner's piece to the
// owner, and parks edges inside worthless squares at the nearest boundary.
// Safe unconditionally: the owner is the only player who values the square,
// gaining it entirely, and a worthless square moves no value at all.
inline void preprocess(SlidingState& state, SlidingStats& stats) {
  const GridSpec& grid = state.grid();
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      bool crossed = false;
      for (int i = 0; i < state.cutCount() && !crossed; ++i)
        crossed = state.edgeInside(i, r, c);
      if (!crossed) continue;

      auto owner = grid.owner(r, c);
      if (!owner) {
        std::vector<Rational> row = state.rowPositions(r);
        for (int i = 0; i < state.cutCount(); ++i)
          if (row[i] > c && row[i] < c + 1) {
            row[i] = Rational(roundHalfUp(row[i]));
            ++stats.snappedEdges;
          }
        state.setRow(r, row);
        continue;
      }

      int jOwner = state.pieceOfPlayer(*owner);
      bool borders = false;
      for (int i = 0; i < state.cutCount() && !borders; ++i)
        borders = state.edgeInside(i, r, c) && (i == jOwner - 1 || i == jOwner);
      if (!borders) continue;

      pushSquareToPiece(state, r, c, jOwner);
      ++stats.preprocessedSquares;
    }

  // Every remaining non-integral edge crosses an owned square away from its
  // owner's piece, and owners hold their squares whole or not at all.
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      auto owner = grid.owner(r, c);
      for (int i = 0; i < state.cutCount(); ++i)
        if (state.edgeInside(i, r, c)) {
          internalCheck(owner.has_value(), "worthless square still crossed");
          int jOwner = state.pieceOfPlayer(*owner);
          internalCheck(i != jOwner - 1 && i != jOwner,
                        "owner's piece still borders a crossing edge");
        }
      if (owner) {
        Rational held = state.sliceWidth(state.pieceOfPlayer(*owner), r, c);
        internalCheck(held == 0 || held == 1, "owner holds a fractional square");
      }
    }
}

// Tries to award a whole square to a degree-1 vertex without creating envy.
// Leaves are tried in increasing player order; an award is committed only if
// the full division stays envy-free, which also covers the case where the
// donor parts have unequal values and the award could overshoot.
inline bool tryLeafAward(SlidingState& state, PlayerId p, const ContestGraph& graph,
                         SlidingStats& stats) {
  for (const auto& [q, deg] : graph.degree) {
    if (deg != 1) continue;
    const std::vector<std::pair<int, int>>* square = nullptr;
    for (const auto& [pair, labels] : graph.labels)
      if (pair.first == q || pair.second == q) {
        square = &labels;
        break;
      }
    internalCheck(square && square->size() == 1, "degree-1 vertex has no unique square");
    auto [r, c] = square->front();

    // A leaf's only partially held square of p's is its labeled one.
    int jq = state.pieceOfPlayer(q);
    for (int rr = 0; rr < state.grid().rows(); ++rr)
      for (int cc = 0; cc < state.grid().cols(); ++cc) {
        if (rr == r && cc == c) continue;
        if (state.grid().owner(rr, cc) != p) continue;
        Rational w = state.sliceWidth(jq, rr, cc);
        internalCheck(w == 0 || w == 1, "degree-1 vertex holds another partial square");
      }

    std::vector<Rational> saved = state.rowPositions(r);
    pushSquareToPiece(state, r, c, jq);
    if (state.envyReportNow().maxEnvy == 0) {
      ++stats.awardEvents;
      return true;
    }
    state.setRow(r, saved);
  }
  return false;
}

}  // namespace detail

// Called with the state after the continuous phase, after preprocessing, and
// after every sliding event.
using SlidingObserver = std::function<void(const SlidingState&)>;

struct GridSolution {
  LatticeCutSet cuts;
  std::vector<PlayerId> assignment;
  EnvyReport report;
  SlidingStats stats;
};

// Envy-free division of a monolithic grid by n-1 non-intersecting lattice
// cuts. Solves the column projection exactly, hands squares crossed next to
// their owners over to them, then repeatedly donates value around contest
// cycles (or awards a leaf's square) until every edge is integral.
inline GridSolution solveGrid(const GridSpec& grid, const SlidingObserver& observer = {}) {
  if (!grid.isMonolithic())
    throw std::invalid_argument("grid preferences must be monolithic");
  const int n = grid.playerCount();
  const int k = grid.rows();

  ContinuousAllocation continuous = solveExact(buildCake(projectColumns(grid)));
  SlidingState state(grid, continuous.cutset, continuous.assignment);
  internalCheck(state.envyReportNow().maxEnvy == 0, "continuous phase is not envy-free");
  if (observer) observer(state);

  SlidingStats stats;
  detail::preprocess(state, stats);
  if (state.envyReportNow().maxEnvy != 0)
    throw GridSolveError("preprocessing created envy", state.dumpJson());
  if (observer) observer(state);

  // Donor parts vanish at most once per piece and square, and each award or
  // freeze clears at least one edge, so events are bounded.
  const long maxEvents = static_cast<long>(n) * k * grid.cols() + static_cast<long>(n) * k + 16;
  while (state.nonIntegralSegments() > 0) {
    if (stats.totalEvents > maxEvents)
      throw GridSolveError("sliding stopped making progress", state.dumpJson());

    // Lowest-indexed player still owning a crossed square.
    PlayerId p = n;
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < grid.cols(); ++c) {
        auto owner = grid.owner(r, c);
        if (!owner || *owner >= p) continue;
        for (int i = 0; i < state.cutCount(); ++i)
          if (state.edgeInside(i, r, c)) p = *owner;
      }
    internalCheck(p < n, "non-integral edge crosses no owned square");

    detail::ContestGraph graph = detail::buildContestGraph(state, p);
    int before = state.nonIntegralSegments();
    auto plan = detail::findCyclePlan(state, graph);
    if (plan) {
      detail::advanceDonations(state, *plan);
      ++stats.cycleEvents;
    } else if (!detail::tryLeafAward(state, p, graph, stats)) {
      throw GridSolveError("no donation cycle or safe award available", state.dumpJson());
    }
    ++stats.totalEvents;
    int after = state.nonIntegralSegments();
    internalCheck(after <= before, "sliding raised the non-integral count");
    if (after < before) ++stats.progressEvents;
    if (state.envyReportNow().maxEnvy != 0)
      throw GridSolveError("envy appeared during sliding", state.dumpJson());
    if (observer) observer(state);
  }

  GridSolution solution;
  solution.assignment = state.assignment();
  solution.cuts.cut.assign(state.cutCount(), std::vector<int>(k));
  for (int i = 0; i < state.cutCount(); ++i)
    for (int r = 0; r < k; ++r)
      solution.cuts.cut[i][r] = toInt(ratFloor(state.position(i, r)));
  LatticeVerification check = verifyLatticeCuts(grid, solution.cuts);
  internalCheck(check.ok, "extracted cuts fail verification");
  solution.report = gridEnvyReport(grid, solution.cuts, solution.assignment);
  internalCheck(solution.report.maxEnvy == 0, "extracted division is not envy-free");
  internalCheck(stats.progressEvents <= static_cast<long>(n - 1) * k,
                "more progress events than non-integral segments");
  solution.stats = stats;
  return solution;
}

}  // namespace fairdiv

#endif  // FAIRDIV_GRID_SOLVER_HPP_
