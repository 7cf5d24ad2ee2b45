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

#ifndef FAIRDIV_NECKLACE_HPP_
#define FAIRDIV_NECKLACE_HPP_

#include <algorithm>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

// Players are dense indices 0..n-1. Human-readable names live only in the
// document layer; every algorithm works on indices.
using PlayerId = int;

// A necklace of k discrete beads. Bead b carries one nonnegative value per
// player, and cuts may be placed only at the integral positions 0..k, so a
// bead is never split. Valuations are additive over beads.
class Necklace {
 public:
  // beadValues[b][p] is player p's value of bead b. Every row must have
  // exactly `players` entries and all entries must be >= 0.
  Necklace(int players, std::vector<std::vector<Rational>> beadValues)
      : players_(players), beads_(std::move(beadValues)) {
    if (players_ <= 0) throw std::invalid_argument("player count must be positive");
    for (const auto& bead : beads_) {
      if (static_cast<int>(bead.size()) != players_)
        throw std::invalid_argument("bead value row does not match player count");
      for (const auto& v : bead) {
        if (v < 0) throw std::invalid_argument("bead values must be nonnegative");
        if (v > maxBeadValue_) maxBeadValue_ = v;
      }
    }
  }

  int playerCount() const { return players_; }
  int length() const { return static_cast<int>(beads_.size()); }

  const Rational& value(int bead, PlayerId p) const {
    if (bead < 0 || bead >= length()) throw std::out_of_range("bead index out of range");
    if (p < 0 || p >= players_) throw std::out_of_range("player index out of range");
    return beads_[bead][p];
  }

  Rational totalValue(PlayerId p) const {
    Rational total = 0;
    for (int b = 0; b < length(); ++b) total += value(b, p);
    return total;
  }

  // Largest single-bead value over all players; the additive-error parameter
  // of the rounding guarantees.
  const Rational& maxBeadValue() const { return maxBeadValue_; }

  bool isBinary() const {
    for (const auto& bead : beads_)
      for (const auto& v : bead)
        if (v != 0 && v != 1) return false;
    return true;
  }

  // At most one player values each bead positively.
  bool isMonolithic() const {
    for (const auto& bead : beads_) {
      int positive = 0;
      for (const auto& v : bead)
        if (v > 0) ++positive;
      if (positive > 1) return false;
    }
    return true;
  }

  bool operator==(const Necklace& other) const {
    return players_ == other.players_ && beads_ == other.beads_;
  }

 private:
  int players_;
  std::vector<std::vector<Rational>> beads_;
  Rational maxBeadValue_ = 0;
};

// n-1 cut positions on a length-k necklace, each in [0, k], nondecreasing.
// Piece j is the bead interval [cuts[j-1], cuts[j]) with sentinels 0 and k;
// repeated cuts make the piece between them empty.
struct DiscreteCutSet {
  std::vector<int> cuts;

  bool operator==(const DiscreteCutSet& other) const { return cuts == other.cuts; }
};

// A division: where to cut, and which player takes which piece.
// assignment[j] is the player who receives piece j; it must be a bijection.
struct Allocation {
  DiscreteCutSet cutset;
  std::vector<PlayerId> assignment;

  bool operator==(const Allocation& other) const {
    return cutset == other.cutset && assignment == other.assignment;
  }
};

// Full envy accounting for one division. envy[p] is how much more p values
// the best piece than their own (clamped at zero), so p is satisfied exactly
// when envy[p] == 0.
struct EnvyReport {
  std::vector<std::vector<Rational>> valueMatrix;  // [player][piece]
  std::vector<Rational> envy;                      // per player, >= 0
  Rational maxEnvy = 0;
};

namespace detail {

inline void checkAssignment(const std::vector<PlayerId>& assignment, int players) {
  if (static_cast<int>(assignment.size()) != players)
    throw std::invalid_argument("assignment must name one player per piece");
  std::vector<bool> seen(players, false);
  for (PlayerId p : assignment) {
    if (p < 0 || p >= players) throw std::invalid_argument("assignment player out of range");
    if (seen[p]) throw std::invalid_argument("assignment repeats a player");
    seen[p] = true;
  }
}

inline void checkCuts(const DiscreteCutSet& cutset, int players, int length) {
  if (static_cast<int>(cutset.cuts.size()) != players - 1)
    throw std::invalid_argument("cut count must be player count minus one");
  int prev = 0;
  for (int c : cutset.cuts) {
    if (c < prev) throw std::invalid_argument("cuts must be nondecreasing and nonnegative");
    prev = c;
  }
  if (prev > length) throw std::invalid_argument("cut position exceeds necklace length");
}

}  // namespace detail

// Value to player p of the bead interval [lo, hi).
inline Rational pieceValue(const Necklace& necklace, PlayerId p, int lo, int hi) {
  if (lo < 0 || hi > necklace.length() || lo > hi)
    throw std::out_of_range("piece interval out of range");
  Rational total = 0;
  for (int b = lo; b < hi; ++b) total += necklace.value(b, p);
  return total;
}

// Envy accounting from an explicit value matrix. assignment[j] = player of
// piece j. Shared by the necklace, cake and grid report builders.
inline EnvyReport envyFromMatrix(std::vector<std::vector<Rational>> matrix,
                                 const std::vector<PlayerId>& assignment) {
  const int players = static_cast<int>(matrix.size());
  detail::checkAssignment(assignment, players);
  std::vector<int> pieceOf(players, -1);
  for (int j = 0; j < players; ++j) pieceOf[assignment[j]] = j;

  EnvyReport report;
  report.valueMatrix = std::move(matrix);
  report.envy.resize(players, Rational(0));
  for (PlayerId p = 0; p < players; ++p) {
    const Rational& own = report.valueMatrix[p][pieceOf[p]];
    for (int j = 0; j < players; ++j) {
      Rational gap = report.valueMatrix[p][j] - own;
      if (gap > report.envy[p]) report.envy[p] = gap;
    }
    if (report.envy[p] > report.maxEnvy) report.maxEnvy = report.envy[p];
  }
  return report;
}

inline EnvyReport envyReport(const Necklace& necklace, const Allocation& alloc) {
  const int n = necklace.playerCount();
  detail::checkCuts(alloc.cutset, n, necklace.length());
  detail::checkAssignment(alloc.assignment, n);

  std::vector<std::vector<Rational>> matrix(n, std::vector<Rational>(n));
  for (int j = 0; j < n; ++j) {
    int lo = j == 0 ? 0 : alloc.cutset.cuts[j - 1];
    int hi = j == n - 1 ? necklace.length() : alloc.cutset.cuts[j];
    for (PlayerId p = 0; p < n; ++p) matrix[p][j] = pieceValue(necklace, p, lo, hi);
  }
  return envyFromMatrix(std::move(matrix), alloc.assignment);
}

inline bool isEpsEnvyFree(const EnvyReport& report, const Rational& eps) {
  if (eps < 0) throw std::invalid_argument("envy tolerance must be nonnegative");
  return report.maxEnvy <= eps;
}

}  // namespace fairdiv

#endif  // FAIRDIV_NECKLACE_HPP_
