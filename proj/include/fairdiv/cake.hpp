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

#ifndef FAIRDIV_CAKE_HPP_
#define FAIRDIV_CAKE_HPP_

#include <utility>
#include <vector>

#include "fairdiv/necklace.hpp"

namespace fairdiv {

// The continuous relaxation of a necklace: a cake on [0, k] where bead b's
// value is spread uniformly over the unit interval [b, b+1]. Cuts may land
// anywhere, and valuations are piecewise linear in the cut positions.
class PiecewiseCake {
 public:
  explicit PiecewiseCake(const Necklace& necklace)
      : players_(necklace.playerCount()),
        length_(necklace.length()),
        maxDensity_(necklace.maxBeadValue()) {
    prefix_.assign(players_, std::vector<Rational>(length_ + 1, Rational(0)));
    density_.assign(players_, std::vector<Rational>(length_));
    for (PlayerId p = 0; p < players_; ++p) {
      for (int b = 0; b < length_; ++b) {
        density_[p][b] = necklace.value(b, p);
        prefix_[p][b + 1] = prefix_[p][b] + density_[p][b];
      }
    }
  }

  int playerCount() const { return players_; }
  int length() const { return length_; }

  // Largest per-unit density, equal to the necklace's largest bead value.
  const Rational& maxDensity() const { return maxDensity_; }

  // Density of player p on the unit interval [b, b+1).
  const Rational& density(PlayerId p, int b) const { return density_[p][b]; }

  // Value of [0, b] for integral b.
  const Rational& prefixAt(PlayerId p, int b) const { return prefix_[p][b]; }

  Rational totalValue(PlayerId p) const { return prefix_[p][length_]; }

  // Value of [0, x] for any rational x in [0, k].
  Rational prefixValue(PlayerId p, const Rational& x) const {
    if (p < 0 || p >= players_) throw std::out_of_range("player index out of range");
    if (x < 0 || x > length_) throw std::out_of_range("cake position out of range");
    if (x == length_) return prefix_[p][length_];
    int b = toInt(ratFloor(x));
    return prefix_[p][b] + density_[p][b] * (x - b);
  }

  // Value of [a, b] with a <= b.
  Rational intervalValue(PlayerId p, const Rational& a, const Rational& b) const {
    if (a > b) throw std::out_of_range("interval endpoints out of order");
    return prefixValue(p, b) - prefixValue(p, a);
  }

 private:
  int players_;
  int length_;
  Rational maxDensity_;
  std::vector<std::vector<Rational>> prefix_;   // [player][0..k]
  std::vector<std::vector<Rational>> density_;  // [player][0..k-1]
};

inline PiecewiseCake buildCake(const Necklace& necklace) {
  return PiecewiseCake(necklace);
}

// n-1 nondecreasing rational cut positions in [0, k].
struct ContinuousCutSet {
  std::vector<Rational> cuts;

  bool operator==(const ContinuousCutSet& other) const { return cuts == other.cuts; }
};

// A continuous division plus the solver's envy certificate: the exact solver
// certifies 0, the approximate solver certifies the bound it has proven.
struct ContinuousAllocation {
  ContinuousCutSet cutset;
  std::vector<PlayerId> assignment;  // piece index -> player
  Rational certifiedEnvy = 0;
};

namespace detail {

inline void checkContinuousCuts(const ContinuousCutSet& cutset, int players, int length) {
  if (static_cast<int>(cutset.cuts.size()) != players - 1)
    throw std::invalid_argument("cut count must be player count minus one");
  Rational prev = 0;
  for (const Rational& c : cutset.cuts) {
    if (c < prev) throw std::invalid_argument("cuts must be nondecreasing and nonnegative");
    prev = c;
  }
  if (prev > length) throw std::invalid_argument("cut position exceeds cake length");
}

}  // namespace detail

inline EnvyReport envyReport(const PiecewiseCake& cake, const ContinuousAllocation& alloc) {
  const int n = cake.playerCount();
  detail::checkContinuousCuts(alloc.cutset, n, cake.length());
  detail::checkAssignment(alloc.assignment, n);

  std::vector<std::vector<Rational>> matrix(n, std::vector<Rational>(n));
  for (int j = 0; j < n; ++j) {
    Rational lo = j == 0 ? Rational(0) : alloc.cutset.cuts[j - 1];
    Rational hi = j == n - 1 ? Rational(cake.length()) : alloc.cutset.cuts[j];
    for (PlayerId p = 0; p < n; ++p) matrix[p][j] = cake.intervalValue(p, lo, hi);
  }
  return envyFromMatrix(std::move(matrix), alloc.assignment);
}

}  // namespace fairdiv

#endif  // FAIRDIV_CAKE_HPP_
