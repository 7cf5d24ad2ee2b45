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

#ifndef FAIRDIV_SPERNER_HPP_
#define FAIRDIV_SPERNER_HPP_

#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fairdiv/cake.hpp"

namespace fairdiv {

// One subdivision level of the approximate solver: the mesh count (cuts live
// on multiples of k/mesh) and the best envy certificate known after
// searching that level.
struct SpernerLevel {
  int mesh = 0;
  Rational certifiedEnvy;
};

struct SpernerResult {
  ContinuousAllocation allocation;
  std::vector<SpernerLevel> levels;
};

namespace detail {

// Division at integer mesh point a (nondecreasing, in [0, mesh]): cuts at
// step * a_i. The vertex is owned by player (sum a_i) mod n; its label is the
// owner's preferred piece there, ties to the lowest index. The owner values
// the whole cake positively, so the preferred piece always has positive
// width; that keeps boundary labels legal for Sperner's lemma.
inline int spernerLabel(const PiecewiseCake& cake, const std::vector<int>& a,
                        const Rational& step) {
  const int n = cake.playerCount();
  const int dims = n - 1;
  int ownerSum = 0;
  for (int v : a) ownerSum += v;
  const PlayerId owner = ownerSum % n;

  int best = 0;
  Rational bestValue;
  Rational prev = 0;
  for (int j = 0; j <= dims; ++j) {
    Rational right = j == dims ? Rational(cake.length()) : step * a[j];
    Rational value = cake.intervalValue(owner, prev, right);
    if (j == 0 || value > bestValue) {
      best = j;
      bestValue = std::move(value);
    }
    prev = std::move(right);
  }
  return best;
}

inline uint64_t encodeVertex(const std::vector<int>& a) {
  uint64_t key = 0;
  for (int v : a) key = (key << 16) | static_cast<uint64_t>(v);
  return key;
}

}  // namespace detail

// Approximate envy-free division by Sperner search, with the per-level
// certificate trace exposed.
//
// The cut simplex {0 <= c_1 <= ... <= c_{n-1} <= k} is triangulated at mesh
// N into elementary simplices (integer base point plus a chain of unit
// steps, one per coordinate). Vertex ownership cycles with the coordinate
// sum, so each elementary simplex touches all n players; labeling each
// vertex with its owner's preferred piece yields a fully-labeled simplex by
// Sperner's lemma. Its barycenter, with piece j handed to the owner of the
// label-j vertex, is the level's candidate division. The mesh is halved
// until the best measured envy reaches eps.
inline SpernerResult solveSpernerTraced(const PiecewiseCake& cake, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("envy tolerance must be positive");
  const int n = cake.playerCount();
  const int k = cake.length();
  const int dims = n - 1;

  SpernerResult result;
  if (n == 1) {
    result.allocation.assignment = {0};
    result.allocation.certifiedEnvy = 0;
    return result;
  }
  for (PlayerId p = 0; p < n; ++p) {
    if (cake.totalValue(p) <= 0)
      throw std::invalid_argument("player " + std::to_string(p) +
                                  " values the whole cake at zero; assign such "
                                  "players empty pieces before solving");
  }

  bool haveBest = false;
  ContinuousAllocation best;
  Rational bestEnvy;

  for (int mesh = 1; mesh <= (1 << 24); mesh *= 2) {
    if (mesh > 0xffff) throw InternalError("subdivision mesh exceeds vertex encoding");
    const Rational step = Rational(k, mesh);
    std::unordered_map<uint64_t, int> labelCache;
    auto labelOf = [&](const std::vector<int>& a) {
      uint64_t key = detail::encodeVertex(a);
      auto it = labelCache.find(key);
      if (it != labelCache.end()) return it->second;
      int label = detail::spernerLabel(cake, a, step);
      labelCache.emplace(key, label);
      return label;
    };

    bool fullyLabeledSeen = false;

    // Base points are nondecreasing with entries in [0, mesh-1]; k = 0 has
    // no such point, but the hungry-player check above already rejects the
    // zero-value cakes that implies.
    internalCheck(k > 0, "cannot subdivide an empty cake");
    std::vector<int> base(dims, 0);
    std::vector<int> perm(dims);
    std::vector<int> vertex(dims);
    while (true) {
      // Chains are permutations of coordinate increments, restricted so that
      // ties in the base point increment the later coordinate first; that
      // keeps every chain vertex inside the cut simplex.
      std::iota(perm.begin(), perm.end(), 0);
      do {
        bool valid = true;
        for (int i = 0; i + 1 < dims && valid; ++i) {
          if (base[i] == base[i + 1]) {
            int posNext = -1, posThis = -1;
            for (int t = 0; t < dims; ++t) {
              if (perm[t] == i) posThis = t;
              if (perm[t] == i + 1) posNext = t;
            }
            valid = posNext < posThis;
          }
        }
        if (!valid) continue;

        vertex = base;
        // ownerOfLabel[j] = player owning the vertex labeled j.
        std::vector<PlayerId> ownerOfLabel(n, -1);
        std::vector<long long> coordSum(dims, 0);
        bool fullyLabeled = true;
        int ownerSum = 0;
        for (int v : vertex) ownerSum += v;
        for (int step_i = 0; step_i <= dims; ++step_i) {
          if (step_i > 0) {
            ++vertex[perm[step_i - 1]];
            ++ownerSum;
          }
          int label = labelOf(vertex);
          PlayerId owner = ownerSum % n;
          if (ownerOfLabel[label] != -1) {
            fullyLabeled = false;
            break;
          }
          ownerOfLabel[label] = owner;
          for (int i = 0; i < dims; ++i) coordSum[i] += vertex[i];
        }
        if (!fullyLabeled) continue;
        fullyLabeledSeen = true;

        ContinuousAllocation candidate;
        candidate.cutset.cuts.resize(dims);
        for (int i = 0; i < dims; ++i)
          candidate.cutset.cuts[i] = step * Rational(coordSum[i], n);
        candidate.assignment.assign(n, -1);
        for (int j = 0; j < n; ++j) candidate.assignment[j] = ownerOfLabel[j];

        Rational measured = envyReport(cake, candidate).maxEnvy;
        if (!haveBest || measured < bestEnvy) {
          haveBest = true;
          bestEnvy = measured;
          best = std::move(candidate);
        }
      } while (std::next_permutation(perm.begin(), perm.end()));

      // Next nondecreasing base point.
      int pos = dims - 1;
      while (pos >= 0 && base[pos] == mesh - 1) --pos;
      if (pos < 0) break;
      ++base[pos];
      for (int i = pos + 1; i < dims; ++i) base[i] = base[pos];
    }

    internalCheck(fullyLabeledSeen, "no fully-labeled simplex at this mesh");
    result.levels.push_back(SpernerLevel{mesh, bestEnvy});
    if (bestEnvy <= eps) {
      best.certifiedEnvy = bestEnvy;
      result.allocation = best;
      return result;
    }
  }
  // The measured envy of the best simplex shrinks with the mesh, so this is
  // unreachable for positive eps.
  throw InternalError("subdivision did not reach the requested tolerance");
}

inline ContinuousAllocation solveSperner(const PiecewiseCake& cake, const Rational& eps) {
  return solveSpernerTraced(cake, eps).allocation;
}

}  // namespace fairdiv

#endif  // FAIRDIV_SPERNER_HPP_
