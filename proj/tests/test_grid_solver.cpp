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

#include <catch2/catch_amalgamated.hpp>

#include "fairdiv/grid_solver.hpp"
#include "test_instances.hpp"

using namespace fairdiv;

namespace {

// 1x4 strip whose only owned square is (0, 1), held by the last player.
// With cuts at 5/4, 19/12, 2 the middle players split that square 1/3 : 5/12.
GridSpec donationStrip() {
    GridSpec grid(4, 1, 4);
    grid.setValue(0, 1, 3, Rational(1));
    return grid;
}

SlidingState donationState(const GridSpec& grid) {
    ContinuousCutSet cuts{{Rational(5, 4), Rational(19, 12), Rational(2)}};
    return SlidingState(grid, cuts, {0, 1, 2, 3});
}

// Three players; the cut at 7/4 leaves the first player 3/4 of square (0, 1),
// which is exactly its distance to the left boundary.
GridSpec cornerStrip() {
    GridSpec grid(3, 1, 3);
    grid.setValue(0, 1, 2, Rational(1));
    return grid;
}

// 4x3 grid whose sliding phase needs one two-step donation cycle: the two
// crossed squares in column 1 belong to the first player, contested by the
// other two in both rows.
GridSpec cycleGrid() {
    GridSpec grid(3, 4, 3);
    const int owners[4][3] = {{0, 1, 2}, {0, 2, 2}, {0, 0, 2}, {0, 0, 2}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 3; ++c) grid.setValue(r, c, owners[r][c], Rational(1));
    return grid;
}

// 3x3 variant with a single crossed square left after preprocessing, so the
// contest graph is one edge and the solver must fall back to a leaf award.
GridSpec awardGrid() {
    GridSpec grid(3, 3, 3);
    const int owners[3][3] = {{0, 1, 2}, {0, 2, 2}, {0, 0, 2}};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) grid.setValue(r, c, owners[r][c], Rational(1));
    return grid;
}

}  // namespace

// ============================================================
// SlidingState
// ============================================================

TEST_CASE("sliding state tracks positions, slices and envy", "[gridsolver]") {
    GridSpec grid = donationStrip();
    SlidingState state = donationState(grid);

    CHECK(state.cutCount() == 3);
    CHECK(state.position(1, 0) == Rational(19, 12));
    CHECK(state.pieceOfPlayer(2) == 2);
    CHECK(state.pieceLeft(0, 0) == 0);
    CHECK(state.pieceRight(3, 0) == 4);
    CHECK(state.sliceWidth(0, 0, 1) == Rational(1, 4));
    CHECK(state.sliceWidth(1, 0, 1) == Rational(1, 3));
    CHECK(state.sliceWidth(2, 0, 1) == Rational(5, 12));
    CHECK(state.sliceWidth(3, 0, 1) == 0);
    CHECK(state.nonIntegralSegments() == 2);

    auto matrix = state.valueMatrix();
    CHECK(matrix[3] == std::vector<Rational>{Rational(1, 4), Rational(1, 3), Rational(5, 12),
                                             Rational(0)});
    CHECK(state.envyReportNow().maxEnvy == Rational(5, 12));

    SECTION("row mutators reject disorder and out-of-grid positions") {
        CHECK_THROWS_AS(state.setRow(0, {Rational(2), Rational(1), Rational(3)}), InternalError);
        CHECK_THROWS_AS(state.setRow(0, {Rational(1), Rational(2), Rational(5)}), InternalError);
        CHECK_THROWS_AS(state.setRow(0, {Rational(1), Rational(2)}), InternalError);
    }

    SECTION("dump names every field a debugger needs") {
        std::string dump = state.dumpJson();
        CHECK(dump.find("\"positions\"") != std::string::npos);
        CHECK(dump.find("\"squares\"") != std::string::npos);
        CHECK(dump.find("19/12") != std::string::npos);
    }
}

// ============================================================
// donate
// ============================================================

TEST_CASE("donation stops when the donor part runs out", "[gridsolver]") {
    GridSpec grid = donationStrip();
    SlidingState state = donationState(grid);

    DonationOutcome outcome = donate(state, 0, 1, 1, 2, Rational(100));
    CHECK(outcome == DonationOutcome::Exhausted);
    CHECK(state.position(1, 0) == Rational(5, 4));
    CHECK(state.sliceWidth(1, 0, 1) == 0);
    auto matrix = state.valueMatrix();
    CHECK(matrix[3] == std::vector<Rational>{Rational(1, 4), Rational(0), Rational(3, 4),
                                             Rational(0)});
}

TEST_CASE("a zero cap saturates without movement", "[gridsolver]") {
    GridSpec grid = donationStrip();
    SlidingState state = donationState(grid);

    CHECK(donate(state, 0, 1, 1, 2, Rational(0)) == DonationOutcome::Saturated);
    CHECK(state.position(1, 0) == Rational(19, 12));
}

TEST_CASE("a small cap saturates after a partial slide", "[gridsolver]") {
    GridSpec grid = donationStrip();
    SlidingState state = donationState(grid);

    CHECK(donate(state, 0, 1, 1, 2, Rational(1, 6)) == DonationOutcome::Saturated);
    CHECK(state.position(1, 0) == Rational(17, 12));
}

TEST_CASE("donation freezes an edge landing on an integral position", "[gridsolver]") {
    GridSpec grid = cornerStrip();
    ContinuousCutSet cuts{{Rational(7, 4), Rational(2)}};
    SlidingState state(grid, cuts, {0, 1, 2});

    // Donor part and boundary distance are both 3/4; the tie counts as a
    // freeze because the edge becomes integral.
    CHECK(donate(state, 0, 1, 0, 1, Rational(5)) == DonationOutcome::Frozen);
    CHECK(state.position(0, 0) == 1);
    CHECK(state.nonIntegralSegments() == 0);
}

TEST_CASE("donation rejects malformed requests", "[gridsolver]") {
    GridSpec grid = donationStrip();
    SlidingState state = donationState(grid);

    SECTION("the owner cannot donate or receive") {
        CHECK_THROWS_AS(donate(state, 0, 1, 3, 2, Rational(1)), std::invalid_argument);
        CHECK_THROWS_AS(donate(state, 0, 1, 1, 3, Rational(1)), std::invalid_argument);
    }
    SECTION("identical endpoints") {
        CHECK_THROWS_AS(donate(state, 0, 1, 1, 1, Rational(1)), std::invalid_argument);
    }
    SECTION("negative cap") {
        CHECK_THROWS_AS(donate(state, 0, 1, 1, 2, Rational(-1)), std::invalid_argument);
    }
    SECTION("square without an owner") {
        CHECK_THROWS_AS(donate(state, 0, 0, 1, 2, Rational(1)), std::invalid_argument);
    }
    SECTION("both endpoints must hold part of the square") {
        ContinuousCutSet apart{{Rational(5, 4), Rational(2), Rational(2)}};
        SlidingState gap(grid, apart, {0, 1, 2, 3});
        CHECK(gap.sliceWidth(2, 0, 1) == 0);
        CHECK_THROWS_AS(donate(gap, 0, 1, 1, 2, Rational(1)), std::invalid_argument);
    }
}

// ============================================================
// solveGrid: degenerate and preprocessing-only instances
// ============================================================

TEST_CASE("a single player keeps the whole grid", "[gridsolver]") {
    GridSpec grid(1, 2, 2);
    grid.setValue(0, 0, 0, Rational(3));
    grid.setValue(1, 1, 0, Rational(2));

    GridSolution solution = solveGrid(grid);
    CHECK(solution.cuts.cut.empty());
    CHECK(solution.assignment == std::vector<PlayerId>{0});
    CHECK(solution.report.maxEnvy == 0);
    CHECK(solution.report.valueMatrix[0][0] == 5);
    CHECK(solution.stats.totalEvents == 0);
}

TEST_CASE("checkerboard splits along a straight integral cut", "[gridsolver]") {
    GridSolution solution = solveGrid(testdata::checkerboard());
    CHECK(solution.cuts.cut == std::vector<std::vector<int>>{{1, 1}});
    CHECK(solution.assignment == std::vector<PlayerId>{0, 1});
    CHECK(solution.report.maxEnvy == 0);
    CHECK(solution.stats.preprocessedSquares == 0);
    CHECK(solution.stats.totalEvents == 0);
}

TEST_CASE("one-row grids reduce to the necklace case", "[gridsolver]") {
    GridSpec grid(3, 1, 5);
    const int owners[5] = {0, 1, 2, 2, 0};
    for (int c = 0; c < 5; ++c) grid.setValue(0, c, owners[c], Rational(1));

    GridSolution solution = solveGrid(grid);
    CHECK(solution.cuts.cut == std::vector<std::vector<int>>{{1}, {2}});
    CHECK(solution.assignment == std::vector<PlayerId>{0, 1, 2});
    CHECK(solution.report.maxEnvy == 0);
    CHECK(solution.stats.preprocessedSquares == 1);
    CHECK(solution.stats.totalEvents == 0);
}

TEST_CASE("owner-bordering pushes alone settle the striped grid", "[gridsolver]") {
    GridSolution solution = solveGrid(testdata::ownedStripsGrid());
    CHECK(solution.cuts.cut ==
          std::vector<std::vector<int>>{{1, 0, 1, 1, 1}, {2, 1, 2, 2, 2}});
    CHECK(solution.assignment == std::vector<PlayerId>{0, 1, 2});
    CHECK(solution.report.maxEnvy == 0);
    CHECK(solution.stats.preprocessedSquares == 10);
    CHECK(solution.stats.snappedEdges == 0);
    CHECK(solution.stats.totalEvents == 0);
    CHECK(verifyLatticeCuts(testdata::ownedStripsGrid(), solution.cuts).ok);
}

TEST_CASE("edges stranded in worthless squares are snapped, not slid", "[gridsolver]") {
    // The exact backend never parks a cut inside a worthless column (moving
    // it there changes no value, so the bound is the column edge), but
    // preprocessing must still absorb such states rather than strand them.
    GridSpec grid(2, 1, 3);
    grid.setValue(0, 0, 0, Rational(1));
    grid.setValue(0, 2, 1, Rational(1));

    SECTION("below the midpoint snaps left") {
        SlidingState state(grid, ContinuousCutSet{{Rational(5, 4)}}, {0, 1});
        SlidingStats stats;
        detail::preprocess(state, stats);
        CHECK(stats.snappedEdges == 1);
        CHECK(stats.preprocessedSquares == 0);
        CHECK(state.position(0, 0) == 1);
        CHECK(state.envyReportNow().maxEnvy == 0);
    }
    SECTION("the midpoint and above snap right") {
        SlidingState state(grid, ContinuousCutSet{{Rational(3, 2)}}, {0, 1});
        SlidingStats stats;
        detail::preprocess(state, stats);
        CHECK(stats.snappedEdges == 1);
        CHECK(state.position(0, 0) == 2);
        CHECK(state.envyReportNow().maxEnvy == 0);
    }
}

TEST_CASE("non-monolithic grids are rejected", "[gridsolver]") {
    GridSpec grid(2, 1, 2);
    grid.setValue(0, 0, 0, Rational(1));
    grid.setValue(0, 0, 1, Rational(1));
    CHECK_THROWS_AS(solveGrid(grid), std::invalid_argument);
}

// ============================================================
// solveGrid: sliding events
// ============================================================

TEST_CASE("a two-step donation cycle freezes both crossed edges at once", "[gridsolver]") {
    GridSpec grid = cycleGrid();
    GridSolution solution = solveGrid(grid);

    CHECK(solution.cuts.cut == std::vector<std::vector<int>>{{1, 1, 1, 1}, {2, 1, 1, 2}});
    CHECK(solution.assignment == std::vector<PlayerId>{0, 1, 2});
    CHECK(solution.report.maxEnvy == 0);
    CHECK(solution.stats.preprocessedSquares == 6);
    CHECK(solution.stats.cycleEvents == 1);
    CHECK(solution.stats.awardEvents == 0);
    CHECK(solution.stats.totalEvents == 1);
    CHECK(solution.stats.progressEvents == 1);

    // The middle piece survives only as two far-apart squares of column 1.
    LatticeVerification check = verifyLatticeCuts(grid, solution.cuts);
    CHECK(check.ok);
    CHECK(check.barelyConnected);
}

TEST_CASE("a lone contested square is awarded to the leaf player", "[gridsolver]") {
    GridSpec grid = awardGrid();
    GridSolution solution = solveGrid(grid);

    CHECK(solution.cuts.cut == std::vector<std::vector<int>>{{1, 1, 1}, {2, 1, 2}});
    CHECK(solution.assignment == std::vector<PlayerId>{0, 1, 2});
    CHECK(solution.report.maxEnvy == 0);
    CHECK(solution.stats.preprocessedSquares == 5);
    CHECK(solution.stats.cycleEvents == 0);
    CHECK(solution.stats.awardEvents == 1);
    CHECK(solution.stats.totalEvents == 1);
    CHECK(solution.stats.progressEvents == 1);
    CHECK(verifyLatticeCuts(grid, solution.cuts).ok);
}

TEST_CASE("every observed state is envy-free with nonincreasing segments", "[gridsolver]") {
    for (const GridSpec& grid : {cycleGrid(), awardGrid(), testdata::ownedStripsGrid()}) {
        std::vector<int> segments;
        std::vector<Rational> envies;
        GridSolution solution = solveGrid(grid, [&](const SlidingState& state) {
            segments.push_back(state.nonIntegralSegments());
            envies.push_back(state.envyReportNow().maxEnvy);
        });

        REQUIRE(segments.size() == static_cast<size_t>(2 + solution.stats.totalEvents));
        for (const Rational& envy : envies) CHECK(envy == 0);
        for (size_t i = 1; i < segments.size(); ++i) CHECK(segments[i] <= segments[i - 1]);
        CHECK(segments.back() == 0);
    }
}

TEST_CASE("sliding events report their intermediate positions", "[gridsolver]") {
    // After preprocessing the cycle grid, the two crossed edges sit at 3/2 in
    // rows 2 and 3 of the second cut; the donation moves them to 1 and 2.
    std::vector<std::vector<Rational>> secondCutRows;
    solveGrid(cycleGrid(), [&](const SlidingState& state) {
        secondCutRows.push_back(
            {state.position(1, 0), state.position(1, 1), state.position(1, 2),
             state.position(1, 3)});
    });

    REQUIRE(secondCutRows.size() == 3);
    CHECK(secondCutRows[0] == std::vector<Rational>{Rational(3, 2), Rational(3, 2),
                                                    Rational(3, 2), Rational(3, 2)});
    CHECK(secondCutRows[1] == std::vector<Rational>{Rational(2), Rational(1), Rational(3, 2),
                                                    Rational(3, 2)});
    CHECK(secondCutRows[2] ==
          std::vector<Rational>{Rational(2), Rational(1), Rational(1), Rational(2)});
}
