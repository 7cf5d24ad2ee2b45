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

#include "fairdiv/grid.hpp"
#include "test_instances.hpp"

using namespace fairdiv;

// ============================================================
// GridSpec basics
// ============================================================

TEST_CASE("grid construction and square values", "[grid]") {
    GridSpec grid(2, 2, 3);
    CHECK(grid.playerCount() == 2);
    CHECK(grid.rows() == 2);
    CHECK(grid.cols() == 3);
    CHECK(grid.value(1, 2, 0) == 0);

    grid.setValue(1, 2, 0, Rational(7, 2));
    CHECK(grid.value(1, 2, 0) == Rational(7, 2));

    SECTION("rejects invalid dimensions and coordinates") {
        CHECK_THROWS_AS(GridSpec(0, 2, 2), std::invalid_argument);
        CHECK_THROWS_AS(GridSpec(2, 0, 2), std::invalid_argument);
        CHECK_THROWS_AS(GridSpec(2, 2, 0), std::invalid_argument);
        CHECK_THROWS_AS(grid.setValue(0, 0, 0, Rational(-1)), std::invalid_argument);
        CHECK_THROWS_AS(grid.value(2, 0, 0), std::out_of_range);
        CHECK_THROWS_AS(grid.value(0, 3, 0), std::out_of_range);
        CHECK_THROWS_AS(grid.value(0, 0, 2), std::out_of_range);
    }
}

TEST_CASE("ownership and the monolithic predicate", "[grid]") {
    GridSpec grid(3, 1, 3);
    grid.setValue(0, 0, 1, Rational(2));

    CHECK(grid.owner(0, 0) == 1);
    CHECK(!grid.owner(0, 1).has_value());   // worthless square
    CHECK(grid.isMonolithic());

    grid.setValue(0, 0, 2, Rational(1));    // second positive value
    CHECK(!grid.owner(0, 0).has_value());
    CHECK(!grid.isMonolithic());
}

TEST_CASE("column totals", "[grid]") {
    GridSpec grid = testdata::checkerboard();
    CHECK(grid.columnTotal(0, 0) == 1);
    CHECK(grid.columnTotal(0, 1) == 1);
    CHECK(grid.maxColumnTotal() == 1);
    CHECK(grid.totalValue(0) == 2);
    CHECK(grid.totalValue(1) == 2);

    grid.setValue(1, 0, 1, Rational(5));
    CHECK(grid.columnTotal(1, 0) == 5);
    CHECK(grid.maxColumnTotal() == 5);
}

// ============================================================
// Column projection
// ============================================================

TEST_CASE("column projection collapses rows", "[grid]") {
    SECTION("checkerboard projects to a uniform necklace") {
        Necklace nk = projectColumns(testdata::checkerboard());
        REQUIRE(nk.length() == 2);
        REQUIRE(nk.playerCount() == 2);
        for (int b = 0; b < 2; ++b)
            for (PlayerId p = 0; p < 2; ++p) CHECK(nk.value(b, p) == 1);
    }

    SECTION("a single-row grid projects to its own row") {
        GridSpec grid(2, 1, 3);
        grid.setValue(0, 0, 0, Rational(1));
        grid.setValue(0, 1, 1, Rational(1, 2));
        grid.setValue(0, 2, 0, Rational(3));
        Necklace nk = projectColumns(grid);
        CHECK(nk.value(0, 0) == 1);
        CHECK(nk.value(1, 1) == Rational(1, 2));
        CHECK(nk.value(2, 0) == 3);
        CHECK(nk.value(2, 1) == 0);
    }

    SECTION("an empty column becomes a worthless bead") {
        GridSpec grid(2, 2, 2);
        grid.setValue(0, 0, 0, Rational(1));
        grid.setValue(1, 0, 1, Rational(1));
        Necklace nk = projectColumns(grid);
        CHECK(nk.value(1, 0) == 0);
        CHECK(nk.value(1, 1) == 0);
    }
}

// ============================================================
// Lattice cut sets
// ============================================================

TEST_CASE("straight cuts replicate column positions across rows", "[grid]") {
    LatticeCutSet cuts = latticeFromColumns(DiscreteCutSet{{1, 2}}, 3);
    REQUIRE(cuts.cut.size() == 2);
    CHECK(cuts.cut[0] == std::vector<int>{1, 1, 1});
    CHECK(cuts.cut[1] == std::vector<int>{2, 2, 2});

    CHECK(pieceOfSquare(cuts, 0, 0) == 0);
    CHECK(pieceOfSquare(cuts, 1, 1) == 1);
    CHECK(pieceOfSquare(cuts, 2, 2) == 2);
}

TEST_CASE("lattice verification accepts staircase cuts", "[grid]") {
    GridSpec grid = testdata::ownedStripsGrid();
    LatticeCutSet cuts;
    cuts.cut = {{1, 0, 1, 1, 1}, {3, 1, 2, 2, 2}};

    LatticeVerification v = verifyLatticeCuts(grid, cuts);
    CHECK(v.ok);
    // Pieces 0 and 1 each fall apart once the staircase jogs sever their
    // vertical adjacencies; piece 2 stays connected.
    CHECK(v.barelyConnected);
    REQUIRE(v.diagnostics.size() == 2);
    CHECK(v.diagnostics[0].find("piece 0") != std::string::npos);
    CHECK(v.diagnostics[1].find("piece 1") != std::string::npos);

    SECTION("the staircase division matches ownership exactly") {
        EnvyReport report = gridEnvyReport(grid, cuts, {0, 1, 2});
        CHECK(report.maxEnvy == 0);
        CHECK(report.valueMatrix[0][0] == 4);
        CHECK(report.valueMatrix[1][1] == 6);
        CHECK(report.valueMatrix[2][2] == 5);
    }
}

TEST_CASE("lattice verification rejects malformed cut sets", "[grid]") {
    GridSpec grid = testdata::ownedStripsGrid();

    SECTION("wrong cut count") {
        LatticeCutSet cuts;
        cuts.cut = {{1, 1, 1, 1, 1}};
        LatticeVerification v = verifyLatticeCuts(grid, cuts);
        CHECK(!v.ok);
        CHECK(v.diagnostics.front().find("expected 2 cuts") != std::string::npos);
    }

    SECTION("wrong row count") {
        LatticeCutSet cuts;
        cuts.cut = {{1, 1}, {2, 2}};
        LatticeVerification v = verifyLatticeCuts(grid, cuts);
        CHECK(!v.ok);
    }

    SECTION("position outside the grid") {
        LatticeCutSet cuts;
        cuts.cut = {{1, 1, 1, 1, 1}, {4, 2, 2, 2, 2}};
        LatticeVerification v = verifyLatticeCuts(grid, cuts);
        CHECK(!v.ok);
        CHECK(v.diagnostics.front().find("outside") != std::string::npos);
    }

    SECTION("crossed cuts in one row") {
        GridSpec small(3, 2, 3);
        small.setValue(0, 0, 0, Rational(1));
        LatticeCutSet cuts;
        cuts.cut = {{1, 2}, {1, 1}};
        LatticeVerification v = verifyLatticeCuts(small, cuts);
        CHECK(!v.ok);
        CHECK(v.diagnostics.front().find("out of order") != std::string::npos);
    }
}

TEST_CASE("straight cuts are never flagged as barely connected", "[grid]") {
    GridSpec grid = testdata::checkerboard();
    LatticeCutSet cuts = latticeFromColumns(DiscreteCutSet{{1}}, 2);
    LatticeVerification v = verifyLatticeCuts(grid, cuts);
    CHECK(v.ok);
    CHECK(!v.barelyConnected);
    CHECK(v.diagnostics.empty());
}

// ============================================================
// Envy accounting
// ============================================================

TEST_CASE("grid envy report sums squares per piece", "[grid]") {
    GridSpec grid = testdata::checkerboard();

    SECTION("straight middle cut is envy-free") {
        LatticeCutSet cuts = latticeFromColumns(DiscreteCutSet{{1}}, 2);
        EnvyReport report = gridEnvyReport(grid, cuts, {0, 1});
        CHECK(report.maxEnvy == 0);
        CHECK(report.valueMatrix[0][0] == 1);
        CHECK(report.valueMatrix[0][1] == 1);
    }

    SECTION("a staircase cut can also be envy-free") {
        LatticeCutSet cuts;
        cuts.cut = {{0, 1}};
        EnvyReport report = gridEnvyReport(grid, cuts, {1, 0});
        CHECK(report.maxEnvy == 0);
    }

    SECTION("handing both pieces to the wrong side maximizes envy") {
        LatticeCutSet cuts = latticeFromColumns(DiscreteCutSet{{0}}, 2);
        EnvyReport report = gridEnvyReport(grid, cuts, {0, 1});
        CHECK(report.maxEnvy == 2);   // the empty piece's holder sees everything
    }

    SECTION("rejects invalid cuts and assignments") {
        LatticeCutSet bad;
        bad.cut = {{1}};
        CHECK_THROWS_AS(gridEnvyReport(grid, bad, {0, 1}), std::invalid_argument);
        LatticeCutSet cuts = latticeFromColumns(DiscreteCutSet{{1}}, 2);
        CHECK_THROWS_AS(gridEnvyReport(grid, cuts, {0, 0}), std::invalid_argument);
    }
}

// ============================================================
// Vertical-cut division
// ============================================================

TEST_CASE("column division of the checkerboard is envy-free", "[grid]") {
    auto [allocation, trace] = divideByColumns(testdata::checkerboard());
    CHECK(allocation.cutset.cuts == std::vector<int>{1});
    CHECK(allocation.assignment == std::vector<PlayerId>{0, 1});
    CHECK(trace.envyAfter == 0);
}

TEST_CASE("column division envy stays below twice the column maximum", "[grid]") {
    SECTION("fully contested single square") {
        GridSpec grid(2, 1, 1);
        grid.setValue(0, 0, 0, Rational(1));
        grid.setValue(0, 0, 1, Rational(1));
        auto [allocation, trace] = divideByColumns(grid);
        CHECK(allocation.cutset.cuts == std::vector<int>{1});
        CHECK(trace.envyAfter == 1);
        CHECK(trace.envyAfter < 2 * grid.maxColumnTotal());
    }

    SECTION("taller columns raise the bound, not the envy") {
        GridSpec grid(2, 3, 2);
        for (int r = 0; r < 3; ++r) {
            grid.setValue(r, 0, 0, Rational(1));
            grid.setValue(r, 1, 1, Rational(1));
        }
        auto [allocation, trace] = divideByColumns(grid);
        CHECK(trace.envyAfter == 0);
        CHECK(grid.maxColumnTotal() == 3);
    }
}
