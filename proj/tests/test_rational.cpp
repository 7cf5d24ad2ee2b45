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

#include "fairdiv/rational.hpp"

using namespace fairdiv;

TEST_CASE("parseRational accepts integers, fractions and decimals", "[rational]") {
    REQUIRE(parseRational("3") == Rational(3));
    REQUIRE(parseRational("-12") == Rational(-12));
    REQUIRE(parseRational("+4") == Rational(4));
    REQUIRE(parseRational("7/2") == Rational(7, 2));
    REQUIRE(parseRational("-7/2") == Rational(-7, 2));
    REQUIRE(parseRational("6/4") == Rational(3, 2));
    REQUIRE(parseRational("0.1") == Rational(1, 10));
    REQUIRE(parseRational("-1.5") == Rational(-3, 2));
    REQUIRE(parseRational(".125") == Rational(1, 8));
    REQUIRE(parseRational("2.") == Rational(2));
    REQUIRE(parseRational("00.50") == Rational(1, 2));
    REQUIRE(parseRational("0") == Rational(0));
}

TEST_CASE("parseRational rejects malformed literals", "[rational]") {
    REQUIRE_THROWS_AS(parseRational(""), std::invalid_argument);
    REQUIRE_THROWS_AS(parseRational("."), std::invalid_argument);
    REQUIRE_THROWS_AS(parseRational("-"), std::invalid_argument);
    REQUIRE_THROWS_AS(parseRational("1/0"), std::invalid_argument);
    REQUIRE_THROWS_AS(parseRational("/3"), std::invalid_argument);
    REQUIRE_THROWS_AS(parseRational("3/"), std::invalid_argument);
    REQUIRE_THROWS_AS(parseRational("1/-2"), std::invalid_argument);
    REQUIRE_THROWS_AS(parseRational("1.2.3"), std::invalid_argument);
    REQUIRE_THROWS_AS(parseRational("1.5/2"), std::invalid_argument);
    REQUIRE_THROWS_AS(parseRational("two"), std::invalid_argument);
    REQUIRE_THROWS_AS(parseRational(" 1"), std::invalid_argument);
    REQUIRE_THROWS_AS(parseRational("1 "), std::invalid_argument);
}

TEST_CASE("toString emits canonical lowest-terms form", "[rational]") {
    REQUIRE(toString(Rational(5)) == "5");
    REQUIRE(toString(Rational(-5)) == "-5");
    REQUIRE(toString(Rational(7, 2)) == "7/2");
    REQUIRE(toString(Rational(6, 4)) == "3/2");
    REQUIRE(toString(Rational(-6, 4)) == "-3/2");
    REQUIRE(toString(Rational(0)) == "0");
    REQUIRE(toString(parseRational("0.1")) == "1/10");
}

TEST_CASE("toString and parseRational round-trip", "[rational]") {
    const char* samples[] = {"0", "1", "-1", "7/2", "-355/113", "12345678901234567890/7"};
    for (const char* s : samples) {
        REQUIRE(toString(parseRational(s)) == s);
    }
}

TEST_CASE("floor, ceil and half-up rounding", "[rational]") {
    REQUIRE(ratFloor(Rational(7, 2)) == 3);
    REQUIRE(ratFloor(Rational(-7, 2)) == -4);
    REQUIRE(ratFloor(Rational(4)) == 4);
    REQUIRE(ratCeil(Rational(7, 2)) == 4);
    REQUIRE(ratCeil(Rational(-7, 2)) == -3);
    REQUIRE(ratCeil(Rational(4)) == 4);

    SECTION("exact halves round towards +infinity") {
        REQUIRE(roundHalfUp(Rational(5, 2)) == 3);
        REQUIRE(roundHalfUp(Rational(-5, 2)) == -2);
        REQUIRE(roundHalfUp(Rational(1, 2)) == 1);
    }
    SECTION("non-halves round to the nearest integer") {
        REQUIRE(roundHalfUp(Rational(6, 5)) == 1);
        REQUIRE(roundHalfUp(Rational(9, 5)) == 2);
        REQUIRE(roundHalfUp(Rational(-6, 5)) == -1);
        REQUIRE(roundHalfUp(Rational(3)) == 3);
    }
}

TEST_CASE("integrality probe", "[rational]") {
    REQUIRE(isIntegral(Rational(4, 2)));
    REQUIRE_FALSE(isIntegral(Rational(1, 3)));
}
