/*
   Copyright 2026 The pgen Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <random>

#include "doctest.h"
#include "pgen/error.hpp"
#include "pgen/rational.hpp"

using pgen::Error;
using pgen::Rational;

TEST_CASE("reduction and sign") {
    Rational r(6, -4);
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, 7).den() == 1);
    CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("parse") {
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("4") == Rational(4));
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("1.5") == Rational(3, 2));
    CHECK(Rational::parse(" 10/4 ") == Rational(5, 2));
    CHECK_THROWS_AS(Rational::parse(""), Error);
    CHECK_THROWS_AS(Rational::parse("1/0"), Error);
    CHECK_THROWS_AS(Rational::parse("abc"), Error);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), Error);
    CHECK(Rational(3, 2).str() == "3/2");
    CHECK(Rational(2).str() == "2/1");
}

TEST_CASE("arithmetic and ordering") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
    const std::int64_t big = std::int64_t{1} << 62;
    CHECK_THROWS_AS(Rational(big) * Rational(big), Error);
}

TEST_CASE("floor and ceil of products") {
    CHECK(Rational(1, 3).floor_mul(8) == 2);
    CHECK(Rational(1, 3).ceil_mul(8) == 3);
    CHECK(Rational(1, 2).floor_mul(8) == 4);
    CHECK(Rational(1, 2).ceil_mul(8) == 4);
    CHECK(Rational(-1, 3).floor_mul(8) == -3);
    CHECK(Rational(-1, 3).ceil_mul(8) == -2);
    std::mt19937_64 gen(1);
    for (int t = 0; t < 2000; ++t) {
        std::int64_t p = static_cast<std::int64_t>(gen() % 2001) - 1000;
        std::int64_t q = 1 + static_cast<std::int64_t>(gen() % 1000);
        std::uint64_t m = gen() % 100000;
        Rational r(p, q);
        std::int64_t f = r.floor_mul(m);
        std::int64_t c = r.ceil_mul(m);
        // f <= p*m/q < f+1 and c-1 < p*m/q <= c
        __int128 pm = static_cast<__int128>(r.num()) * static_cast<__int128>(m);
        CHECK(static_cast<__int128>(f) * r.den() <= pm);
        CHECK(static_cast<__int128>(f + 1) * r.den() > pm);
        CHECK(static_cast<__int128>(c) * r.den() >= pm);
        CHECK(static_cast<__int128>(c - 1) * r.den() < pm);
    }
}

TEST_CASE("checked_pow") {
    CHECK(pgen::checked_pow(2, 10) == 1024);
    CHECK(pgen::checked_pow(10, 0) == 1);
    CHECK(pgen::checked_pow(3, 39) == 4052555153018976267ull);
    CHECK_THROWS_AS(pgen::checked_pow(2, 63), Error);
    CHECK_THROWS_AS(pgen::checked_pow(2, 11, 1000), Error);
}
