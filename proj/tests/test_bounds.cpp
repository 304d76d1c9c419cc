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

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pgen/bounds.hpp"
#include "pgen/error.hpp"

using namespace pgen;
using oracle::Quad;
using oracle::qpow;
using oracle::quad_annealed;
using oracle::quad_janson;
using oracle::quad_o_k;

namespace {

double rel_err(double got, const Quad& want) {
    return static_cast<double>(boost::multiprecision::abs((Quad(got) - want) / want));
}

std::uint64_t brute_edges(const std::vector<std::uint64_t>& pos, unsigned k) {
    std::uint64_t e = 0;
    for (auto i : pos) {
        for (auto j : pos) {
            if (i != j && (i > j ? i - j : j - i) < k) ++e;
        }
    }
    return e;
}

}  // namespace

TEST_CASE("janson closed form") {
    CHECK(janson_tv_bound(Rational(1), 1, 2, 10) == doctest::Approx(1025.0 * 41.0 / 1048576.0).epsilon(1e-15));
    CHECK(janson_tv_bound(Rational(1), 1, 2, 10) == doctest::Approx(0.040078163146972656).epsilon(1e-15));
    CHECK_THROWS_AS(janson_tv_bound(Rational(1), 0, 2, 10), Error);
    CHECK_THROWS_AS(janson_tv_bound(Rational(0), 1, 2, 10), Error);
    for (unsigned b : {2u, 3u, 10u}) {
        for (const Rational& s : {Rational(1, 3), Rational(1), Rational(7, 2)}) {
            for (std::uint64_t n : {1ull, 3ull}) {
                for (unsigned k = 5; k < 30; ++k) {
                    CHECK(janson_tv_bound(s, n, b, k + 1) < janson_tv_bound(s, n, b, k));
                }
            }
        }
    }
}

TEST_CASE("janson shell") {
    // P = 1..8; ordered pairs at distance 1 or 2: 2 * (7 + 6)
    CHECK(dependency_edges(PositionSet::range(1, 8), 3) == 26);
    CHECK(janson_shell(IntervalUnion::parse("(0,1]"), 2, 3) == doctest::Approx(60.0 / 64.0).epsilon(1e-15));
    CHECK(dependency_edges(PositionSet(), 3) == 0);
    CHECK(dependency_edges(PositionSet::range(1, 8), 1) == 0);

    std::mt19937_64 gen(4);
    for (int t = 0; t < 200; ++t) {
        std::vector<PositionRun> runs;
        std::uint64_t at = 1 + gen() % 5;
        for (int r = 0; r < 4; ++r) {
            std::uint64_t hi = at + gen() % 6;
            runs.push_back({at, hi});
            at = hi + 2 + gen() % 6;
        }
        PositionSet ps(runs);
        unsigned k = 1 + static_cast<unsigned>(gen() % 7);
        CHECK(dependency_edges(ps, k) == brute_edges(oracle::expand(ps), k));
    }

    for (const char* text : {"(0,1]", "(0,1/2]", "(0,1]u(3/2,2]", "[1/3,5/2)", "(1/4,1/2]u(3,4]"}) {
        auto s = IntervalUnion::parse(text);
        for (unsigned b : {2u, 3u}) {
            for (unsigned k = 2; k <= 10; ++k) {
                CHECK(janson_shell(s, b, k) <= janson_tv_bound(s.measure(), s.size(), b, k));
            }
        }
    }
}

TEST_CASE("overlap identity by exhaustive enumeration") {
    auto t = oracle::overlap_tally(3, 9, 1, 2);
    CHECK(t.pairs == 4096);
    CHECK(Rational(static_cast<std::int64_t>(t.joint), static_cast<std::int64_t>(t.pairs)) == Rational(1, 64));
    CHECK(Rational(static_cast<std::int64_t>(t.first), static_cast<std::int64_t>(t.pairs)) == Rational(1, 8));
    // non-overlapping positions are also independent
    auto far = oracle::overlap_tally(3, 9, 1, 5);
    CHECK(Rational(static_cast<std::int64_t>(far.joint), static_cast<std::int64_t>(far.pairs)) == Rational(1, 64));
}

TEST_CASE("annealed bound") {
    auto a = annealed_tv_bound(Rational(1), 2, 24);
    CHECK(a.value == doctest::Approx(240.0 / 16777216.0).epsilon(1e-15));
    CHECK(a.value == doctest::Approx(1.43051147e-5).epsilon(1e-8));
    CHECK(a.below_one_over_k);
    auto small = annealed_tv_bound(Rational(1), 2, 4);
    CHECK(small.value == 2.5);
    CHECK_FALSE(small.below_one_over_k);
    double base = annealed_tv_bound(Rational(1), 3, 7).value;
    CHECK(annealed_tv_bound(Rational(3), 3, 7).value == doctest::Approx(2 * base).epsilon(1e-15));
    CHECK_THROWS_AS(annealed_tv_bound(Rational(0), 2, 4), Error);
}

TEST_CASE("mcdiarmid bound") {
    CHECK(mcdiarmid_bound(5, 0.3, 0.0) == 2.0);
    CHECK(mcdiarmid_bound(100, 0.1, 0.1) == doctest::Approx(2 * std::exp(-0.02)).epsilon(1e-15));
    for (double t : {0.01, 0.05, 0.1, 0.3}) {
        double half = mcdiarmid_bound(100, 0.1, t) / 2;
        CHECK(mcdiarmid_bound(100, 0.1, 2 * t) == doctest::Approx(2 * std::pow(half, 4)).epsilon(1e-12));
    }
    double prev = 3;
    for (double t = 0; t < 2; t += 0.05) {
        double v = mcdiarmid_bound(50, 0.2, t);
        CHECK(v <= prev);
        prev = v;
    }
    prev = 0;
    for (double c = 0.01; c < 2; c += 0.05) {
        double v = mcdiarmid_bound(50, c, 0.5);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK_THROWS_AS(mcdiarmid_bound(0, 0.1, 0.1), Error);
    CHECK_THROWS_AS(mcdiarmid_bound(1, 0.0, 0.1), Error);
    CHECK_THROWS_AS(mcdiarmid_bound(1, 0.1, -0.1), Error);
}

TEST_CASE("quenched parameters") {
    auto p = quenched_parameters(Rational(1), 1, 2, 10);
    CHECK(p.n == 1034);
    CHECK(p.c == 10.0 / 1024.0);
    CHECK(p.t == 0.1);
    CHECK(quenched_parameters(Rational(1, 1 << 20), 1, 2, 10).n == 1 + 10);
    for (unsigned k = 8; k <= 30; ++k) {
        for (const Rational& s : {Rational(1), Rational(3, 2), Rational(1, 7)}) {
            auto qp = quenched_parameters(s, 2, 2, k);
            double m = mcdiarmid_bound(qp.n, qp.c, qp.t);
            double series = quenched_series_term(s, 2, 2, k);
            // the McDiarmid exponent is between 1 and 4 times the series exponent
            CHECK(m <= series);
            if (series < 2 && m > 0) {
                double ratio = std::log(m / 2) / std::log(series / 2);
                CHECK(ratio >= 1.0 - 1e-9);
                CHECK(ratio <= 4.0 + 1e-9);
            }
        }
    }
}

TEST_CASE("tail bound") {
    auto t1 = tail_bound(2, Rational(1), 24);
    CHECK(t1.k0 == 24);
    CHECK_FALSE(t1.bound.not_asserted);
    CHECK(tail_bound(2, Rational(7), 24).k0 == 24);
    CHECK(tail_bound(2, Rational(1 << 20), 24).k0 == 41);
    Quad want = boost::multiprecision::exp(-2 * qpow(2, 24) / (Quad(24) * 24 * 24 * 24));
    CHECK(rel_err(t1.bound.value, want) < 1e-12);
    CHECK(t1.bound.value > 1.19e-44);
    CHECK(t1.bound.value < 1.20e-44);
    CHECK(tail_bound(2, Rational(1), 10).bound.not_asserted);
    auto tiny = tail_bound(2, Rational(1), 40);
    CHECK(tiny.bound.value == 0.0);
    CHECK(tiny.bound.underflow);
    for (unsigned b : {2u, 3u}) {
        for (const Rational& lam : {Rational(1, 2), Rational(1), Rational(5)}) {
            double prev = 1;
            for (unsigned k = 24; k <= 40; ++k) {
                double v = tail_bound(b, lam, k).bound.value;
                CHECK(v <= prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("o_k measure bound") {
    auto v = o_k_measure_bound(2, 24);
    CHECK_FALSE(v.not_asserted);
    CHECK(rel_err(v.value, quad_o_k(2, 24)) < 1e-12);
    CHECK(v.value == doctest::Approx(6859149116.4972696).epsilon(1e-12));
    CHECK(o_k_measure_bound(2, 23).not_asserted);
    double prev = o_k_measure_bound(2, 30).value;
    for (unsigned k = 31; k <= 60; ++k) {
        double cur = o_k_measure_bound(2, k).value;
        CHECK(cur <= prev);
        prev = cur;
    }
    for (unsigned k = 30; k <= 40; ++k) {
        auto two = o_k_measure_bound(2, k);
        auto three = o_k_measure_bound(3, k);
        if (two.value > 0) {
            CHECK(three.value < two.value);
        } else {
            CHECK(three.value == 0.0);
            CHECK(three.underflow);
        }
    }
    auto sums = o_k_partial_sums(2, 30);
    REQUIRE(sums.size() == 7);
    CHECK(sums[0] == v.value);
    CHECK(sums[6] == doctest::Approx(sums[5] + o_k_measure_bound(2, 30).value));
    CHECK(o_k_partial_sums(2, 20).empty());
}

TEST_CASE("bounds agree with the quad oracle on a grid") {
    int checked = 0;
    const std::vector<Rational> lambdas = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(5)};
    for (unsigned b : {2u, 3u, 10u}) {
        for (unsigned k : {4u, 6u, 9u, 12u, 16u, 20u, 24u, 28u}) {
            if (b == 10 && k > 16) continue;
            const Rational& s = lambdas[(b + k) % lambdas.size()];
            std::uint64_t n = 1 + (k % 3);
            INFO("b=" << b << " k=" << k);
            CHECK(rel_err(janson_tv_bound(s, n, b, k), quad_janson(s, n, b, k)) < 1e-12);
            CHECK(rel_err(annealed_tv_bound(s, b, k).value, quad_annealed(s, b, k)) < 1e-12);
            checked += 2;
        }
    }
    for (unsigned b : {2u, 3u}) {
        for (unsigned k = 24; k <= 40; ++k) {
            Quad want = quad_o_k(b, k);
            if (want < Quad(1e-280)) continue;
            INFO("b=" << b << " k=" << k);
            CHECK(rel_err(o_k_measure_bound(b, k).value, want) < 1e-12);
            ++checked;
        }
    }
    CHECK(checked >= 50);
}
