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

#pragma once

#include <cstdint>
#include <vector>

#include "pgen/blockcount.hpp"
#include "pgen/rational.hpp"

namespace pgen {

/// A bound value plus the conditions under which it was produced.
struct BoundValue {
    double value = 0.0;
    bool underflow = false;     // true value is positive but below the double range
    bool not_asserted = false;  // k is outside the range the inequality covers
};

// All bound functions are pure and evaluate in double precision.

/// Closed form (|S| b^k + n) b^{-2k} + (|S| b^k + n) 2k 2 b^{-2k} of the
/// Poisson approximation error for the occurrence count of a uniform word
/// over N ∩ b^k S, S a union of n intervals.
double janson_tv_bound(const Rational& s_measure, std::uint64_t n, unsigned b, unsigned k);

/// The dependency-graph bound before simplification,
///   min{1, 1/|S|} (Σ_j E[I_j]^2 + Σ_{i != j, |i-j| < k} (E[I_i I_j] + E[I_i] E[I_j]))
/// with E[I_j] = b^{-k} and E[I_i I_j] = b^{-2k}, summed over the actual
/// position set N ∩ b^k S.
double janson_shell(const IntervalUnion& s, unsigned b, unsigned k);

/// Number of ordered pairs (i, j), i != j, of positions with |i - j| < k.
std::uint64_t dependency_edges(const PositionSet& positions, unsigned k);

struct AnnealedBound {
    double value;             // (lambda + 1) 5k b^{-k}
    bool below_one_over_k;
};
AnnealedBound annealed_tv_bound(const Rational& lambda, unsigned b, unsigned k);

/// 2 exp(-2 t^2 / (N c^2)).
double mcdiarmid_bound(std::uint64_t n, double c, double t);

struct QuenchedParameters {
    std::uint64_t n;  // ceil(|S| b^k) + n_intervals k
    double c;         // k b^{-k}
    double t;         // 1/k
};
QuenchedParameters quenched_parameters(const Rational& s_measure, std::uint64_t n_intervals,
                                       unsigned b, unsigned k);

/// Summand 2 exp(-k^{-4} b^k (|S| + 2nk b^{-k})^{-1}) of the series whose
/// convergence gives the almost-sure statement.
double quenched_series_term(const Rational& s_measure, std::uint64_t n_intervals, unsigned b,
                            unsigned k);

struct TailBound {
    unsigned k0;      // max{24, ceil(2 log2(lambda + 1))}
    BoundValue bound; // exp(-2 b^k / (lambda k^4)); not_asserted when k < k0
};
TailBound tail_bound(unsigned b, const Rational& lambda, unsigned k);

/// 2 b^k k^3 exp(-2 b^k / k^5); not_asserted when k < 24.
BoundValue o_k_measure_bound(unsigned b, unsigned k);

/// Cumulative sums Σ_{j=24}^{K} o_k_measure_bound(b, j) for K = 24..k_max.
std::vector<double> o_k_partial_sums(unsigned b, unsigned k_max);

}  // namespace pgen
