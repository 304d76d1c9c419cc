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

#include "pgen/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pgen/error.hpp"

namespace pgen {

namespace {

// exp(x) for x below this is a denormal-free zero.
const double kLogTrueMin = std::log(std::numeric_limits<double>::denorm_min());

BoundValue exp_bound(double log_value) {
    BoundValue v;
    v.value = std::exp(log_value);
    v.underflow = log_value < kLogTrueMin;
    return v;
}

double pow_b(unsigned b, unsigned k) { return std::pow(static_cast<double>(b), static_cast<double>(k)); }

void require_k(unsigned k) {
    if (k < 1) throw_usage("k must be >= 1");
}

}  // namespace

double janson_tv_bound(const Rational& s_measure, std::uint64_t n, unsigned b, unsigned k) {
    require_k(k);
    if (!s_measure.is_positive()) throw_usage("janson bound needs |S| > 0");
    if (n < 1) throw_usage("janson bound needs n >= 1 intervals");
    const double words = pow_b(b, k);
    const double positions = s_measure.to_double() * words + static_cast<double>(n);
    return positions / words / words * (1.0 + 4.0 * k);
}

std::uint64_t dependency_edges(const PositionSet& positions, unsigned k) {
    const auto& runs = positions.runs();
    std::uint64_t edges = 0;
    for (unsigned d = 1; d < k; ++d) {
        // pairs (i, i + d) with both ends in P
        for (const auto& a : runs) {
            for (const auto& c : runs) {
                std::uint64_t lo = std::max(a.lo + d, c.lo);
                std::uint64_t hi = std::min(a.hi + d, c.hi);
                if (lo <= hi) edges += hi - lo + 1;
            }
        }
    }
    return 2 * edges;
}

double janson_shell(const IntervalUnion& s, unsigned b, unsigned k) {
    require_k(k);
    PositionSet positions = positions_from_interval_union(s, b, k);
    const double inv_words = 1.0 / pow_b(b, k);
    const double p2 = inv_words * inv_words;
    const double measure = s.measure().to_double();
    const double scale = std::min(1.0, 1.0 / measure);
    const double singles = static_cast<double>(positions.total()) * p2;
    const double pairs = static_cast<double>(dependency_edges(positions, k)) * (p2 + p2);
    return scale * (singles + pairs);
}

AnnealedBound annealed_tv_bound(const Rational& lambda, unsigned b, unsigned k) {
    require_k(k);
    if (!lambda.is_positive()) throw_usage("lambda must be positive");
    double v = (lambda.to_double() + 1.0) * 5.0 * k / pow_b(b, k);
    return {v, v < 1.0 / k};
}

double mcdiarmid_bound(std::uint64_t n, double c, double t) {
    if (n < 1) throw_usage("McDiarmid bound needs N >= 1");
    if (!(c > 0)) throw_usage("McDiarmid bound needs c > 0");
    if (!(t >= 0)) throw_usage("McDiarmid bound needs t >= 0");
    return 2.0 * std::exp(-2.0 * t * t / (static_cast<double>(n) * c * c));
}

QuenchedParameters quenched_parameters(const Rational& s_measure, std::uint64_t n_intervals,
                                       unsigned b, unsigned k) {
    require_k(k);
    std::uint64_t words = checked_pow(b, k);
    auto covered = static_cast<std::uint64_t>(s_measure.ceil_mul(words));
    return {covered + n_intervals * k, static_cast<double>(k) / static_cast<double>(words),
            1.0 / k};
}

double quenched_series_term(const Rational& s_measure, std::uint64_t n_intervals, unsigned b,
                            unsigned k) {
    require_k(k);
    const double words = pow_b(b, k);
    const double k4 = std::pow(static_cast<double>(k), 4.0);
    const double denom = s_measure.to_double() + 2.0 * static_cast<double>(n_intervals) * k / words;
    return 2.0 * std::exp(-words / k4 / denom);
}

TailBound tail_bound(unsigned b, const Rational& lambda, unsigned k) {
    require_k(k);
    if (!lambda.is_positive()) throw_usage("lambda must be positive");
    const double lam = lambda.to_double();
    const double log_term = std::ceil(2.0 * std::log2(lam + 1.0));
    const unsigned k0 = static_cast<unsigned>(std::max(24.0, log_term));
    const double k4 = std::pow(static_cast<double>(k), 4.0);
    TailBound tb{k0, exp_bound(-2.0 * pow_b(b, k) / (lam * k4))};
    tb.bound.not_asserted = k < k0;
    return tb;
}

BoundValue o_k_measure_bound(unsigned b, unsigned k) {
    require_k(k);
    const double dk = static_cast<double>(k);
    const double log_value = std::log(2.0) + dk * std::log(static_cast<double>(b)) +
                             3.0 * std::log(dk) - 2.0 * pow_b(b, k) / std::pow(dk, 5.0);
    BoundValue v = exp_bound(log_value);
    v.not_asserted = k < 24;
    return v;
}

std::vector<double> o_k_partial_sums(unsigned b, unsigned k_max) {
    std::vector<double> sums;
    double acc = 0.0;
    for (unsigned k = 24; k <= k_max; ++k) {
        acc += o_k_measure_bound(b, k).value;
        sums.push_back(acc);
    }
    return sums;
}

}  // namespace pgen
