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

#include "pgen/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "pgen/error.hpp"

namespace pgen {

namespace {

// Below this log-probability a Poisson term is zero in double precision.
constexpr double kLogNegligible = -750.0;

constexpr double kLn2Pi = 1.8378770664093454836;

// log(n!) - [(n + 1/2) log n - n + log sqrt(2 pi)], the Stirling remainder.
double stirlerr(double n) {
    constexpr double s0 = 1.0 / 12;
    constexpr double s1 = 1.0 / 360;
    constexpr double s2 = 1.0 / 1260;
    constexpr double s3 = 1.0 / 1680;
    constexpr double s4 = 1.0 / 1188;
    if (n <= 15.0) {
        return boost::math::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - 0.5 * kLn2Pi;
    }
    const double nn = n * n;
    if (n > 500) return (s0 - s1 / nn) / n;
    if (n > 80) return (s0 - (s1 - s2 / nn) / nn) / n;
    if (n > 35) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// Deviance x log(x/m) + m - x, given d = x - m computed by the caller.
double bd0(double x, double m, double d) {
    if (std::abs(d) < 0.1 * (x + m)) {
        const double v = d / (x + m);
        double s = d * v;
        double ej = 2 * x * v;
        const double v2 = v * v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v2;
            const double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
        return s;
    }
    return x * std::log(x / m) - d;
}

double log_poisson_pmf(double lambda, std::uint64_t i) {
    if (i == 0) return -lambda;
    const double x = static_cast<double>(i);
    return -stirlerr(x) - bd0(x, lambda, x - lambda) - 0.5 * (kLn2Pi + std::log(x));
}

}  // namespace

double poisson_pmf(double lambda, std::uint64_t i) {
    if (!(lambda > 0)) throw_usage("poisson lambda must be positive");
    return std::exp(log_poisson_pmf(lambda, i));
}

double binomial_pmf(std::uint64_t n, double p, std::uint64_t i) {
    if (i > n) throw_usage("binomial_pmf requires i <= N");
    if (!(p >= 0.0 && p <= 1.0)) throw_usage("binomial_pmf requires 0 <= p <= 1");
    if (p == 0.0) return i == 0 ? 1.0 : 0.0;
    if (p == 1.0) return i == n ? 1.0 : 0.0;
    const double dn = static_cast<double>(n);
    if (i == 0) return std::exp(dn * std::log1p(-p));
    if (i == n) return std::exp(dn * std::log(p));
    const double x = static_cast<double>(i);
    const double np = dn * p;
    const double nq = dn * (1.0 - p);
    const double d = x - np;
    const double lc = stirlerr(dn) - stirlerr(x) - stirlerr(dn - x) - bd0(x, np, d) -
                      bd0(dn - x, nq, -d);
    const double lf = kLn2Pi + std::log(x) + std::log1p(-x / dn);
    return std::exp(lc - 0.5 * lf);
}

PoissonLaw::PoissonLaw(double mean) : lambda(mean) {
    if (!(mean > 0)) throw_usage("poisson lambda must be positive");
}

PoissonLaw::PoissonLaw(const Rational& mean) : lambda(mean.to_double()), exact(mean) {
    if (!mean.is_positive()) throw_usage("poisson lambda must be positive");
}

double PoissonLaw::pmf(std::uint64_t i) const { return poisson_pmf(lambda, i); }

double PoissonLaw::tail_above(std::uint64_t i) const {
    return boost::math::gamma_p(static_cast<double>(i) + 1.0, lambda);
}

EmpiricalLaw::EmpiricalLaw(std::uint64_t denominator, std::map<std::uint64_t, std::uint64_t> mass)
    : denominator_(denominator), mass_(std::move(mass)) {
    if (denominator_ == 0) throw_usage("empirical law with zero denominator");
    std::erase_if(mass_, [](const auto& kv) { return kv.second == 0; });
    uint128 sum = 0;
    for (const auto& [i, m] : mass_) sum += m;
    if (sum != denominator_) throw_usage("empirical law masses do not sum to the denominator");
}

EmpiricalLaw EmpiricalLaw::from(const CountsOfCounts& coc) {
    return EmpiricalLaw(coc.words(), coc.table());
}

Rational EmpiricalLaw::exact(std::uint64_t i) const {
    auto it = mass_.find(i);
    std::uint64_t m = it == mass_.end() ? 0 : it->second;
    return Rational(static_cast<std::int64_t>(m), static_cast<std::int64_t>(denominator_));
}

double EmpiricalLaw::prob(std::uint64_t i) const {
    auto it = mass_.find(i);
    if (it == mass_.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(denominator_);
}

std::uint64_t EmpiricalLaw::support_max() const {
    return mass_.empty() ? 0 : mass_.rbegin()->first;
}

double EmpiricalLaw::mean() const {
    long double acc = 0;
    for (const auto& [i, m] : mass_) acc += static_cast<long double>(i) * m;
    return static_cast<double>(acc / denominator_);
}

double tv_distance(const EmpiricalLaw& e, const PoissonLaw& p) {
    const std::uint64_t i_max = e.support_max();
    // First index past the mode where the pmf is negligible.
    std::uint64_t i_cut = static_cast<std::uint64_t>(p.lambda) + 1;
    while (log_poisson_pmf(p.lambda, i_cut) > kLogNegligible) ++i_cut;

    double sum = 0.0;
    const std::uint64_t dense_end = std::min(i_max, i_cut);
    for (std::uint64_t i = 0; i <= dense_end; ++i) sum += std::abs(e.prob(i) - p.pmf(i));
    for (auto it = e.mass().upper_bound(dense_end); it != e.mass().end(); ++it) {
        sum += e.prob(it->first);
    }
    sum += p.tail_above(i_max);
    return std::clamp(0.5 * sum, 0.0, 1.0);
}

double tv_distance(const EmpiricalLaw& a, const EmpiricalLaw& b) {
    const uint128 da = a.denominator();
    const uint128 db = b.denominator();
    uint128 num = 0;
    auto ia = a.mass().begin();
    auto ib = b.mass().begin();
    while (ia != a.mass().end() || ib != b.mass().end()) {
        uint128 ma = 0;
        uint128 mb = 0;
        if (ib == b.mass().end() || (ia != a.mass().end() && ia->first < ib->first)) {
            ma = (ia++)->second;
        } else if (ia == a.mass().end() || ib->first < ia->first) {
            mb = (ib++)->second;
        } else {
            ma = (ia++)->second;
            mb = (ib++)->second;
        }
        uint128 x = ma * db;
        uint128 y = mb * da;
        num += x > y ? x - y : y - x;
    }
    long double v = static_cast<long double>(num) / (2.0L * static_cast<long double>(da * db));
    return static_cast<double>(v);
}

Deviation sup_deviation(const EmpiricalLaw& e, const PoissonLaw& p, std::uint64_t lo,
                        std::uint64_t hi) {
    if (hi < lo) throw_usage("sup_deviation over an empty range");
    Deviation best{lo, -1.0};
    for (std::uint64_t i = lo; i <= hi; ++i) {
        double d = std::abs(e.prob(i) - p.pmf(i));
        if (d > best.value) best = {i, d};
    }
    return best;
}

Deviation sup_deviation(const EmpiricalLaw& e, const PoissonLaw& p) {
    return sup_deviation(e, p, 0, std::max<std::uint64_t>(8, e.support_max()));
}

std::vector<KallenbergRow> kallenberg_diagnostic(SymbolSource& source, const IntervalUnion& s,
                                                 std::span<const unsigned> ks,
                                                 const CountOptions& opts) {
    const unsigned b = source.alphabet().size();
    const Rational measure = s.measure();
    const double poisson_zero = std::exp(-measure.to_double());
    std::vector<KallenbergRow> rows;
    for (unsigned k : ks) {
        PositionSet positions = positions_from_interval_union(s, b, k);
        BlockHistogram h = count_blocks(source, k, positions, opts);
        const auto words = static_cast<std::int64_t>(h.words());
        KallenbergRow row{k,
                          positions.total(),
                          Rational(static_cast<std::int64_t>(h.total()), words),
                          measure,
                          0.0,
                          Rational(static_cast<std::int64_t>(h.words() - h.distinct()), words),
                          poisson_zero,
                          0.0};
        row.mean_gap = (row.mean_count - measure).to_double();
        row.zero_gap = row.zero_prob.to_double() - poisson_zero;
        rows.push_back(row);
    }
    return rows;
}

ContinuityGap lambda_continuity_gap(SymbolSource& source, unsigned k, const Rational& lambda,
                                    const Rational& lambda_prime, const CountOptions& opts) {
    if (lambda_prime < lambda) throw_usage("lambda_continuity_gap requires lambda <= lambda'");
    const Rational pair[2] = {lambda, lambda_prime};
    auto snaps = incremental_lambda_sweep(source, k, pair, opts);
    double words = static_cast<double>(snaps[0].words());
    return {tv_distance(EmpiricalLaw::from(snaps[0]), EmpiricalLaw::from(snaps[1])),
            (lambda_prime - lambda).to_double() + 2.0 / words};
}

}  // namespace pgen
