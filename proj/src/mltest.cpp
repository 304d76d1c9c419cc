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

#include "pgen/mltest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pgen/error.hpp"
#include "pgen/stats.hpp"

namespace pgen {

RationalGrid enumerate_L_k(unsigned k) {
    if (k < 1) throw_usage("L_k needs k >= 1");
    RationalGrid grid{k, {}};
    for (std::int64_t q = 1; q <= k; ++q) {
        for (std::int64_t p = 1; p < static_cast<std::int64_t>(k) * q; ++p) {
            if (std::gcd(p, q) == 1) grid.values.emplace_back(p, q);
        }
    }
    std::sort(grid.values.begin(), grid.values.end());
    return grid;
}

std::uint64_t o_k_required_prefix(unsigned b, unsigned k) {
    if (k < 2) return 0;
    std::uint64_t words = word_space(b, k);
    Rational top(static_cast<std::int64_t>(k) * k - 1, k);  // max L_k = k - 1/k
    return static_cast<std::uint64_t>(top.floor_mul(words)) + k - 1;
}

BadCheck bad_membership(std::span<const Symbol> prefix, Alphabet alphabet, unsigned k,
                        const Rational& lambda, std::uint64_t i) {
    const std::uint64_t words = word_space(alphabet.size(), k);
    const std::uint64_t needed = lambda_threshold(lambda, words) + k - 1;
    if (prefix.size() < needed) {
        throw_usage("prefix too short for Bad(" + lambda.str() + ", " + std::to_string(k) +
                    ", i): need " + std::to_string(needed) + " symbols, have " +
                    std::to_string(prefix.size()));
    }
    auto src = memory_source({prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(needed)},
                             alphabet, "prefix");
    Rational z = z_statistic(*src, k, lambda, i);
    double deviation = std::abs(z.to_double() - poisson_pmf(lambda.to_double(), i));
    return {deviation > 2.0 / k, deviation, z};
}

namespace {

void check_caps(unsigned b, unsigned k, const MlCaps& caps) {
    const std::uint64_t words = word_space(b, k);
    if (words > caps.max_words) {
        throw_resource("O_k check at b=" + std::to_string(b) + ", k=" + std::to_string(k) +
                       " exceeds the word cap " + std::to_string(caps.max_words) +
                       "; largest feasible k is " + std::to_string(largest_feasible_k(b, caps)));
    }
    const std::uint64_t need = o_k_required_prefix(b, k);
    if (need > caps.max_prefix) {
        throw_resource("O_k check at k=" + std::to_string(k) + " needs a prefix of " +
                       std::to_string(need) + " symbols, above the cap " +
                       std::to_string(caps.max_prefix) + "; largest feasible k is " +
                       std::to_string(largest_feasible_k(b, caps)));
    }
}

// Witnesses for one lambda from its counts-of-counts snapshot.
void collect_witnesses(const CountsOfCounts& coc, const Rational& lambda, unsigned k,
                       std::vector<BadWitness>& out) {
    const double threshold = 2.0 / k;
    const std::uint64_t last_i = coc.words() - 1;  // J_k = {0, ..., b^k - 1}
    const double lam = lambda.to_double();
    const double words = static_cast<double>(coc.words());
    std::vector<BadWitness> found;

    // Counts that actually occur.
    for (const auto& [i, n] : coc.table()) {
        if (n == 0 || i > last_i) continue;
        double dev = std::abs(static_cast<double>(n) / words - poisson_pmf(lam, i));
        if (dev > threshold) found.push_back({lambda, i, dev, threshold});
    }
    // Counts with empirical mass 0 deviate by pmf(i); the pmf is unimodal,
    // so the i with pmf(i) > 2/k form an interval around the mode.
    const auto mode = static_cast<std::uint64_t>(std::floor(lam));
    if (poisson_pmf(lam, mode) > threshold) {
        std::uint64_t lo = mode;
        while (lo > 0 && poisson_pmf(lam, lo - 1) > threshold) --lo;
        std::uint64_t hi = mode;
        while (poisson_pmf(lam, hi + 1) > threshold) ++hi;
        for (std::uint64_t i = lo; i <= std::min(hi, last_i); ++i) {
            if (coc.at(i) == 0) found.push_back({lambda, i, poisson_pmf(lam, i), threshold});
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.i < b.i; });
    out.insert(out.end(), found.begin(), found.end());
}

}  // namespace

unsigned largest_feasible_k(unsigned b, const MlCaps& caps) {
    unsigned best = 0;
    for (unsigned k = 1; k < 64; ++k) {
        std::uint64_t words;
        try {
            words = word_space(b, k);
        } catch (const Error&) {
            break;
        }
        if (words > caps.max_words || o_k_required_prefix(b, k) > caps.max_prefix) break;
        best = k;
    }
    return best;
}

OkResult o_k_membership(SymbolSource& source, unsigned k, const MlCaps& caps) {
    if (k < 1) throw_usage("O_k needs k >= 1");
    const unsigned b = source.alphabet().size();
    OkResult result;
    result.k = k;
    RationalGrid grid = enumerate_L_k(k);
    if (grid.values.empty()) return result;  // L_1 is empty
    check_caps(b, k, caps);

    auto snapshots = incremental_lambda_sweep(source, k, grid.values, caps.count);
    for (std::size_t t = 0; t < grid.values.size(); ++t) {
        collect_witnesses(snapshots[t], grid.values[t], k, result.witnesses);
    }
    result.prefix_used = o_k_required_prefix(b, k);
    result.member = !result.witnesses.empty();
    return result;
}

OkResult o_k_membership(std::span<const Symbol> prefix, Alphabet alphabet, unsigned k,
                        const MlCaps& caps) {
    const std::uint64_t need = o_k_required_prefix(alphabet.size(), k);
    if (prefix.size() < need) {
        throw_usage("prefix too short for O_" + std::to_string(k) + ": need " +
                    std::to_string(need) + " symbols, have " + std::to_string(prefix.size()));
    }
    auto src = memory_source({prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(need)},
                             alphabet, "prefix");
    return o_k_membership(*src, k, caps);
}

TmReport t_m_report(SymbolSource& source, unsigned m, unsigned k_max, const MlCaps& caps) {
    if (m < 1) throw_usage("T_m needs m >= 1");
    TmReport report;
    report.m = m;
    report.k_first = m + kTailOffset;
    report.k_max = k_max;
    if (k_max < report.k_first) {
        report.verdict = "no k examined";
        return report;
    }
    const unsigned b = source.alphabet().size();
    for (unsigned k = report.k_first; k <= k_max; ++k) check_caps(b, k, caps);
    for (unsigned k = report.k_first; k <= k_max; ++k) {
        report.rows.push_back(o_k_membership(source, k, caps));
        report.member = report.member || report.rows.back().member;
    }
    if (report.member) {
        auto hit = std::find_if(report.rows.begin(), report.rows.end(),
                                [](const OkResult& r) { return r.member; });
        report.verdict = "member of T_" + std::to_string(m) + " (first witness at k=" +
                         std::to_string(hit->k) + ")";
    } else {
        report.verdict = "PARTIAL: no O_k membership for k in [" +
                         std::to_string(report.k_first) + ", " + std::to_string(k_max) +
                         "]; this does not certify non-membership in T_" + std::to_string(m);
    }
    return report;
}

}  // namespace pgen
