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
#include <map>
#include <optional>
#include <vector>

#include "pgen/blockcount.hpp"
#include "pgen/rational.hpp"

namespace pgen {

/// Poisson law with mean lambda. The exact rational is kept when known.
struct PoissonLaw {
    double lambda;
    std::optional<Rational> exact;

    explicit PoissonLaw(double mean);
    explicit PoissonLaw(const Rational& mean);

    double pmf(std::uint64_t i) const;
    /// P(X > i), evaluated through the regularized incomplete gamma function.
    double tail_above(std::uint64_t i) const;
};

/// Finite-support law i -> mass[i] / denominator, exact. Masses sum to the
/// denominator.
class EmpiricalLaw {
public:
    EmpiricalLaw(std::uint64_t denominator, std::map<std::uint64_t, std::uint64_t> mass);

    /// The law of M_k^x(S) under a uniformly drawn word: table[i] / b^k.
    static EmpiricalLaw from(const CountsOfCounts& coc);

    std::uint64_t denominator() const noexcept { return denominator_; }
    const std::map<std::uint64_t, std::uint64_t>& mass() const noexcept { return mass_; }

    Rational exact(std::uint64_t i) const;
    double prob(std::uint64_t i) const;
    /// Largest i with non-zero mass.
    std::uint64_t support_max() const;
    /// Σ i * P(i), as a double.
    double mean() const;

private:
    std::uint64_t denominator_;
    std::map<std::uint64_t, std::uint64_t> mass_;
};

/// e^{-lambda} lambda^i / i!, evaluated in log space.
double poisson_pmf(double lambda, std::uint64_t i);

/// C(N, i) p^i (1-p)^{N-i}.
double binomial_pmf(std::uint64_t n, double p, std::uint64_t i);

/// Total variation distance; the Poisson mass above the empirical support is
/// included analytically.
double tv_distance(const EmpiricalLaw& e, const PoissonLaw& p);
double tv_distance(const EmpiricalLaw& a, const EmpiricalLaw& b);

struct Deviation {
    std::uint64_t i;
    double value;
};

/// Largest |e(i) - pmf(i)| over i in [lo, hi]; ties go to the smaller i.
Deviation sup_deviation(const EmpiricalLaw& e, const PoissonLaw& p, std::uint64_t lo,
                        std::uint64_t hi);

/// Default comparison range 0 .. max(8, support max).
Deviation sup_deviation(const EmpiricalLaw& e, const PoissonLaw& p);

struct KallenbergRow {
    unsigned k;
    std::uint64_t positions;
    Rational mean_count;    // Σ_ω counts[ω] / b^k
    Rational s_measure;     // |S|
    double mean_gap;        // mean_count - |S|
    Rational zero_prob;     // μ^k(M_k^x(S) = 0)
    double poisson_zero;    // e^{-|S|}
    double zero_gap;        // zero_prob - e^{-|S|}
};

/// Both conditions of the point-process convergence criterion, per k.
std::vector<KallenbergRow> kallenberg_diagnostic(SymbolSource& source, const IntervalUnion& s,
                                                 std::span<const unsigned> ks,
                                                 const CountOptions& opts = {});

struct ContinuityGap {
    double gap;    // d_TV between the empirical laws at lambda and lambda'
    double bound;  // lambda' - lambda + 2 b^{-k}
};

ContinuityGap lambda_continuity_gap(SymbolSource& source, unsigned k, const Rational& lambda,
                                    const Rational& lambda_prime, const CountOptions& opts = {});

}  // namespace pgen
