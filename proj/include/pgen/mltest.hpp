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
#include <span>
#include <string>
#include <vector>

#include "pgen/blockcount.hpp"
#include "pgen/rational.hpp"
#include "pgen/seqgen.hpp"

namespace pgen {

/// L_k = { p/q : q in 1..k, p >= 1, p/q < k }, reduced, ascending.
struct RationalGrid {
    unsigned k = 0;
    std::vector<Rational> values;
};

RationalGrid enumerate_L_k(unsigned k);

/// One (lambda, i) for which the empirical law deviates from Poisson(lambda)
/// at i by more than 2/k.
struct BadWitness {
    Rational lambda;
    std::uint64_t i;
    double deviation;
    double threshold;
};

struct BadCheck {
    bool member;
    double deviation;
    Rational empirical;
};

/// Whether a sequence with this prefix lies in Bad(lambda, k, i). Needs at
/// least floor(lambda b^k) + k - 1 symbols.
BadCheck bad_membership(std::span<const Symbol> prefix, Alphabet alphabet, unsigned k,
                        const Rational& lambda, std::uint64_t i);

/// Resource caps for the O_k sweep.
struct MlCaps {
    std::uint64_t max_prefix = std::uint64_t{1} << 31;
    std::uint64_t max_words = std::uint64_t{1} << 16;  // k <= 16 at b = 2
    CountOptions count;
};

/// floor(max(L_k) b^k) + k - 1; zero for k = 1.
std::uint64_t o_k_required_prefix(unsigned b, unsigned k);

struct OkResult {
    unsigned k = 0;
    bool member = false;
    std::uint64_t prefix_used = 0;
    std::vector<BadWitness> witnesses;  // ordered by (lambda, i)
};

/// Membership of the sequence in O_k, the union of Bad(lambda, k, i) over
/// lambda in L_k and i in {0, ..., b^k - 1}. Reads the source from the start.
OkResult o_k_membership(SymbolSource& source, unsigned k, const MlCaps& caps = {});
OkResult o_k_membership(std::span<const Symbol> prefix, Alphabet alphabet, unsigned k,
                        const MlCaps& caps = {});

/// Largest k whose O_k check fits within the caps (0 if none).
unsigned largest_feasible_k(unsigned b, const MlCaps& caps);

inline constexpr unsigned kTailOffset = 24;

/// O_k membership for k in [m + 24, k_max]. Never certifies non-membership
/// in T_m: rows stop at k_max.
struct TmReport {
    unsigned m = 0;
    unsigned k_first = 0;
    unsigned k_max = 0;
    std::vector<OkResult> rows;
    bool member = false;
    std::string verdict;
};

TmReport t_m_report(SymbolSource& source, unsigned m, unsigned k_max, const MlCaps& caps = {});

}  // namespace pgen
