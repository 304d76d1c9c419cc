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
#include <vector>

#include "pgen/rational.hpp"
#include "pgen/seqgen.hpp"
#include "pgen/stats.hpp"

namespace pgen {

// Heuristic construction of finite prefixes whose k-block occurrence laws
// stay close to Poisson over a grid of lambdas. Nothing here produces a
// provably Poisson generic sequence: the search only minimizes the same
// |empirical(i) - pmf(lambda, i)| deviations that the O_k test sets measure,
// over a finite window of k.

struct SynthConfig {
    unsigned k_lo = 6;
    unsigned k_hi = 8;
    std::vector<Rational> lambdas = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)};
    unsigned i_cap = 8;
};

/// Prefix plus live per-k counters.
///
/// The penalty sums, over every tracked k, Σ_{i <= i_cap} |empirical(i) -
/// pmf(lambda, i)| (unit weights):
///   - for each lambda whose position threshold floor(lambda b^k) has been
///     reached, the term frozen at that threshold;
///   - while some lambda is still ahead, one running term comparing the
///     current law of the n counted positions against Poisson(n / b^k).
class SynthState {
public:
    SynthState(Alphabet alphabet, SynthConfig config);

    Alphabet alphabet() const noexcept { return alphabet_; }
    const SynthConfig& config() const noexcept { return config_; }
    const std::vector<Symbol>& prefix() const noexcept { return prefix_; }
    double penalty() const noexcept { return penalty_; }

    /// Penalty after appending s, without modifying the state.
    double penalty_if(Symbol s) const;
    void push(Symbol s);

    /// Recounts the prefix from scratch and compares with the live counters.
    bool counters_consistent() const;

private:
    struct Track {
        unsigned k;
        std::uint64_t words;
        std::uint64_t shift_mod;
        std::uint64_t code = 0;
        std::uint64_t positions = 0;
        std::uint64_t distinct = 0;
        std::vector<std::uint32_t> counts;
        std::vector<std::uint64_t> coc;  // words with exactly i occurrences, 1 <= i <= i_cap + 1
        std::vector<std::uint64_t> thresholds;  // per lambda
        std::vector<double> frozen;             // per lambda; valid once reached
        std::size_t reached = 0;                // lambdas with threshold <= positions
    };

    // Contribution of one track if a block with prior count `before` were
    // added (before < 0: no new block).
    double track_term(const Track& t, std::int64_t before, std::size_t* newly_reached,
                      std::vector<double>* frozen_out) const;
    double law_term(const Track& t, std::int64_t before, double lambda) const;

    Alphabet alphabet_;
    SynthConfig config_;
    std::vector<Symbol> prefix_;
    std::vector<Track> tracks_;
    double penalty_ = 0.0;
};

/// Extends the prefix by `steps` symbols with beam search: the `beam_width`
/// lowest-penalty extensions survive each step, ties going to the
/// lexicographically smallest prefix. beam_width = 1 is plain greedy.
SynthState greedy_extend(SynthState state, std::uint64_t steps, unsigned beam_width);

struct ScoreRow {
    unsigned k;
    Rational lambda;
    bool sufficient;      // prefix covers floor(lambda b^k) + k - 1 symbols
    std::uint64_t needed;
    Deviation sup;        // over i in [0, i_cap]
    double penalty;       // Σ_{i <= i_cap} |empirical(i) - pmf(lambda, i)|
};

struct ScoreReport {
    std::vector<ScoreRow> rows;
    double total_penalty = 0.0;  // over sufficient rows
};

ScoreReport score_prefix(std::span<const Symbol> prefix, Alphabet alphabet,
                         std::span<const unsigned> ks, std::span<const Rational> lambdas,
                         unsigned i_cap);

}  // namespace pgen
