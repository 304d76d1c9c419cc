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

#include "pgen/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pgen/blockcount.hpp"
#include "pgen/error.hpp"

namespace pgen {

namespace {

double pmf_or_point_mass(double lambda, std::uint64_t i) {
    if (lambda > 0) return poisson_pmf(lambda, i);
    return i == 0 ? 1.0 : 0.0;
}

}  // namespace

SynthState::SynthState(Alphabet alphabet, SynthConfig config)
    : alphabet_(alphabet), config_(std::move(config)) {
    if (config_.k_lo < 1 || config_.k_hi < config_.k_lo) throw_usage("synth needs 1 <= k_lo <= k_hi");
    if (config_.lambdas.empty()) throw_usage("synth needs a non-empty lambda grid");
    std::sort(config_.lambdas.begin(), config_.lambdas.end());
    for (const auto& l : config_.lambdas) {
        if (!l.is_positive()) throw_usage("synth lambdas must be positive");
    }
    for (unsigned k = config_.k_lo; k <= config_.k_hi; ++k) {
        Track t;
        t.k = k;
        t.words = checked_pow(alphabet.size(), k, std::uint64_t{1} << 24);
        t.shift_mod = t.words / alphabet.size();
        t.counts.assign(t.words, 0);
        t.coc.assign(config_.i_cap + 2, 0);
        for (const auto& l : config_.lambdas) t.thresholds.push_back(lambda_threshold(l, t.words));
        t.frozen.assign(config_.lambdas.size(), 0.0);
        while (t.reached < t.thresholds.size() && t.thresholds[t.reached] == 0) {
            t.frozen[t.reached] = law_term(t, -1, config_.lambdas[t.reached].to_double());
            ++t.reached;
        }
        tracks_.push_back(std::move(t));
    }
    penalty_ = 0.0;
    for (const auto& t : tracks_) penalty_ += track_term(t, -1, nullptr, nullptr);
}

double SynthState::law_term(const Track& t, std::int64_t before, double lambda) const {
    const double words = static_cast<double>(t.words);
    double sum = 0.0;
    for (std::uint64_t i = 0; i <= config_.i_cap; ++i) {
        std::int64_t n = i == 0 ? static_cast<std::int64_t>(t.words - t.distinct)
                                : static_cast<std::int64_t>(t.coc[i]);
        if (before >= 0) {
            if (static_cast<std::uint64_t>(before) == i) --n;
            if (static_cast<std::uint64_t>(before) + 1 == i) ++n;
        }
        sum += std::abs(static_cast<double>(n) / words - pmf_or_point_mass(lambda, i));
    }
    return sum;
}

double SynthState::track_term(const Track& t, std::int64_t before, std::size_t* newly_reached,
                              std::vector<double>* frozen_out) const {
    const std::uint64_t positions = t.positions + (before >= 0 ? 1 : 0);
    double sum = 0.0;
    for (std::size_t l = 0; l < t.reached; ++l) sum += t.frozen[l];
    std::size_t reached = t.reached;
    while (reached < t.thresholds.size() && t.thresholds[reached] <= positions) {
        double term = law_term(t, before, config_.lambdas[reached].to_double());
        if (frozen_out) frozen_out->push_back(term);
        sum += term;
        ++reached;
    }
    if (newly_reached) *newly_reached = reached - t.reached;
    if (reached < t.thresholds.size()) {
        sum += law_term(t, before,
                        static_cast<double>(positions) / static_cast<double>(t.words));
    }
    return sum;
}

double SynthState::penalty_if(Symbol s) const {
    if (!alphabet_.contains(s)) throw_usage("symbol outside alphabet");
    const std::uint64_t len = prefix_.size() + 1;
    double sum = 0.0;
    for (const auto& t : tracks_) {
        std::int64_t before = -1;
        if (len >= t.k) {
            std::uint64_t code = (t.code % t.shift_mod) * alphabet_.size() + s;
            before = static_cast<std::int64_t>(t.counts[code]);
        }
        sum += track_term(t, before, nullptr, nullptr);
    }
    return sum;
}

void SynthState::push(Symbol s) {
    if (!alphabet_.contains(s)) throw_usage("symbol outside alphabet");
    prefix_.push_back(s);
    const std::uint64_t len = prefix_.size();
    penalty_ = 0.0;
    for (auto& t : tracks_) {
        t.code = (t.code % t.shift_mod) * alphabet_.size() + s;
        if (len >= t.k) {
            std::int64_t before = static_cast<std::int64_t>(t.counts[t.code]);
            std::vector<double> frozen;
            std::size_t newly = 0;
            track_term(t, before, &newly, &frozen);
            for (std::size_t j = 0; j < newly; ++j) t.frozen[t.reached + j] = frozen[j];
            t.reached += newly;

            auto b4 = static_cast<std::uint64_t>(before);
            ++t.counts[t.code];
            if (b4 == 0) ++t.distinct;
            if (b4 >= 1 && b4 < t.coc.size()) --t.coc[b4];
            if (b4 + 1 < t.coc.size()) ++t.coc[b4 + 1];
            ++t.positions;
        }
        penalty_ += track_term(t, -1, nullptr, nullptr);
    }
}

bool SynthState::counters_consistent() const {
    for (const auto& t : tracks_) {
        std::uint64_t n = prefix_.size() >= t.k ? prefix_.size() - t.k + 1 : 0;
        if (n != t.positions) return false;
        auto src = memory_source(prefix_, alphabet_, "synth");
        BlockHistogram h = count_blocks(*src, t.k, PositionSet::range(1, n));
        if (h.distinct() != t.distinct) return false;
        for (std::uint64_t c = 0; c < t.words; ++c) {
            if (h.count(c) != t.counts[c]) return false;
        }
        CountsOfCounts coc = counts_of_counts(h);
        for (std::uint64_t i = 1; i < t.coc.size(); ++i) {
            if (coc.at(i) != t.coc[i]) return false;
        }
    }
    return true;
}

SynthState greedy_extend(SynthState state, std::uint64_t steps, unsigned beam_width) {
    if (steps < 1) throw_usage("greedy_extend needs steps >= 1");
    if (beam_width < 1) throw_usage("greedy_extend needs beam_width >= 1");
    const unsigned b = state.alphabet().size();

    struct Candidate {
        double penalty;
        std::size_t parent;
        Symbol symbol;
    };

    std::vector<SynthState> beam;
    beam.push_back(std::move(state));
    std::vector<Candidate> cands;
    for (std::uint64_t step = 0; step < steps; ++step) {
        cands.clear();
        for (std::size_t p = 0; p < beam.size(); ++p) {
            for (unsigned s = 0; s < b; ++s) {
                cands.push_back({beam[p].penalty_if(static_cast<Symbol>(s)), p, static_cast<Symbol>(s)});
            }
        }
        auto keep = std::min<std::size_t>(beam_width, cands.size());
        std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(keep), cands.end(),
                          [&beam](const Candidate& x, const Candidate& y) {
                              if (x.penalty != y.penalty) return x.penalty < y.penalty;
                              if (x.parent != y.parent) {
                                  const auto& px = beam[x.parent].prefix();
                                  const auto& py = beam[y.parent].prefix();
                                  if (px != py) return px < py;
                              }
                              return x.symbol < y.symbol;
                          });
        std::vector<SynthState> next;
        next.reserve(keep);
        for (std::size_t c = 0; c < keep; ++c) {
            next.push_back(beam[cands[c].parent]);
            next.back().push(cands[c].symbol);
        }
        beam = std::move(next);
    }
    return std::move(beam.front());
}

ScoreReport score_prefix(std::span<const Symbol> prefix, Alphabet alphabet,
                         std::span<const unsigned> ks, std::span<const Rational> lambdas,
                         unsigned i_cap) {
    if (prefix.empty()) throw_usage("cannot score an empty prefix");
    ScoreReport report;
    auto src = memory_source({prefix.begin(), prefix.end()}, alphabet, "prefix");
    for (unsigned k : ks) {
        const std::uint64_t words = word_space(alphabet.size(), k);
        // sufficient lambdas in ascending order share one sweep
        std::vector<std::size_t> order(lambdas.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return lambdas[x] < lambdas[y]; });
        std::vector<Rational> todo;
        for (std::size_t idx : order) {
            if (lambda_threshold(lambdas[idx], words) + k - 1 <= prefix.size()) todo.push_back(lambdas[idx]);
        }
        auto snaps = incremental_lambda_sweep(*src, k, todo);

        for (const auto& lambda : lambdas) {
            ScoreRow row{k, lambda, false, lambda_threshold(lambda, words) + k - 1, {0, 0.0}, 0.0};
            auto it = std::find(todo.begin(), todo.end(), lambda);
            if (it != todo.end()) {
                EmpiricalLaw e = EmpiricalLaw::from(snaps[static_cast<std::size_t>(it - todo.begin())]);
                PoissonLaw p(lambda);
                row.sufficient = true;
                row.sup = sup_deviation(e, p, 0, i_cap);
                for (std::uint64_t i = 0; i <= i_cap; ++i) row.penalty += std::abs(e.prob(i) - p.pmf(i));
                report.total_penalty += row.penalty;
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

}  // namespace pgen
