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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pgen/rational.hpp"
#include "pgen/seqgen.hpp"

namespace pgen {

/// Number of k-blocks over an alphabet of b symbols, b^k. Throws a resource
/// error above 2^62.
std::uint64_t word_space(unsigned b, unsigned k);

/// Encodes a k-block most significant symbol first.
std::uint64_t encode_word(std::span<const Symbol> word, unsigned b);
std::vector<Symbol> decode_word(std::uint64_t code, unsigned b, unsigned k);

//---------------------------------------------------------------------------//
// Position sets
//---------------------------------------------------------------------------//

struct RationalEndpoint {
    Rational value;
    bool closed = false;

    friend bool operator==(const RationalEndpoint&, const RationalEndpoint&) = default;
};

struct Interval {
    RationalEndpoint lo;  // default open
    RationalEndpoint hi;  // default closed
};

/// Finite union of disjoint intervals of R+ with rational endpoints, sorted
/// ascending.
class IntervalUnion {
public:
    IntervalUnion() = default;
    explicit IntervalUnion(std::vector<Interval> intervals);

    /// The half-open interval (0, lambda].
    static IntervalUnion prefix(const Rational& lambda);

    /// Parses e.g. "(0,1]", "(0,1]u(3/2,2]", "[1/4,1/2)U(1,2)". Intervals are
    /// joined with 'u', 'U' or '+'.
    static IntervalUnion parse(std::string_view text);

    const std::vector<Interval>& intervals() const noexcept { return intervals_; }
    std::size_t size() const noexcept { return intervals_.size(); }

    /// Lebesgue measure, exact.
    Rational measure() const;
    Rational sup() const;
    bool contains(const Rational& x) const;

    std::string str() const;

private:
    std::vector<Interval> intervals_;
};

struct PositionRun {
    std::uint64_t lo;  // inclusive
    std::uint64_t hi;  // inclusive

    std::uint64_t length() const noexcept { return hi - lo + 1; }
    friend bool operator==(const PositionRun&, const PositionRun&) = default;
};

/// Set of 1-based sequence positions stored as disjoint ascending runs.
/// Adjacent runs are merged.
class PositionSet {
public:
    PositionSet() = default;
    explicit PositionSet(std::vector<PositionRun> runs);

    static PositionSet range(std::uint64_t lo, std::uint64_t hi);

    const std::vector<PositionRun>& runs() const noexcept { return runs_; }
    std::uint64_t total() const noexcept { return total_; }
    bool empty() const noexcept { return total_ == 0; }
    /// Largest position; 0 for the empty set.
    std::uint64_t max() const noexcept { return runs_.empty() ? 0 : runs_.back().hi; }
    bool contains(std::uint64_t j) const;

    friend bool operator==(const PositionSet&, const PositionSet&) = default;

private:
    std::vector<PositionRun> runs_;
    std::uint64_t total_ = 0;
};

/// N ∩ b^k S, computed with exact integer arithmetic. Requires b^k <= 2^50
/// and every endpoint numerator <= 2^20.
PositionSet positions_from_interval_union(const IntervalUnion& s, unsigned b, unsigned k);

/// Positions 1..floor(lambda * b^k).
std::uint64_t lambda_threshold(const Rational& lambda, std::uint64_t words);

//---------------------------------------------------------------------------//
// Histograms
//---------------------------------------------------------------------------//

inline constexpr std::uint64_t kDefaultDenseCellCap = std::uint64_t{1} << 28;

struct CountOptions {
    /// Dense storage is used when b^k <= this many cells.
    std::uint64_t dense_cell_cap = kDefaultDenseCellCap;
};

/// Occurrence count per k-block code.
class BlockHistogram {
public:
    enum class Storage { dense, sparse };

    BlockHistogram(unsigned b, unsigned k, const CountOptions& opts = {});

    unsigned b() const noexcept { return b_; }
    unsigned k() const noexcept { return k_; }
    std::uint64_t words() const noexcept { return words_; }
    Storage storage() const noexcept { return storage_; }
    /// True once a dense 32-bit cell overflowed and storage was widened.
    bool wide_cells() const noexcept { return std::holds_alternative<std::vector<std::uint64_t>>(dense_); }

    /// Adds `amount` occurrences of `code`; returns the count before the add.
    std::uint64_t add(std::uint64_t code, std::uint64_t amount = 1);
    std::uint64_t count(std::uint64_t code) const;

    std::uint64_t total() const noexcept { return total_; }
    std::uint64_t distinct() const noexcept { return distinct_; }

    /// Non-zero (code, count) pairs, codes ascending.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> entries() const;

    /// "code,count" CSV, codes ascending, zero counts omitted.
    std::string to_csv() const;

    friend bool operator==(const BlockHistogram& a, const BlockHistogram& b) {
        return a.b_ == b.b_ && a.k_ == b.k_ && a.total_ == b.total_ && a.entries() == b.entries();
    }

private:
    // Open-addressed table with linear probing. Keys are codes < 2^62, so
    // all-ones marks an empty slot.
    struct SparseTable {
        static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
        std::vector<std::uint64_t> keys;
        std::vector<std::uint64_t> values;
        std::size_t used = 0;

        std::uint64_t* find_or_insert(std::uint64_t key);
        const std::uint64_t* find(std::uint64_t key) const;
        void grow();
    };

    std::uint64_t add_dense(std::uint64_t code, std::uint64_t amount);

    unsigned b_;
    unsigned k_;
    std::uint64_t words_;
    Storage storage_;
    std::variant<std::vector<std::uint32_t>, std::vector<std::uint64_t>> dense_;
    SparseTable sparse_;
    std::uint64_t total_ = 0;
    std::uint64_t distinct_ = 0;
};

/// i -> number of words occurring exactly i times. Always carries the i = 0
/// entry (possibly zero).
class CountsOfCounts {
public:
    CountsOfCounts(unsigned b, unsigned k, std::map<std::uint64_t, std::uint64_t> table);

    unsigned b() const noexcept { return b_; }
    unsigned k() const noexcept { return k_; }
    std::uint64_t words() const noexcept { return words_; }
    const std::map<std::uint64_t, std::uint64_t>& table() const noexcept { return table_; }

    /// Number of words occurring exactly i times.
    std::uint64_t at(std::uint64_t i) const;
    /// Largest i with a non-zero entry.
    std::uint64_t max_count() const;
    /// Σ i * table[i], i.e. the number of scanned positions.
    std::uint64_t positions() const;

    /// "i,words" CSV.
    std::string to_csv() const;

    friend bool operator==(const CountsOfCounts&, const CountsOfCounts&) = default;

private:
    unsigned b_;
    unsigned k_;
    std::uint64_t words_;
    std::map<std::uint64_t, std::uint64_t> table_;
};

/// Counts every k-block starting at a position in `positions`. Reads the
/// source from its first symbol (it is restarted).
BlockHistogram count_blocks(SymbolSource& source, unsigned k, const PositionSet& positions,
                            const CountOptions& opts = {});

CountsOfCounts counts_of_counts(const BlockHistogram& h);

/// Z^lambda_{i,k}: fraction of the b^k words occurring exactly i times among
/// positions 1..floor(lambda b^k).
Rational z_statistic(SymbolSource& source, unsigned k, const Rational& lambda, std::uint64_t i,
                     const CountOptions& opts = {});

/// Counts-of-counts of the prefix position sets (0, lambda_t] for ascending
/// lambdas, from one forward pass.
std::vector<CountsOfCounts> incremental_lambda_sweep(SymbolSource& source, unsigned k,
                                                     std::span<const Rational> lambdas,
                                                     const CountOptions& opts = {});

/// Streaming scanner behind count_blocks and the sweep. Keeps the rolling
/// word code, the histogram and a live counts-of-counts table.
class BlockScanner {
public:
    BlockScanner(SymbolSource& source, unsigned k, const CountOptions& opts = {});

    /// Moves to start position `pos` (inclusive), counting the blocks at
    /// every skipped-over start position when `count` is true. Positions only
    /// move forward.
    void advance_to(std::uint64_t pos, bool count);

    /// Last start position processed (0 before the first).
    std::uint64_t position() const noexcept { return pos_; }

    const BlockHistogram& histogram() const noexcept { return hist_; }
    BlockHistogram release_histogram() { return std::move(hist_); }
    CountsOfCounts live_counts_of_counts() const;

private:
    Symbol next_symbol(std::uint64_t needed_total);
    void bump_live(std::uint64_t before);

    SymbolSource& source_;
    unsigned b_;
    unsigned k_;
    std::uint64_t words_;
    std::uint64_t code_ = 0;
    std::uint64_t pos_ = 0;       // last block start processed
    std::uint64_t consumed_ = 0;  // symbols read so far
    std::vector<Symbol> buf_;
    std::size_t buf_at_ = 0;
    BlockHistogram hist_;
    // live counts-of-counts for i >= 1: small i in a vector, the rest in a map
    std::vector<std::uint64_t> live_small_;
    std::map<std::uint64_t, std::uint64_t> live_large_;
};

}  // namespace pgen
