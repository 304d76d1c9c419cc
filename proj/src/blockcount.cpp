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

#include "pgen/blockcount.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "pgen/error.hpp"

namespace pgen {

std::uint64_t word_space(unsigned b, unsigned k) {
    if (k < 1) throw_usage("block length k must be >= 1");
    return checked_pow(b, k);
}

std::uint64_t encode_word(std::span<const Symbol> word, unsigned b) {
    std::uint64_t code = 0;
    for (Symbol s : word) code = code * b + s;
    return code;
}

std::vector<Symbol> decode_word(std::uint64_t code, unsigned b, unsigned k) {
    std::vector<Symbol> w(k);
    for (unsigned i = k; i-- > 0;) {
        w[i] = static_cast<Symbol>(code % b);
        code /= b;
    }
    return w;
}

//---------------------------------------------------------------------------//
// IntervalUnion
//---------------------------------------------------------------------------//

IntervalUnion::IntervalUnion(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
    if (intervals_.empty()) throw_usage("interval union needs at least one interval");
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        const Interval& iv = intervals_[i];
        if (iv.lo.value < Rational(0)) throw_usage("interval endpoints must be non-negative");
        if (!(iv.lo.value < iv.hi.value)) throw_usage("interval needs lo < hi: " + str());
        if (i > 0) {
            const Interval& prev = intervals_[i - 1];
            bool ok = prev.hi.value < iv.lo.value ||
                      (prev.hi.value == iv.lo.value && !(prev.hi.closed && iv.lo.closed));
            if (!ok) throw_usage("intervals must be sorted and disjoint: " + str());
        }
    }
}

IntervalUnion IntervalUnion::prefix(const Rational& lambda) {
    if (!lambda.is_positive()) throw_usage("lambda must be positive, got " + lambda.str());
    return IntervalUnion({Interval{{Rational(0), false}, {lambda, true}}});
}

IntervalUnion IntervalUnion::parse(std::string_view text) {
    std::vector<Interval> out;
    std::size_t at = 0;
    auto skip_ws = [&] {
        while (at < text.size() && (text[at] == ' ' || text[at] == '\t')) ++at;
    };
    auto fail = [&](const std::string& why) -> void {
        throw_usage("cannot parse interval union '" + std::string(text) + "': " + why);
    };
    while (true) {
        skip_ws();
        if (at >= text.size()) fail("expected '(' or '['");
        char open = text[at];
        if (open != '(' && open != '[') fail("expected '(' or '['");
        auto close_at = text.find_first_of(")]", at);
        if (close_at == std::string_view::npos) fail("unterminated interval");
        std::string_view body = text.substr(at + 1, close_at - at - 1);
        auto comma = body.find(',');
        if (comma == std::string_view::npos) fail("missing ','");
        Interval iv;
        iv.lo = {Rational::parse(body.substr(0, comma)), open == '['};
        iv.hi = {Rational::parse(body.substr(comma + 1)), text[close_at] == ']'};
        out.push_back(iv);
        at = close_at + 1;
        skip_ws();
        if (at >= text.size()) break;
        if (text[at] == 'u' || text[at] == 'U' || text[at] == '+') {
            ++at;
        } else if (text.substr(at, 3) == "\xe2\x88\xaa") {  // U+222A
            at += 3;
        } else {
            fail("expected union separator");
        }
    }
    return IntervalUnion(std::move(out));
}

Rational IntervalUnion::measure() const {
    Rational m(0);
    for (const auto& iv : intervals_) m = m + (iv.hi.value - iv.lo.value);
    return m;
}

Rational IntervalUnion::sup() const {
    return intervals_.empty() ? Rational(0) : intervals_.back().hi.value;
}

bool IntervalUnion::contains(const Rational& x) const {
    for (const auto& iv : intervals_) {
        bool above = iv.lo.closed ? x >= iv.lo.value : x > iv.lo.value;
        bool below = iv.hi.closed ? x <= iv.hi.value : x < iv.hi.value;
        if (above && below) return true;
    }
    return false;
}

std::string IntervalUnion::str() const {
    std::string s;
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        const auto& iv = intervals_[i];
        if (i) s += "u";
        s += iv.lo.closed ? "[" : "(";
        s += iv.lo.value.str() + "," + iv.hi.value.str();
        s += iv.hi.closed ? "]" : ")";
    }
    return s;
}

//---------------------------------------------------------------------------//
// PositionSet
//---------------------------------------------------------------------------//

PositionSet::PositionSet(std::vector<PositionRun> runs) {
    for (const auto& r : runs) {
        if (r.lo < 1 || r.hi < r.lo) throw_usage("invalid position run");
        if (!runs_.empty()) {
            if (r.lo <= runs_.back().hi) throw_usage("position runs must be disjoint and ascending");
            if (r.lo == runs_.back().hi + 1) {
                total_ += r.hi - runs_.back().hi;
                runs_.back().hi = r.hi;
                continue;
            }
        }
        runs_.push_back(r);
        total_ += r.length();
    }
}

PositionSet PositionSet::range(std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) return PositionSet();
    return PositionSet({PositionRun{lo, hi}});
}

bool PositionSet::contains(std::uint64_t j) const {
    auto it = std::upper_bound(runs_.begin(), runs_.end(), j,
                               [](std::uint64_t v, const PositionRun& r) { return v < r.lo; });
    if (it == runs_.begin()) return false;
    return j <= std::prev(it)->hi;
}

PositionSet positions_from_interval_union(const IntervalUnion& s, unsigned b, unsigned k) {
    const std::uint64_t words = checked_pow(b, k, std::uint64_t{1} << 50);
    constexpr std::int64_t kMaxNumerator = std::int64_t{1} << 20;
    std::vector<PositionRun> runs;
    for (const auto& iv : s.intervals()) {
        if (iv.lo.value.num() > kMaxNumerator || iv.hi.value.num() > kMaxNumerator) {
            throw_resource("interval endpoint numerator exceeds 2^20 in " + s.str());
        }
        std::int64_t lo = iv.lo.closed ? iv.lo.value.ceil_mul(words) : iv.lo.value.floor_mul(words) + 1;
        std::int64_t hi = iv.hi.closed ? iv.hi.value.floor_mul(words) : iv.hi.value.ceil_mul(words) - 1;
        lo = std::max<std::int64_t>(lo, 1);
        if (lo <= hi) {
            runs.push_back({static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi)});
        }
    }
    return PositionSet(std::move(runs));
}

std::uint64_t lambda_threshold(const Rational& lambda, std::uint64_t words) {
    if (!lambda.is_positive()) throw_usage("lambda must be positive, got " + lambda.str());
    return static_cast<std::uint64_t>(lambda.floor_mul(words));
}

//---------------------------------------------------------------------------//
// BlockHistogram
//---------------------------------------------------------------------------//

namespace {

std::size_t slot_of(std::uint64_t key, std::size_t mask) {
    std::uint64_t z = key + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(z ^ (z >> 31)) & mask;
}

}  // namespace

std::uint64_t* BlockHistogram::SparseTable::find_or_insert(std::uint64_t key) {
    if (keys.empty() || 2 * (used + 1) > keys.size()) grow();
    std::size_t mask = keys.size() - 1;
    for (std::size_t s = slot_of(key, mask);; s = (s + 1) & mask) {
        if (keys[s] == key) return &values[s];
        if (keys[s] == kEmpty) {
            keys[s] = key;
            values[s] = 0;
            ++used;
            return &values[s];
        }
    }
}

const std::uint64_t* BlockHistogram::SparseTable::find(std::uint64_t key) const {
    if (keys.empty()) return nullptr;
    std::size_t mask = keys.size() - 1;
    for (std::size_t s = slot_of(key, mask);; s = (s + 1) & mask) {
        if (keys[s] == key) return &values[s];
        if (keys[s] == kEmpty) return nullptr;
    }
}

void BlockHistogram::SparseTable::grow() {
    std::size_t cap = keys.empty() ? 1024 : keys.size() * 2;
    std::vector<std::uint64_t> old_keys(cap, kEmpty);
    std::vector<std::uint64_t> old_values(cap, 0);
    old_keys.swap(keys);
    old_values.swap(values);
    used = 0;
    for (std::size_t i = 0; i < old_keys.size(); ++i) {
        if (old_keys[i] != kEmpty) *find_or_insert(old_keys[i]) = old_values[i];
    }
}

BlockHistogram::BlockHistogram(unsigned b, unsigned k, const CountOptions& opts)
    : b_(b), k_(k), words_(word_space(b, k)),
      storage_(words_ <= opts.dense_cell_cap ? Storage::dense : Storage::sparse) {
    if (storage_ == Storage::dense) {
        dense_ = std::vector<std::uint32_t>(words_, 0);
    } else {
        dense_ = std::vector<std::uint32_t>();
    }
}

std::uint64_t BlockHistogram::add_dense(std::uint64_t code, std::uint64_t amount) {
    if (auto* narrow = std::get_if<std::vector<std::uint32_t>>(&dense_)) {
        std::uint64_t before = (*narrow)[code];
        if (before + amount <= std::numeric_limits<std::uint32_t>::max()) {
            (*narrow)[code] = static_cast<std::uint32_t>(before + amount);
            return before;
        }
        std::vector<std::uint64_t> wide(narrow->begin(), narrow->end());
        dense_ = std::move(wide);
    }
    auto& wide = std::get<std::vector<std::uint64_t>>(dense_);
    std::uint64_t before = wide[code];
    wide[code] = before + amount;
    return before;
}

std::uint64_t BlockHistogram::add(std::uint64_t code, std::uint64_t amount) {
    if (code >= words_) throw_usage("word code out of range");
    if (amount == 0) return count(code);
    std::uint64_t before;
    if (storage_ == Storage::dense) {
        before = add_dense(code, amount);
    } else {
        std::uint64_t* cell = sparse_.find_or_insert(code);
        before = *cell;
        *cell += amount;
    }
    if (before == 0) ++distinct_;
    total_ += amount;
    return before;
}

std::uint64_t BlockHistogram::count(std::uint64_t code) const {
    if (code >= words_) return 0;
    if (storage_ == Storage::sparse) {
        const std::uint64_t* v = sparse_.find(code);
        return v ? *v : 0;
    }
    return std::visit([code](const auto& cells) -> std::uint64_t { return cells[code]; }, dense_);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> BlockHistogram::entries() const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    out.reserve(distinct_);
    if (storage_ == Storage::dense) {
        std::visit(
            [&out](const auto& cells) {
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    if (cells[c]) out.emplace_back(c, cells[c]);
                }
            },
            dense_);
    } else {
        for (std::size_t s = 0; s < sparse_.keys.size(); ++s) {
            if (sparse_.keys[s] != SparseTable::kEmpty) {
                out.emplace_back(sparse_.keys[s], sparse_.values[s]);
            }
        }
        std::sort(out.begin(), out.end());
    }
    return out;
}

std::string BlockHistogram::to_csv() const {
    std::ostringstream os;
    os << "code,count\n";
    for (const auto& [code, n] : entries()) os << code << ',' << n << '\n';
    return os.str();
}

//---------------------------------------------------------------------------//
// CountsOfCounts
//---------------------------------------------------------------------------//

CountsOfCounts::CountsOfCounts(unsigned b, unsigned k, std::map<std::uint64_t, std::uint64_t> table)
    : b_(b), k_(k), words_(word_space(b, k)), table_(std::move(table)) {
    std::erase_if(table_, [](const auto& kv) { return kv.first != 0 && kv.second == 0; });
    table_.try_emplace(0, 0);
    uint128 sum = 0;
    for (const auto& [i, n] : table_) sum += n;
    if (sum != words_) throw_usage("counts-of-counts table does not sum to b^k");
}

std::uint64_t CountsOfCounts::at(std::uint64_t i) const {
    auto it = table_.find(i);
    return it == table_.end() ? 0 : it->second;
}

std::uint64_t CountsOfCounts::max_count() const {
    for (auto it = table_.rbegin(); it != table_.rend(); ++it) {
        if (it->second) return it->first;
    }
    return 0;
}

std::uint64_t CountsOfCounts::positions() const {
    std::uint64_t total = 0;
    for (const auto& [i, n] : table_) total += i * n;
    return total;
}

std::string CountsOfCounts::to_csv() const {
    std::ostringstream os;
    os << "i,words\n";
    for (const auto& [i, n] : table_) os << i << ',' << n << '\n';
    return os.str();
}

CountsOfCounts counts_of_counts(const BlockHistogram& h) {
    std::map<std::uint64_t, std::uint64_t> table;
    for (const auto& [code, n] : h.entries()) ++table[n];
    table[0] = h.words() - h.distinct();
    return CountsOfCounts(h.b(), h.k(), std::move(table));
}

//---------------------------------------------------------------------------//
// Scanning
//---------------------------------------------------------------------------//

namespace {
constexpr std::size_t kReadChunk = std::size_t{1} << 16;
constexpr std::uint64_t kLiveSmall = 4096;
}  // namespace

BlockScanner::BlockScanner(SymbolSource& source, unsigned k, const CountOptions& opts)
    : source_(source), b_(source.alphabet().size()), k_(k), words_(word_space(b_, k)),
      hist_(b_, k, opts), live_small_(kLiveSmall, 0) {
    source_.restart();
}

Symbol BlockScanner::next_symbol(std::uint64_t needed_total) {
    if (buf_at_ == buf_.size()) {
        buf_.resize(kReadChunk);
        std::size_t got = source_.read(buf_);
        buf_.resize(got);
        buf_at_ = 0;
        if (got == 0) {
            throw_data("source '" + source_.id() + "' exhausted: required " +
                       std::to_string(needed_total) + " symbols, available " +
                       std::to_string(consumed_));
        }
    }
    ++consumed_;
    return buf_[buf_at_++];
}

void BlockScanner::bump_live(std::uint64_t before) {
    auto dec = [this](std::uint64_t i) {
        if (i < kLiveSmall) {
            --live_small_[i];
        } else if (--live_large_[i] == 0) {
            live_large_.erase(i);
        }
    };
    auto inc = [this](std::uint64_t i) {
        if (i < kLiveSmall) {
            ++live_small_[i];
        } else {
            ++live_large_[i];
        }
    };
    if (before) dec(before);
    inc(before + 1);
}

void BlockScanner::advance_to(std::uint64_t pos, bool count) {
    if (pos <= pos_) return;
    const std::uint64_t needed = pos + k_ - 1;
    const std::uint64_t shift_mod = words_ / b_;  // b^(k-1)
    while (pos_ < pos) {
        std::uint64_t j = pos_ + 1;
        while (consumed_ < j + k_ - 1) {
            Symbol s = next_symbol(needed);
            code_ = (code_ % shift_mod) * b_ + s;
        }
        if (count) bump_live(hist_.add(code_));
        pos_ = j;
    }
}

CountsOfCounts BlockScanner::live_counts_of_counts() const {
    std::map<std::uint64_t, std::uint64_t> table;
    for (std::uint64_t i = 1; i < kLiveSmall; ++i) {
        if (live_small_[i]) table.emplace(i, live_small_[i]);
    }
    for (const auto& kv : live_large_) table.insert(kv);
    table[0] = words_ - hist_.distinct();
    return CountsOfCounts(b_, k_, std::move(table));
}

BlockHistogram count_blocks(SymbolSource& source, unsigned k, const PositionSet& positions,
                            const CountOptions& opts) {
    BlockScanner scan(source, k, opts);
    for (const auto& run : positions.runs()) {
        scan.advance_to(run.lo - 1, false);
        scan.advance_to(run.hi, true);
    }
    return scan.release_histogram();
}

Rational z_statistic(SymbolSource& source, unsigned k, const Rational& lambda, std::uint64_t i,
                     const CountOptions& opts) {
    std::uint64_t words = word_space(source.alphabet().size(), k);
    std::uint64_t t = lambda_threshold(lambda, words);
    CountsOfCounts coc = counts_of_counts(count_blocks(source, k, PositionSet::range(1, t), opts));
    return Rational(static_cast<std::int64_t>(coc.at(i)), static_cast<std::int64_t>(words));
}

std::vector<CountsOfCounts> incremental_lambda_sweep(SymbolSource& source, unsigned k,
                                                     std::span<const Rational> lambdas,
                                                     const CountOptions& opts) {
    for (std::size_t t = 0; t < lambdas.size(); ++t) {
        if (!lambdas[t].is_positive()) throw_usage("sweep lambdas must be positive");
        if (t && lambdas[t] < lambdas[t - 1]) throw_usage("sweep lambdas must be ascending");
    }
    BlockScanner scan(source, k, opts);
    std::uint64_t words = word_space(source.alphabet().size(), k);
    std::vector<CountsOfCounts> out;
    out.reserve(lambdas.size());
    for (const auto& lambda : lambdas) {
        scan.advance_to(lambda_threshold(lambda, words), true);
        out.push_back(scan.live_counts_of_counts());
    }
    return out;
}

}  // namespace pgen
