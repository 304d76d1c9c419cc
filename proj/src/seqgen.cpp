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

#include "pgen/seqgen.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "pgen/error.hpp"
#include "pgen/rational.hpp"

namespace pgen {

Alphabet::Alphabet(unsigned b) : b_(b) {
    if (b < 2 || b > 256) {
        throw_usage("alphabet size must be in [2, 256], got " + std::to_string(b));
    }
}

std::vector<Symbol> take(SymbolSource& source, std::uint64_t n) {
    std::vector<Symbol> out(n);
    std::size_t got = source.read(out);
    out.resize(got);
    return out;
}

std::vector<Symbol> prefix(SymbolSource& source, std::uint64_t n) {
    source.restart();
    return take(source, n);
}

Symbol thue_morse_term(std::uint64_t n) noexcept {
    return static_cast<Symbol>(std::popcount(n) & 1);
}

Symbol rudin_shapiro_term(std::uint64_t n) noexcept {
    // n & (n >> 1) has one bit set per (possibly overlapping) "11" factor.
    return static_cast<Symbol>(std::popcount(n & (n >> 1)) & 1);
}

namespace {

// Emits the base-b digits of a sequence of non-negative integers, most
// significant digit first. Subclasses supply the integers as little-endian
// digit vectors.
class ConcatSource : public SymbolSource {
public:
    using SymbolSource::SymbolSource;

protected:
    std::size_t do_read(std::span<Symbol> out) override {
        std::size_t written = 0;
        while (written < out.size()) {
            if (cursor_ == 0) {
                const std::vector<Symbol>& le = next_number();
                digits_.assign(le.rbegin(), le.rend());
                cursor_ = digits_.size();
            }
            std::size_t offset = digits_.size() - cursor_;
            std::size_t n = std::min(cursor_, out.size() - written);
            std::copy_n(digits_.begin() + static_cast<std::ptrdiff_t>(offset), n,
                        out.begin() + static_cast<std::ptrdiff_t>(written));
            cursor_ -= n;
            written += n;
        }
        return written;
    }

    void do_restart() override {
        digits_.clear();
        cursor_ = 0;
        reset_numbers();
    }

    virtual const std::vector<Symbol>& next_number() = 0;
    virtual void reset_numbers() = 0;

    // In-place little-endian increment.
    void increment(std::vector<Symbol>& le) const {
        unsigned b = alphabet().size();
        for (auto& d : le) {
            if (d + 1u < b) {
                ++d;
                return;
            }
            d = 0;
        }
        le.push_back(1);
    }

private:
    std::vector<Symbol> digits_;
    std::size_t cursor_ = 0;
};

class ChampernowneSource final : public ConcatSource {
public:
    explicit ChampernowneSource(Alphabet a)
        : ConcatSource("champernowne-b" + std::to_string(a.size()), a) {}

protected:
    const std::vector<Symbol>& next_number() override {
        increment(counter_);
        return counter_;
    }
    void reset_numbers() override { counter_.clear(); }

private:
    std::vector<Symbol> counter_;  // little endian; empty == 0
};

class FibonacciSource final : public ConcatSource {
public:
    explicit FibonacciSource(Alphabet a)
        : ConcatSource("fibonacci-b" + std::to_string(a.size()), a) {
        reset_numbers();
    }

protected:
    const std::vector<Symbol>& next_number() override {
        if (!started_) {
            started_ = true;
            return cur_;
        }
        // (prev, cur) <- (cur, prev + cur), schoolbook addition.
        unsigned b = alphabet().size();
        std::vector<Symbol> sum(std::max(prev_.size(), cur_.size()));
        unsigned carry = 0;
        for (std::size_t i = 0; i < sum.size(); ++i) {
            unsigned d = carry;
            if (i < prev_.size()) d += prev_[i];
            if (i < cur_.size()) d += cur_[i];
            sum[i] = static_cast<Symbol>(d % b);
            carry = d / b;
        }
        if (carry) sum.push_back(static_cast<Symbol>(carry));
        prev_ = std::move(cur_);
        cur_ = std::move(sum);
        return cur_;
    }

    void reset_numbers() override {
        prev_.clear();
        cur_.assign(1, 1);
        started_ = false;
    }

private:
    std::vector<Symbol> prev_;
    std::vector<Symbol> cur_;
    bool started_ = false;
};

class SquaresSource final : public SymbolSource {
public:
    SquaresSource(TermFunction term, Alphabet a, std::string id)
        : SymbolSource(std::move(id), a), term_(std::move(term)) {}

protected:
    std::size_t do_read(std::span<Symbol> out) override {
        for (auto& s : out) {
            ++n_;
            s = term_(n_ * n_);
            if (!alphabet().contains(s)) {
                throw_data("term function returned symbol " + std::to_string(s) +
                           " outside alphabet at n=" + std::to_string(n_));
            }
        }
        return out.size();
    }
    void do_restart() override { n_ = 0; }

private:
    TermFunction term_;
    std::uint64_t n_ = 0;
};

class IidSource final : public SymbolSource {
public:
    IidSource(Alphabet a, std::uint64_t seed)
        : SymbolSource("iid-b" + std::to_string(a.size()) + "-seed" + std::to_string(seed), a),
          seed_(seed), engine_(seed) {
        uint128 bm = 1;
        const uint128 two64 = uint128{1} << 64;
        while (bm * a.size() <= two64) {
            bm *= a.size();
            ++digits_per_draw_;
        }
        block_ = bm;
        accept_limit_ = (two64 / bm) * bm;
    }

protected:
    std::size_t do_read(std::span<Symbol> out) override {
        const unsigned b = alphabet().size();
        for (auto& s : out) {
            if (pending_ == 0) refill();
            s = static_cast<Symbol>(word_ % b);
            word_ /= b;
            --pending_;
        }
        return out.size();
    }

    void do_restart() override {
        engine_.seed(seed_);
        pending_ = 0;
    }

private:
    void refill() {
        uint128 u;
        do {
            u = engine_();
        } while (u >= accept_limit_);
        word_ = u % block_;
        pending_ = digits_per_draw_;
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
    unsigned digits_per_draw_ = 0;
    uint128 block_ = 1;
    uint128 accept_limit_ = 0;
    uint128 word_ = 0;
    unsigned pending_ = 0;
};

class MemorySource final : public SymbolSource {
public:
    MemorySource(std::vector<Symbol> data, Alphabet a, std::string id)
        : SymbolSource(std::move(id), a), data_(std::move(data)) {
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if (!a.contains(data_[i])) {
                throw_data("symbol " + std::to_string(data_[i]) + " at index " +
                           std::to_string(i) + " outside alphabet b=" +
                           std::to_string(a.size()));
            }
        }
    }

    std::optional<std::uint64_t> length() const override { return data_.size(); }

protected:
    std::size_t do_read(std::span<Symbol> out) override {
        std::size_t n = std::min(out.size(), data_.size() - cursor_);
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(cursor_), n, out.begin());
        cursor_ += n;
        return n;
    }
    void do_restart() override { cursor_ = 0; }

private:
    std::vector<Symbol> data_;
    std::size_t cursor_ = 0;
};

constexpr char kPackedMagic[8] = {'P', 'G', 'E', 'N', 'S', 'E', 'Q', '\0'};
constexpr std::string_view kAsciiTag = "pgen-ascii";

char symbol_char(Symbol s) {
    return s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + (s - 10));
}

int char_symbol(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
}

unsigned bits_per_symbol(unsigned b) {
    return static_cast<unsigned>(std::bit_width(b - 1));
}

template <typename T>
void put_le(std::string& out, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
}

template <typename T>
T get_le(std::string_view in, std::size_t at) {
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        v |= static_cast<T>(static_cast<unsigned char>(in[at + i])) << (8 * i);
    }
    return v;
}

std::uint64_t parse_header_field(std::string_view header, std::string_view key) {
    std::string pat = " " + std::string(key) + "=";
    auto at = header.find(pat);
    if (at == std::string_view::npos) {
        throw_data("ascii header missing '" + std::string(key) + "='");
    }
    std::size_t start = at + pat.size();
    std::size_t end = header.find(' ', start);
    std::string field(header.substr(start, end == std::string_view::npos ? end : end - start));
    try {
        std::size_t used = 0;
        auto v = std::stoull(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw_data("bad ascii header field " + std::string(key) + "='" + field + "'");
    }
}

DecodedSequence decode_ascii(std::string_view bytes, std::optional<Alphabet> alphabet) {
    std::size_t payload_at = 0;
    std::optional<std::uint64_t> declared_n;
    std::optional<Alphabet> declared_b;
    if (bytes.substr(0, kAsciiTag.size()) == kAsciiTag) {
        auto nl = bytes.find('\n');
        if (nl == std::string_view::npos) throw_data("ascii header line not terminated");
        std::string_view header = bytes.substr(0, nl);
        auto b = parse_header_field(header, "b");
        if (b < 2 || b > 36) throw_data("ascii format requires 2 <= b <= 36, got " + std::to_string(b));
        declared_b = Alphabet(static_cast<unsigned>(b));
        declared_n = parse_header_field(header, "n");
        payload_at = nl + 1;
    }
    if (alphabet && declared_b && *alphabet != *declared_b) {
        throw_data("file alphabet b=" + std::to_string(declared_b->size()) +
                   " does not match requested b=" + std::to_string(alphabet->size()));
    }
    if (!alphabet && !declared_b) throw_usage("headerless ascii file needs an explicit alphabet");
    Alphabet a = alphabet ? *alphabet : *declared_b;

    std::string_view payload = bytes.substr(payload_at);
    if (!payload.empty() && payload.back() == '\n') payload.remove_suffix(1);
    DecodedSequence out{a, {}};
    out.symbols.reserve(payload.size());
    for (std::size_t i = 0; i < payload.size(); ++i) {
        int s = char_symbol(payload[i]);
        if (s < 0 || !a.contains(static_cast<unsigned>(s))) {
            throw_data("symbol '" + std::string(1, payload[i]) + "' at byte offset " +
                       std::to_string(payload_at + i) + " is outside alphabet b=" +
                       std::to_string(a.size()));
        }
        out.symbols.push_back(static_cast<Symbol>(s));
    }
    if (declared_n && *declared_n != out.symbols.size()) {
        throw_data("ascii header declares n=" + std::to_string(*declared_n) + " but payload has " +
                   std::to_string(out.symbols.size()) + " symbols");
    }
    return out;
}

DecodedSequence decode_packed(std::string_view bytes, std::optional<Alphabet> alphabet) {
    constexpr std::size_t header_size = 8 + 4 + 8;
    if (bytes.size() < header_size) {
        throw_data("truncated packed header: " + std::to_string(bytes.size()) + " of " +
                   std::to_string(header_size) + " bytes");
    }
    if (std::memcmp(bytes.data(), kPackedMagic, 8) != 0) throw_data("bad packed magic");
    auto b = get_le<std::uint32_t>(bytes, 8);
    auto count = get_le<std::uint64_t>(bytes, 12);
    if (b < 2 || b > 256) throw_data("packed header has unsupported b=" + std::to_string(b));
    Alphabet declared(b);
    if (alphabet && *alphabet != declared) {
        throw_data("file alphabet b=" + std::to_string(b) + " does not match requested b=" +
                   std::to_string(alphabet->size()));
    }
    unsigned bits = bits_per_symbol(b);
    uint128 payload_bits = uint128{count} * bits;
    uint128 payload_bytes = (payload_bits + 7) / 8;
    if (payload_bytes > bytes.size() - header_size) {
        throw_data("truncated packed payload: need " + std::to_string(static_cast<std::uint64_t>(payload_bytes)) +
                   " bytes, have " + std::to_string(bytes.size() - header_size));
    }
    if (payload_bytes < bytes.size() - header_size) throw_data("trailing bytes after packed payload");

    DecodedSequence out{declared, {}};
    out.symbols.reserve(count);
    std::uint64_t bitpos = 0;
    for (std::uint64_t n = 0; n < count; ++n) {
        unsigned v = 0;
        for (unsigned j = 0; j < bits; ++j, ++bitpos) {
            auto byte = static_cast<unsigned char>(bytes[header_size + bitpos / 8]);
            v = (v << 1) | ((byte >> (7 - bitpos % 8)) & 1u);
        }
        if (!declared.contains(v)) {
            throw_data("symbol " + std::to_string(v) + " at byte offset " +
                       std::to_string(header_size + (bitpos - bits) / 8) +
                       " is outside alphabet b=" + std::to_string(b));
        }
        out.symbols.push_back(static_cast<Symbol>(v));
    }
    return out;
}

}  // namespace

std::unique_ptr<SymbolSource> champernowne_source(Alphabet alphabet) {
    return std::make_unique<ChampernowneSource>(alphabet);
}

std::unique_ptr<SymbolSource> fibonacci_concat_source(Alphabet alphabet) {
    return std::make_unique<FibonacciSource>(alphabet);
}

std::unique_ptr<SymbolSource> along_squares(TermFunction term, Alphabet alphabet, std::string id) {
    return std::make_unique<SquaresSource>(std::move(term), alphabet, std::move(id));
}

std::unique_ptr<SymbolSource> iid_uniform_source(Alphabet alphabet, std::uint64_t seed) {
    return std::make_unique<IidSource>(alphabet, seed);
}

std::unique_ptr<SymbolSource> memory_source(std::vector<Symbol> symbols, Alphabet alphabet,
                                            std::string id) {
    return std::make_unique<MemorySource>(std::move(symbols), alphabet, std::move(id));
}

std::string encode_sequence(std::span<const Symbol> symbols, Alphabet alphabet,
                            SequenceFormat format) {
    std::string out;
    unsigned b = alphabet.size();
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (!alphabet.contains(symbols[i])) {
            throw_data("cannot encode symbol " + std::to_string(symbols[i]) + " at index " +
                       std::to_string(i) + " with b=" + std::to_string(b));
        }
    }
    if (format == SequenceFormat::ascii_digits) {
        if (b > 36) throw_usage("ascii format supports b <= 36 only");
        out = std::string(kAsciiTag) + " b=" + std::to_string(b) + " n=" +
              std::to_string(symbols.size()) + "\n";
        out.reserve(out.size() + symbols.size());
        for (Symbol s : symbols) out.push_back(symbol_char(s));
        return out;
    }
    out.append(kPackedMagic, 8);
    put_le<std::uint32_t>(out, b);
    put_le<std::uint64_t>(out, symbols.size());
    unsigned bits = bits_per_symbol(b);
    unsigned acc = 0;
    unsigned filled = 0;
    for (Symbol s : symbols) {
        for (unsigned j = bits; j-- > 0;) {
            acc = (acc << 1) | ((s >> j) & 1u);
            if (++filled == 8) {
                out.push_back(static_cast<char>(acc));
                acc = 0;
                filled = 0;
            }
        }
    }
    if (filled) out.push_back(static_cast<char>(acc << (8 - filled)));
    return out;
}

void write_sequence_file(const std::filesystem::path& path, std::span<const Symbol> symbols,
                         Alphabet alphabet, SequenceFormat format) {
    std::string bytes = encode_sequence(symbols, alphabet, format);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw_data("cannot open '" + path.string() + "' for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw_data("write to '" + path.string() + "' failed");
}

DecodedSequence decode_sequence(std::string_view bytes, std::optional<Alphabet> alphabet,
                                SequenceFormat format) {
    return format == SequenceFormat::ascii_digits ? decode_ascii(bytes, alphabet)
                                                  : decode_packed(bytes, alphabet);
}

std::unique_ptr<SymbolSource> file_source(const std::filesystem::path& path,
                                          std::optional<Alphabet> alphabet,
                                          SequenceFormat format) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw_data("cannot open sequence file '" + path.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    DecodedSequence seq = decode_sequence(ss.str(), alphabet, format);
    return memory_source(std::move(seq.symbols), seq.alphabet, "file:" + path.filename().string());
}

SequenceFormat parse_format(std::string_view name) {
    if (name == "ascii" || name == "ascii-digits") return SequenceFormat::ascii_digits;
    if (name == "packed" || name == "packed-binary") return SequenceFormat::packed_binary;
    throw_usage("unknown sequence format '" + std::string(name) + "'");
}

}  // namespace pgen
