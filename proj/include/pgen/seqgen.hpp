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
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace pgen {

using Symbol = std::uint8_t;

/// Alphabet {0, ..., b-1}. Symbols are stored as bytes, so 2 <= b <= 256.
class Alphabet {
public:
    explicit Alphabet(unsigned b);
    unsigned size() const noexcept { return b_; }
    bool contains(unsigned s) const noexcept { return s < b_; }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    unsigned b_;
};

/// A deterministic, restartable stream of symbols. Positions are numbered
/// from 1: after restart() the next symbol read is x_1.
class SymbolSource {
public:
    SymbolSource(std::string id, Alphabet alphabet)
        : id_(std::move(id)), alphabet_(alphabet) {}
    virtual ~SymbolSource() = default;

    SymbolSource(const SymbolSource&) = delete;
    SymbolSource& operator=(const SymbolSource&) = delete;

    const std::string& id() const noexcept { return id_; }
    Alphabet alphabet() const noexcept { return alphabet_; }

    /// Position of the next symbol to be produced (1-based).
    std::uint64_t position() const noexcept { return next_pos_; }

    /// Fill `out` with the next symbols. Returns the number written, which
    /// is smaller than out.size() only when a finite source is exhausted.
    std::size_t read(std::span<Symbol> out) {
        std::size_t n = do_read(out);
        next_pos_ += n;
        return n;
    }

    void restart() {
        do_restart();
        next_pos_ = 1;
    }

    /// Total length for finite sources; nullopt for infinite ones.
    virtual std::optional<std::uint64_t> length() const { return std::nullopt; }

protected:
    virtual std::size_t do_read(std::span<Symbol> out) = 0;
    virtual void do_restart() = 0;

private:
    std::string id_;
    Alphabet alphabet_;
    std::uint64_t next_pos_ = 1;
};

/// Reads up to n symbols from the current position.
std::vector<Symbol> take(SymbolSource& source, std::uint64_t n);

/// Restarts the source and returns its first n symbols.
std::vector<Symbol> prefix(SymbolSource& source, std::uint64_t n);

using TermFunction = std::function<Symbol(std::uint64_t)>;

// Pure term functions for the automatic sequences.
Symbol thue_morse_term(std::uint64_t n) noexcept;
Symbol rudin_shapiro_term(std::uint64_t n) noexcept;

/// Concatenated base-b representations of 1, 2, 3, ...
std::unique_ptr<SymbolSource> champernowne_source(Alphabet alphabet);

/// Concatenated base-b representations of F_1 = 1, F_2 = 1, F_3 = 2, ...
std::unique_ptr<SymbolSource> fibonacci_concat_source(Alphabet alphabet);

/// term(1^2), term(2^2), term(3^2), ... Every value returned by `term` must
/// lie in `alphabet`.
std::unique_ptr<SymbolSource> along_squares(TermFunction term, Alphabet alphabet,
                                            std::string id);

/// I.i.d. uniform symbols.
///
/// Generator: std::mt19937_64 constructed with `seed` (the engine is fully
/// specified by the C++ standard, so streams are identical on every
/// conforming platform). Each 64-bit draw u is turned into m base-b digits,
/// where m is the largest integer with b^m <= 2^64; draws with
/// u >= floor(2^64 / b^m) * b^m are rejected, so every digit is exactly
/// uniform. Digits are emitted least significant first.
std::unique_ptr<SymbolSource> iid_uniform_source(Alphabet alphabet, std::uint64_t seed);

/// Finite source over an in-memory buffer.
std::unique_ptr<SymbolSource> memory_source(std::vector<Symbol> symbols, Alphabet alphabet,
                                            std::string id = "memory");

enum class SequenceFormat { ascii_digits, packed_binary };

/// Loads a sequence file. Pass alphabet b = 0 to take it from the file
/// header. Symbols outside the alphabet raise a data error naming the byte
/// offset.
std::unique_ptr<SymbolSource> file_source(const std::filesystem::path& path,
                                          std::optional<Alphabet> alphabet,
                                          SequenceFormat format);

/// Encoded file contents; write_sequence_file writes exactly these bytes.
std::string encode_sequence(std::span<const Symbol> symbols, Alphabet alphabet,
                            SequenceFormat format);
void write_sequence_file(const std::filesystem::path& path, std::span<const Symbol> symbols,
                         Alphabet alphabet, SequenceFormat format);

struct DecodedSequence {
    Alphabet alphabet;
    std::vector<Symbol> symbols;
};

DecodedSequence decode_sequence(std::string_view bytes, std::optional<Alphabet> alphabet,
                                SequenceFormat format);

SequenceFormat parse_format(std::string_view name);

}  // namespace pgen
