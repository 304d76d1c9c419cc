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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace pgen {

using int128 = __int128;
using uint128 = unsigned __int128;

/// Exact rational p/q with 64-bit numerator and denominator, always stored
/// reduced with q >= 1. Intermediate products use 128-bit arithmetic and
/// any result that does not fit back into 64 bits raises a resource error.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    bool is_positive() const noexcept { return num_ > 0; }
    bool is_integer() const noexcept { return den_ == 1; }

    /// floor(this * m), exact. m must be non-negative.
    std::int64_t floor_mul(std::uint64_t m) const;
    /// ceil(this * m), exact. m must be non-negative.
    std::int64_t ceil_mul(std::uint64_t m) const;

    /// Accepts "p/q", "p", or a finite decimal "a.bcd".
    static Rational parse(std::string_view text);
    /// "p/q"; integers are still written "p/1".
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a,
                                            const Rational& b) noexcept {
        return static_cast<int128>(a.num_) * b.den_ <=>
               static_cast<int128>(b.num_) * a.den_;
    }

private:
    static Rational from_wide(int128 num, int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// b^k as an unsigned 64-bit integer; throws a resource error if it does not
/// fit below `limit`.
std::uint64_t checked_pow(std::uint64_t b, unsigned k,
                          std::uint64_t limit = (std::uint64_t{1} << 62));

}  // namespace pgen
