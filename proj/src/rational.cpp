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

#include "pgen/rational.hpp"

#include <charconv>
#include <numeric>

#include "pgen/error.hpp"

namespace pgen {

namespace {

int128 gcd128(int128 a, int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(int128 v) {
    return v >= INT64_MIN && v <= INT64_MAX;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw_usage("invalid rational '" + std::string(whole) + "'");
    }
    return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw_usage("rational with zero denominator");
    *this = from_wide(num, den);
}

Rational Rational::from_wide(int128 num, int128 den) {
    if (den == 0) throw_usage("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (!fits64(num) || !fits64(den)) {
        throw_resource("rational arithmetic overflow beyond 64 bits");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

std::int64_t Rational::floor_mul(std::uint64_t m) const {
    int128 prod = static_cast<int128>(num_) * static_cast<int128>(m);
    int128 q = prod / den_;
    if (prod % den_ != 0 && prod < 0) --q;
    if (!fits64(q)) throw_resource("floor product overflow");
    return static_cast<std::int64_t>(q);
}

std::int64_t Rational::ceil_mul(std::uint64_t m) const {
    int128 prod = static_cast<int128>(num_) * static_cast<int128>(m);
    int128 q = prod / den_;
    if (prod % den_ != 0 && prod > 0) ++q;
    if (!fits64(q)) throw_resource("ceil product overflow");
    return static_cast<std::int64_t>(q);
}

Rational Rational::parse(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (s.empty()) throw_usage("empty rational");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        return Rational(parse_int(s.substr(0, slash), text),
                        parse_int(s.substr(slash + 1), text));
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip.front() == '-';
        if (neg) ip.remove_prefix(1);
        if (fp.size() > 18) throw_usage("too many decimals in '" + std::string(text) + "'");
        int128 den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        int128 whole = ip.empty() ? 0 : parse_int(ip, text);
        int128 frac = fp.empty() ? 0 : parse_int(fp, text);
        if (frac < 0) throw_usage("invalid rational '" + std::string(text) + "'");
        int128 num = whole * den + frac;
        return from_wide(neg ? -num : num, den);
    }
    return Rational(parse_int(s, text), 1);
}

std::string Rational::str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational::from_wide(static_cast<int128>(a.num_) * b.den_ +
                                   static_cast<int128>(b.num_) * a.den_,
                               static_cast<int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational::from_wide(static_cast<int128>(a.num_) * b.den_ -
                                   static_cast<int128>(b.num_) * a.den_,
                               static_cast<int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational::from_wide(static_cast<int128>(a.num_) * b.num_,
                               static_cast<int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw_usage("rational division by zero");
    return Rational::from_wide(static_cast<int128>(a.num_) * b.den_,
                               static_cast<int128>(a.den_) * b.num_);
}

std::uint64_t checked_pow(std::uint64_t b, unsigned k, std::uint64_t limit) {
    uint128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        acc *= b;
        if (acc > limit) {
            throw_resource("b^k = " + std::to_string(b) + "^" + std::to_string(k) +
                           " exceeds the limit " + std::to_string(limit));
        }
    }
    return static_cast<std::uint64_t>(acc);
}

}  // namespace pgen
