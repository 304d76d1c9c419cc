# Copyright 2026 The pgen Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference computations for the acceptance goldens.

Generates every sequence from its definition (big-integer arithmetic,
a from-scratch MT19937-64), counts k-blocks with numpy, evaluates the
Poisson comparison with mpmath, and writes tests/acceptance_goldens.hpp.

    python3 tests/oracle/make_goldens.py > tests/acceptance_goldens.hpp
"""

import sys
from fractions import Fraction
from math import gcd

import mpmath
import numpy as np

mpmath.mp.dps = 40

MASK = (1 << 64) - 1


class MT19937_64:
    def __init__(self, seed):
        self.mt = [0] * 312
        self.mt[0] = seed & MASK
        for i in range(1, 312):
            prev = self.mt[i - 1]
            self.mt[i] = (6364136223846793005 * (prev ^ (prev >> 62)) + i) & MASK
        self.index = 312

    def _twist(self):
        mt = self.mt
        for i in range(312):
            x = (mt[i] & 0xFFFFFFFF80000000) | (mt[(i + 1) % 312] & 0x7FFFFFFF)
            xa = x >> 1
            if x & 1:
                xa ^= 0xB5026F5AA96619E9
            mt[i] = mt[(i + 156) % 312] ^ xa
        self.index = 0

    def next(self):
        if self.index >= 312:
            self._twist()
        x = self.mt[self.index]
        self.index += 1
        x ^= (x >> 29) & 0x5555555555555555
        x ^= (x << 17) & 0x71D67FFFEDA60000
        x ^= (x << 37) & 0xFFF7EEE000000000
        x ^= x >> 43
        return x & MASK


def check_mt():
    g = MT19937_64(5489)
    for _ in range(9999):
        g.next()
    assert g.next() == 9981545732273789042


def iid_binary(seed, n):
    g = MT19937_64(seed)
    out = []
    while len(out) < n:
        u = g.next()
        out.extend((u >> t) & 1 for t in range(64))
    return np.array(out[:n], dtype=np.int64)


def digits(v, b):
    if v == 0:
        return [0]
    d = []
    while v:
        d.append(v % b)
        v //= b
    return d[::-1]


def champernowne(b, n):
    out = []
    j = 1
    while len(out) < n:
        out.extend(digits(j, b))
        j += 1
    return np.array(out[:n], dtype=np.int64)


def fibonacci(b, n):
    out = []
    f0, f1 = 1, 1
    while len(out) < n:
        out.extend(digits(f0, b))
        f0, f1 = f1, f0 + f1
    return np.array(out[:n], dtype=np.int64)


def along_squares(term, n):
    return np.array([term(j * j) for j in range(1, n + 1)], dtype=np.int64)


def thue_morse(n):
    return bin(n).count("1") & 1


def rudin_shapiro(n):
    return bin(n & (n >> 1)).count("1") & 1


def block_codes(x, b, k, positions):
    codes = np.zeros(positions, dtype=np.int64)
    for t in range(k):
        codes = codes * b + x[t:t + positions]
    return codes


def coc_table(codes, words):
    counts = np.bincount(codes, minlength=words)
    table = np.bincount(counts)
    out = {0: int(table[0])}
    for i in range(1, len(table)):
        if table[i]:
            out[i] = int(table[i])
    return out


def pmf(lam, i):
    return mpmath.e ** (-lam) * lam ** i / mpmath.factorial(i)


def compare(table, words, lam):
    lam = mpmath.mpf(lam.numerator) / lam.denominator
    imax = max(i for i, w in table.items() if w)
    total, covered = mpmath.mpf(0), mpmath.mpf(0)
    best_i, best = 0, mpmath.mpf(-1)
    for i in range(0, max(8, imax) + 1):
        z = mpmath.mpf(table.get(i, 0)) / words
        p = pmf(lam, i)
        dev = abs(z - p)
        if i <= imax:
            total += dev
            covered += p
        if dev > best:
            best_i, best = i, dev
    tv = (total + (1 - covered)) / 2
    return best_i, best, tv


def table_str(table):
    return ";".join(f"{i}:{w}" for i, w in sorted(table.items()))


def l_grid(k):
    vals = set()
    for q in range(1, k + 1):
        for p in range(1, k * q):
            g = gcd(p, q)
            vals.add(Fraction(p // g, q // g))
    return sorted(vals)


def fnv1a(data, h=0xCBF29CE484222325):
    for byte in data:
        h ^= byte
        h = (h * 0x100000001B3) & MASK
    return h


def o_k_golden(x, b, k):
    words = b ** k
    grid = l_grid(k)
    last = grid[-1]
    positions = (last.numerator * words) // last.denominator
    codes = block_codes(x, b, k, positions)
    digest = 0xCBF29CE484222325
    witnesses = []
    threshold = mpmath.mpf(2) / k
    for lam in grid:
        n = (lam.numerator * words) // lam.denominator
        table = coc_table(codes[:n], words)
        csv = "i,words\n" + "".join(f"{i},{w}\n" for i, w in sorted(table.items()))
        digest = fnv1a(csv.encode(), digest)
        lm = mpmath.mpf(lam.numerator) / lam.denominator
        for i in range(words):
            z = mpmath.mpf(table.get(i, 0)) / words
            if i > 200 and z == 0:
                continue
            p = pmf(lm, i) if i <= 200 else mpmath.mpf(0)
            if abs(z - p) > threshold:
                witnesses.append((lam, i, abs(z - p)))
    return positions + k - 1, digest, witnesses


def emit_runs(name, runs):
    print(f"inline const std::vector<CocGolden> {name} = {{")
    for r in runs:
        print(f'    {{"{r[0]}", {r[1]}, {r[2]}, "{r[3]}", {r[4]}, {mpmath.nstr(r[5], 17)}, '
              f"{mpmath.nstr(r[6], 17)}, {'true' if r[7] else 'false'}}},")
    print("};")


def analyze_runs(source, b, ks, x):
    runs = []
    for k in ks:
        words = b ** k
        table = coc_table(block_codes(x, b, k, words), words)
        i, dev, tv = compare(table, words, Fraction(1))
        runs.append((source, b, k, table_str(table), i, dev, tv, dev > mpmath.mpf(2) / k))
    return runs


def main():
    check_mt()
    header = open(sys.argv[1]).read() if len(sys.argv) > 1 else ""
    sys.stdout.write(header)
    print()
    print("// Generated by tests/oracle/make_goldens.py. Do not edit.")
    print()
    print("#pragma once")
    print()
    print("#include <cstdint>")
    print("#include <vector>")
    print()
    print("namespace pgen::golden {")
    print()
    print("struct CocGolden {")
    print("    const char* source;")
    print("    unsigned b;")
    print("    unsigned k;")
    print("    const char* counts_of_counts;  // i:words;...")
    print("    unsigned sup_i;")
    print("    double sup_value;")
    print("    double tv_distance;")
    print("    bool exceeds_threshold;")
    print("};")
    print()

    champ = champernowne(10, 10 ** 7 + 6)
    emit_runs("kChampernowne", analyze_runs("champernowne", 10, [5, 6, 7], champ))
    print()

    runs = []
    runs += analyze_runs("fibonacci", 2, range(10, 17), fibonacci(2, 2 ** 16 + 15))
    runs += analyze_runs("fibonacci", 10, range(4, 7), fibonacci(10, 10 ** 6 + 5))
    runs += analyze_runs("thue-morse-squares", 2, range(10, 17), along_squares(thue_morse, 2 ** 16 + 15))
    runs += analyze_runs("rudin-shapiro-squares", 2, range(10, 17), along_squares(rudin_shapiro, 2 ** 16 + 15))
    emit_runs("kConjecture", runs)
    print()

    k = 12
    x = iid_binary(12, 12 * 2 ** 12)
    prefix, digest, witnesses = o_k_golden(x, 2, k)
    print("// O_12 of the b=2 iid source with seed 12.")
    print(f"inline constexpr std::uint64_t kOk12Seed = 12;")
    print(f"inline constexpr std::uint64_t kOk12Prefix = {prefix};")
    print(f"inline constexpr std::uint64_t kOk12SnapshotDigest = 0x{digest:016x}ULL;")
    print(f"inline constexpr std::size_t kOk12Witnesses = {len(witnesses)};")
    print()
    print("}  // namespace pgen::golden")


if __name__ == "__main__":
    main()
