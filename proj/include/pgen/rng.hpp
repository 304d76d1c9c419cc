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

namespace pgen {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective on 64 bits.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based seed for replicate `index` under `master`:
///   seed_r = mix(master + (r + 1) * 0x9e3779b97f4a7c15)
/// i.e. the (r+1)-th output of a SplitMix64 stream started at `master`.
/// Distinct replicates get distinct seeds because mix is a bijection and the
/// additive Weyl sequence does not repeat within 2^64 steps.
constexpr std::uint64_t replicate_seed(std::uint64_t master,
                                       std::uint64_t index) noexcept {
    return splitmix64_mix(master + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

}  // namespace pgen
