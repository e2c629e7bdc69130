// Copyright 2026 The qveil authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace qveil {

// splitmix64 step; used to derive independent per-request seeds from a
// base seed and a sequence number.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t sequence) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (sequence + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform double in [0, 1) with 53 random bits. std::uniform_real_distribution
// is implementation-defined; this mapping is reproducible everywhere.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_angle(std::mt19937_64& rng) {
    return uniform_unit(rng) * 6.283185307179586476925286766559;
}

}  // namespace qveil
