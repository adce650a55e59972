// Copyright 2026 The GPA Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Seeded pseudo-randomness. Every random draw in the library goes through
 * these helpers so that runs are bit-reproducible across compilers and
 * standard libraries: the engine is std::mt19937_64 (whose output sequence is
 * fixed by the standard) and uniform variates are formed from the top 53 bits
 * rather than through implementation-defined distributions.
 */
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gpa {

/// Recorded in every run record.
inline constexpr std::string_view kRngAlgorithm =
    "mt19937_64/u53-inverse-cdf/splitmix64-streams";
inline constexpr int kRngAlgorithmVersion = 1;

using Engine = std::mt19937_64;

/// Uniform double in [0, 1) from the 53 high bits of one engine draw.
inline double uniform01(Engine &engine) {
    return static_cast<double>(engine() >> 11U) * 0x1.0p-53;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

/// Independent per-item seed for fan-out (per policy, per sweep point, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

} // namespace gpa
