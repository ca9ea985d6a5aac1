// Copyright 2026 The rmtoolbox Authors
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

// Keyed random streams. Every unit of independent work (one random unitary,
// one bootstrap replica, one grid point) draws from its own generator keyed by
// (seed, domain, index), so results do not depend on execution order.

#ifndef RMT_RNG_H
#define RMT_RNG_H

#include <cstdint>
#include <random>

namespace rmt {

using Rng = std::mt19937_64;

enum class StreamDomain : uint64_t {
    kUnitaries = 1,
    kShots = 2,
    kGrid = 3,
    kBootstrap = 4,
    kTomography = 5,
    kSolver = 6,
    kOracle = 7,
};

inline Rng make_stream(uint64_t seed, StreamDomain domain, uint64_t index) {
    auto lo = [](uint64_t x) { return static_cast<uint32_t>(x); };
    auto hi = [](uint64_t x) { return static_cast<uint32_t>(x >> 32); };
    auto tag = static_cast<uint64_t>(domain);
    std::seed_seq seq{lo(seed), hi(seed), lo(tag), hi(tag), lo(index), hi(index)};
    return Rng(seq);
}

/// splitmix64 finalizer; derives child seeds (e.g. one per grid point).
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace rmt

#endif
