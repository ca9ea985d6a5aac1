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

#ifndef RMT_PARTIES_H
#define RMT_PARTIES_H

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rmt/errors.h"

namespace rmt {

/// A set of party indices, labelled A, B, C, ... for parties 0, 1, 2, ...
class PartySet {
   public:
    constexpr PartySet() = default;
    constexpr explicit PartySet(uint32_t mask) : mask_(mask) {}

    static PartySet of(const std::vector<int> &parties) {
        uint32_t mask = 0;
        for (int p : parties) {
            if (p < 0 || p >= 26) {
                throw InvalidArgument("party index out of range");
            }
            mask |= 1u << p;
        }
        return PartySet(mask);
    }

    /// Parses labels such as "A", "BC" or "ABC".
    static PartySet parse(std::string_view labels) {
        uint32_t mask = 0;
        for (char c : labels) {
            if (c < 'A' || c > 'Z') {
                throw InvalidArgument("invalid party label '" + std::string(1, c) + "'");
            }
            uint32_t bit = 1u << (c - 'A');
            if (mask & bit) {
                throw InvalidArgument("duplicate party label '" + std::string(1, c) + "'");
            }
            mask |= bit;
        }
        if (mask == 0) {
            throw InvalidArgument("empty party set");
        }
        return PartySet(mask);
    }

    constexpr uint32_t mask() const { return mask_; }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr int size() const { return std::popcount(mask_); }
    constexpr bool contains(int party) const { return (mask_ >> party) & 1u; }

    std::vector<int> members() const {
        std::vector<int> out;
        for (int p = 0; p < 32; ++p) {
            if (contains(p)) out.push_back(p);
        }
        return out;
    }

    std::string label() const {
        std::string s;
        for (int p : members()) s.push_back(static_cast<char>('A' + p));
        return s;
    }

    /// Highest member index + 1; zero for the empty set.
    constexpr int span() const { return 32 - std::countl_zero(mask_); }

    constexpr auto operator<=>(const PartySet &) const = default;

   private:
    uint32_t mask_ = 0;
};

/// All non-empty subsets of {0..n-1}, ordered by size and then by label:
/// A, B, C, AB, AC, BC, ABC for n = 3.
inline std::vector<PartySet> all_nonempty_subsets(int n) {
    std::vector<PartySet> out;
    for (int k = 1; k <= n; ++k) {
        for (uint32_t m = 1; m < (1u << n); ++m) {
            if (std::popcount(m) == k) out.emplace_back(m);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](PartySet a, PartySet b) {
        return a.size() != b.size() ? a.size() < b.size() : a.label() < b.label();
    });
    return out;
}

}  // namespace rmt

#endif
