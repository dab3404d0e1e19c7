// SPDX-License-Identifier: Apache-2.0
//
// tbe-sim: link-level simulation and power-allocation toolkit for a
// tag-based-encoding physical-layer security scheme in a massive-MIMO
// UAV downlink.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef TBESIM_BITS_HPP
#define TBESIM_BITS_HPP

#include <cstdint>
#include <vector>

namespace tbesim {

// One byte per bit (values 0/1). File outputs use MSB-first byte packing.
using BitString = std::vector<std::uint8_t>;

inline std::vector<std::uint8_t> pack_msb_first(const BitString& bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    }
    return out;
}

inline BitString unpack_msb_first(const std::vector<std::uint8_t>& bytes, std::size_t n_bits) {
    BitString out(n_bits, 0);
    for (std::size_t i = 0; i < n_bits; ++i) {
        out[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
    }
    return out;
}

inline std::size_t hamming_distance(const BitString& a, const BitString& b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
    return d;
}

}  // namespace tbesim

#endif
