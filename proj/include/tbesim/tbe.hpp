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

#ifndef TBESIM_TBE_HPP
#define TBESIM_TBE_HPP

#include <armadillo>
#include <complex>
#include <vector>

#include "tbesim/bits.hpp"
#include "tbesim/config.hpp"
#include "tbesim/rng.hpp"

namespace tbesim::tbe {

// Pre-shared secret. Fixed length, constant across a scenario.
struct KeyMaterial {
    BitString key;  // cfg.key_bits bits

    static KeyMaterial random(int bits, Rng& rng);
};

// QPSK constellation e^{j 2 pi (c/4 + 1/8)}, c = 0..3, Gray bit mapping
// (00, 01, 11, 10 for c = 0, 1, 2, 3).
inline constexpr int kModOrder = 2;  // bits per symbol
const std::vector<std::complex<double>>& message_constellation();

// Maps 2T bits to T unit-modulus symbols. Throws std::invalid_argument when
// the bit count is not a multiple of the modulation order.
arma::cx_vec modulate_message(const BitString& bits);

// Hard sign-based demap, inverse of modulate_message for exact points.
BitString demodulate_message(const arma::cx_vec& symbols);

// Per-slot quadrant-parity feature: bit 1 for the first or third quadrant.
// Invariant under symbol negation, which is what allows the receiver to
// regenerate the tag from the ciphertext. Throws std::domain_error for
// symbols on an axis.
BitString extract_feature(const arma::cx_vec& symbols);

// T-bit keyed tag: SHA-256(key || feature || counter) blocks concatenated
// until tag_bits are available. Deterministic in (key, feature).
BitString generate_tag(const KeyMaterial& key, const BitString& feature, int tag_bits);

// Tag bits to symbols over {-1,+1}: bit 1 -> +1, bit 0 -> -1.
arma::vec tag_symbols(const BitString& tag_bits);

// Phase-reversal encoding: c_tau = -s_tau when the tag bit is 0, else s_tau.
arma::cx_vec encode_ciphertext(const arma::cx_vec& symbols, const BitString& tag_bits);

// x = rho_m c + rho_t t.
arma::cx_vec compose_tx(const arma::cx_vec& ciphertext, const arma::vec& tag, const PowerSplit& split);

// Transmit side of one block for one user.
struct MessageBlock {
    BitString bits;        // n*T message bits
    arma::cx_vec symbols;  // T constellation points
    BitString feature;     // T bits
    BitString tag_bits;    // T bits
    arma::vec tag;         // T symbols in {-1,+1}
    arma::cx_vec ciphertext;
    arma::cx_vec tx;       // rho_m c + rho_t t
};

MessageBlock make_block(const KeyMaterial& key, const BitString& message_bits,
                        const PowerSplit& split);
MessageBlock make_random_block(const KeyMaterial& key, int block_len, const PowerSplit& split,
                               Rng& rng);

}  // namespace tbesim::tbe

#endif
