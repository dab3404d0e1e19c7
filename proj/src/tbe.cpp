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

#include "tbesim/tbe.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace tbesim::tbe {

KeyMaterial KeyMaterial::random(int bits, Rng& rng) {
    KeyMaterial k;
    k.key.resize(bits);
    for (int i = 0; i < bits; ++i) k.key[i] = rng.bit() ? 1 : 0;
    return k;
}

const std::vector<std::complex<double>>& message_constellation() {
    // e^{j 2 pi (c/4 + 1/8)} written out componentwise, so that negating a
    // point lands exactly on the opposite point (phase reversal must be an
    // exact involution on the set).
    static const std::vector<std::complex<double>> points = [] {
        const double s = std::sqrt(0.5);
        return std::vector<std::complex<double>>{{s, s}, {-s, s}, {-s, -s}, {s, -s}};
    }();
    return points;
}

namespace {

// Gray map: bit pairs (b0 b1) -> constellation index.
inline int gray_index(int b0, int b1) {
    static constexpr int lut[4] = {0, 1, 3, 2};  // 00,01,10,11 -> c
    return lut[(b0 << 1) | b1];
}

inline void gray_bits(int index, std::uint8_t& b0, std::uint8_t& b1) {
    static constexpr int lut[4][2] = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    b0 = static_cast<std::uint8_t>(lut[index][0]);
    b1 = static_cast<std::uint8_t>(lut[index][1]);
}

}  // namespace

arma::cx_vec modulate_message(const BitString& bits) {
    if (bits.size() % kModOrder != 0)
        throw std::invalid_argument("message length must be a multiple of the modulation order");
    const auto& cons = message_constellation();
    arma::cx_vec s(bits.size() / kModOrder);
    for (std::size_t t = 0; t < s.n_elem; ++t) {
        s[t] = cons[gray_index(bits[2 * t], bits[2 * t + 1])];
    }
    return s;
}

BitString demodulate_message(const arma::cx_vec& symbols) {
    BitString bits(2 * symbols.n_elem);
    for (std::size_t t = 0; t < symbols.n_elem; ++t) {
        const bool re_neg = symbols[t].real() < 0.0;
        const bool im_neg = symbols[t].imag() < 0.0;
        // Quadrants 1..4 correspond to constellation indices 0..3.
        int c;
        if (!re_neg && !im_neg) c = 0;
        else if (re_neg && !im_neg) c = 1;
        else if (re_neg && im_neg) c = 2;
        else c = 3;
        gray_bits(c, bits[2 * t], bits[2 * t + 1]);
    }
    return bits;
}

BitString extract_feature(const arma::cx_vec& symbols) {
    BitString f(symbols.n_elem);
    for (std::size_t t = 0; t < symbols.n_elem; ++t) {
        const double re = symbols[t].real();
        const double im = symbols[t].imag();
        if (re == 0.0 || im == 0.0)
            throw std::domain_error("feature undefined for symbols on a coordinate axis");
        f[t] = ((re > 0.0) == (im > 0.0)) ? 1 : 0;  // first or third quadrant
    }
    return f;
}

BitString generate_tag(const KeyMaterial& key, const BitString& feature, int tag_bits) {
    std::vector<std::uint8_t> material = pack_msb_first(key.key);
    const auto feature_bytes = pack_msb_first(feature);
    material.insert(material.end(), feature_bytes.begin(), feature_bytes.end());
    const std::size_t counter_at = material.size();
    material.resize(counter_at + 4);

    BitString tag;
    tag.reserve(tag_bits);
    std::uint32_t counter = 0;
    unsigned char digest[EVP_MAX_MD_SIZE];
    while (static_cast<int>(tag.size()) < tag_bits) {
        material[counter_at + 0] = static_cast<std::uint8_t>(counter >> 24);
        material[counter_at + 1] = static_cast<std::uint8_t>(counter >> 16);
        material[counter_at + 2] = static_cast<std::uint8_t>(counter >> 8);
        material[counter_at + 3] = static_cast<std::uint8_t>(counter);
        unsigned int len = 0;
        if (EVP_Digest(material.data(), material.size(), digest, &len, EVP_sha256(), nullptr) != 1)
            throw std::runtime_error("SHA-256 digest failed");
        for (unsigned int i = 0; i < 8 * len && static_cast<int>(tag.size()) < tag_bits; ++i) {
            tag.push_back((digest[i / 8] >> (7 - i % 8)) & 1u);
        }
        ++counter;
    }
    return tag;
}

arma::vec tag_symbols(const BitString& tag_bits) {
    arma::vec t(tag_bits.size());
    for (std::size_t i = 0; i < tag_bits.size(); ++i) t[i] = tag_bits[i] ? 1.0 : -1.0;
    return t;
}

arma::cx_vec encode_ciphertext(const arma::cx_vec& symbols, const BitString& tag_bits) {
    if (symbols.n_elem != tag_bits.size())
        throw std::invalid_argument("symbol and tag lengths differ");
    arma::cx_vec c = symbols;
    for (std::size_t t = 0; t < c.n_elem; ++t) {
        if (!tag_bits[t]) c[t] = -c[t];
    }
    return c;
}

arma::cx_vec compose_tx(const arma::cx_vec& ciphertext, const arma::vec& tag,
                        const PowerSplit& split) {
    arma::cx_vec x(ciphertext.n_elem);
    for (std::size_t t = 0; t < x.n_elem; ++t) {
        x[t] = split.rho_m * ciphertext[t] + split.rho_t * tag[t];
    }
    return x;
}

MessageBlock make_block(const KeyMaterial& key, const BitString& message_bits,
                        const PowerSplit& split) {
    MessageBlock b;
    b.bits = message_bits;
    b.symbols = modulate_message(message_bits);
    b.feature = extract_feature(b.symbols);
    b.tag_bits = generate_tag(key, b.feature, static_cast<int>(b.symbols.n_elem));
    b.tag = tag_symbols(b.tag_bits);
    b.ciphertext = encode_ciphertext(b.symbols, b.tag_bits);
    b.tx = compose_tx(b.ciphertext, b.tag, split);
    return b;
}

MessageBlock make_random_block(const KeyMaterial& key, int block_len, const PowerSplit& split,
                               Rng& rng) {
    BitString bits(kModOrder * block_len);
    for (auto& b : bits) b = rng.bit() ? 1 : 0;
    return make_block(key, bits, split);
}

}  // namespace tbesim::tbe
