#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dcid/bigint.hpp"
#include "dcid/bitword.hpp"
#include "dcid/parsed.hpp"

namespace dcid {

// Encoded size of a weight-w word of length n: ceil(log2 C(n,w)) bits
// (0 for w == 0), padded to bytes on the wire.
size_t cw_bits(uint32_t n, uint32_t w);
inline size_t cw_bytes(uint32_t n, uint32_t w) { return (cw_bits(n, w) + 7) / 8; }

// Lexicographic rank of the support set, and its inverse. Encoding a word
// of the wrong weight or decoding an out-of-range rank is an error.
Parsed<std::vector<uint8_t>> cw_encode(const BitWord& v, uint32_t w);
Parsed<BitWord> cw_decode(std::span<const uint8_t> bytes, uint32_t n, uint32_t w);

// Rank/unrank on BigUInt, exposed for the enumeration tests.
BigUInt cw_rank(const BitWord& v, uint32_t w);
Parsed<BitWord> cw_unrank(const BigUInt& rank, uint32_t n, uint32_t w);

}  // namespace dcid
