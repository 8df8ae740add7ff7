#include "dcid/cw.hpp"

#include <stdexcept>

namespace dcid {

size_t cw_bits(uint32_t n, uint32_t w) {
  if (w > n) throw std::invalid_argument("cw_bits: w > n");
  BigUInt count = binomial(n, w);
  // count >= 1; ranks span [0, count), needing ceil(log2 count) bits.
  size_t bl = count.bit_length();
  BigUInt p2 = BigUInt::pow2(bl - 1);
  return (p2 == count) ? bl - 1 : bl;
}

BigUInt cw_rank(const BitWord& v, uint32_t w) {
  const uint32_t n = static_cast<uint32_t>(v.len());
  BigUInt rank(0);
  uint32_t remaining = w;
  for (uint32_t pos = 0; pos < n && remaining > 0; ++pos) {
    if (v.get(pos)) {
      --remaining;
    } else {
      rank += binomial(n - 1 - pos, remaining - 1);
    }
  }
  return rank;
}

Parsed<BitWord> cw_unrank(const BigUInt& rank, uint32_t n, uint32_t w) {
  if (w > n) return Parsed<BitWord>::fail("cw: w > n");
  if (!(rank < binomial(n, w))) return Parsed<BitWord>::fail("cw: rank out of range");
  BigUInt rest = rank;
  BitWord out(n);
  uint32_t remaining = w;
  for (uint32_t pos = 0; pos < n && remaining > 0; ++pos) {
    BigUInt skip = binomial(n - 1 - pos, remaining - 1);
    if (rest < skip) {
      out.set(pos, true);
      --remaining;
    } else {
      rest -= skip;
    }
  }
  if (remaining != 0 || !rest.is_zero()) return Parsed<BitWord>::fail("cw: rank out of range");
  return Parsed<BitWord>::success(std::move(out));
}

Parsed<std::vector<uint8_t>> cw_encode(const BitWord& v, uint32_t w) {
  if (v.weight() != w)
    return Parsed<std::vector<uint8_t>>::fail("cw_encode: word weight does not match w");
  const uint32_t n = static_cast<uint32_t>(v.len());
  BigUInt rank = cw_rank(v, w);
  size_t bits = cw_bits(n, w);
  std::vector<uint8_t> out((bits + 7) / 8, 0);
  for (size_t i = 0; i < bits; ++i)
    if (rank.bit(i)) out[i / 8] |= uint8_t(1) << (i % 8);
  return Parsed<std::vector<uint8_t>>::success(std::move(out));
}

Parsed<BitWord> cw_decode(std::span<const uint8_t> bytes, uint32_t n, uint32_t w) {
  if (w > n) return Parsed<BitWord>::fail("cw_decode: w > n");
  size_t bits = cw_bits(n, w);
  if (bytes.size() != (bits + 7) / 8)
    return Parsed<BitWord>::fail("cw_decode: wrong payload size");
  // Reject nonzero padding so the byte encoding stays one-to-one.
  if (bits % 8) {
    uint8_t pad_mask = static_cast<uint8_t>(0xFF << (bits % 8));
    if (!bytes.empty() && (bytes.back() & pad_mask))
      return Parsed<BitWord>::fail("cw_decode: nonzero padding bits");
  }
  BigUInt rank(0);
  for (size_t i = bits; i-- > 0;) {
    rank.shl1();
    if ((bytes[i / 8] >> (i % 8)) & 1) rank += BigUInt(1);
  }
  return cw_unrank(rank, n, w);
}

}  // namespace dcid
