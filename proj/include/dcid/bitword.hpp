#pragma once

#include <cstdint>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dcid {

// Fixed-length vector over GF(2). Bit j lives at limbs_[j/64] bit (j%64);
// byte serialization is little-endian within bytes (bit j of a word is bit
// j%8 of byte j/8). Unused high bits of the last limb are kept zero, so
// equality and hashing can work on raw limbs.
class BitWord {
 public:
  BitWord() = default;
  explicit BitWord(size_t len) : len_(len), limbs_(limb_count(len), 0) {}

  static BitWord from_bits(std::initializer_list<int> bits);
  static BitWord from_bytes(std::span<const uint8_t> bytes, size_t len);

  size_t len() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(size_t i) const { return (limbs_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v) {
    uint64_t mask = uint64_t{1} << (i & 63);
    if (v)
      limbs_[i >> 6] |= mask;
    else
      limbs_[i >> 6] &= ~mask;
  }
  void flip(size_t i) { limbs_[i >> 6] ^= uint64_t{1} << (i & 63); }

  size_t weight() const;
  bool is_zero() const;

  BitWord& operator^=(const BitWord& other);
  friend BitWord operator^(BitWord a, const BitWord& b) { return a ^= b; }
  bool operator==(const BitWord&) const = default;

  std::vector<uint8_t> to_bytes() const;

  // Halves of an n=2k word, and their inverse.
  BitWord first_half() const;
  BitWord second_half() const;
  static BitWord concat(const BitWord& a, const BitWord& b);

  std::span<const uint64_t> limbs() const { return limbs_; }
  // True when unused high bits of the last limb are zero.
  bool canonical() const;

 private:
  static size_t limb_count(size_t len) { return (len + 63) / 64; }
  void clear_slack();

  size_t len_ = 0;
  std::vector<uint64_t> limbs_;

  friend BitWord rot_block(const BitWord&, uint32_t);
  friend void rot_block_into(BitWord&, const BitWord&, uint32_t);
};

// Cyclic shift within one k-bit block: output bit (j+r) mod k is input bit j.
// r must be in [0, k).
BitWord rot_block(const BitWord& v, uint32_t r);
void rot_block_into(BitWord& out, const BitWord& v, uint32_t r);

// Blockwise rotation of an n=2k word: both halves rotated by r (mod k).
BitWord block_rot(const BitWord& y, uint32_t r);

// m times the circulant matrix whose row j is rot_block(a_row, j).
BitWord circ_mul(const BitWord& a_row, const BitWord& m);

}  // namespace dcid
