#include "dcid/bitword.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace dcid {

BitWord BitWord::from_bits(std::initializer_list<int> bits) {
  BitWord w(bits.size());
  size_t i = 0;
  for (int b : bits) w.set(i++, b != 0);
  return w;
}

BitWord BitWord::from_bytes(std::span<const uint8_t> bytes, size_t len) {
  if (bytes.size() * 8 < len) throw std::invalid_argument("from_bytes: too few bytes");
  BitWord w(len);
  for (size_t i = 0; i < len; i += 8) {
    uint8_t byte = bytes[i / 8];
    size_t take = std::min<size_t>(8, len - i);
    for (size_t j = 0; j < take; ++j)
      if ((byte >> j) & 1) w.set(i + j, true);
  }
  return w;
}

size_t BitWord::weight() const {
  size_t s = 0;
  for (uint64_t l : limbs_) s += std::popcount(l);
  return s;
}

bool BitWord::is_zero() const {
  for (uint64_t l : limbs_)
    if (l) return false;
  return true;
}

BitWord& BitWord::operator^=(const BitWord& other) {
  if (len_ != other.len_) throw std::invalid_argument("xor: length mismatch");
  for (size_t i = 0; i < limbs_.size(); ++i) limbs_[i] ^= other.limbs_[i];
  return *this;
}

std::vector<uint8_t> BitWord::to_bytes() const {
  std::vector<uint8_t> out((len_ + 7) / 8, 0);
  for (size_t i = 0; i < out.size(); ++i) {
    size_t limb = i / 8, shift = (i % 8) * 8;
    if (limb < limbs_.size()) out[i] = static_cast<uint8_t>(limbs_[limb] >> shift);
  }
  return out;
}

BitWord BitWord::first_half() const {
  if (len_ % 2) throw std::invalid_argument("first_half: odd length");
  size_t k = len_ / 2;
  BitWord out(k);
  for (size_t i = 0; i < k; ++i)
    if (get(i)) out.set(i, true);
  return out;
}

BitWord BitWord::second_half() const {
  if (len_ % 2) throw std::invalid_argument("second_half: odd length");
  size_t k = len_ / 2;
  BitWord out(k);
  for (size_t i = 0; i < k; ++i)
    if (get(k + i)) out.set(i, true);
  return out;
}

BitWord BitWord::concat(const BitWord& a, const BitWord& b) {
  BitWord out(a.len_ + b.len_);
  for (size_t i = 0; i < a.len_; ++i)
    if (a.get(i)) out.set(i, true);
  for (size_t i = 0; i < b.len_; ++i)
    if (b.get(i)) out.set(a.len_ + i, true);
  return out;
}

bool BitWord::canonical() const {
  if (len_ % 64 == 0 || limbs_.empty()) return true;
  uint64_t mask = (uint64_t{1} << (len_ % 64)) - 1;
  return (limbs_.back() & ~mask) == 0;
}

void BitWord::clear_slack() {
  if (len_ % 64 && !limbs_.empty()) limbs_.back() &= (uint64_t{1} << (len_ % 64)) - 1;
}

namespace {

// Read up to 64 bits of src starting at bit position pos (zeros past the end).
inline uint64_t window(std::span<const uint64_t> limbs, size_t pos) {
  size_t w = pos >> 6, b = pos & 63;
  uint64_t lo = w < limbs.size() ? limbs[w] >> b : 0;
  uint64_t hi = (b && w + 1 < limbs.size()) ? limbs[w + 1] << (64 - b) : 0;
  return lo | hi;
}

inline void xor_window(std::span<uint64_t> limbs, size_t pos, uint64_t val) {
  size_t w = pos >> 6, b = pos & 63;
  limbs[w] ^= val << b;
  if (b && w + 1 < limbs.size()) limbs[w + 1] ^= val >> (64 - b);
}

}  // namespace

void rot_block_into(BitWord& out, const BitWord& v, uint32_t r) {
  size_t k = v.len_;
  if (k == 0) {
    if (r != 0) throw std::invalid_argument("rot_block: shift out of range");
    out = v;
    return;
  }
  if (r >= k) throw std::invalid_argument("rot_block: shift out of range");
  if (out.len_ != k) out = BitWord(k);
  std::fill(out.limbs_.begin(), out.limbs_.end(), 0);

  // v[0 .. k-r) -> out[r .. k)  and  v[k-r .. k) -> out[0 .. r).
  auto copy_range = [&](size_t s0, size_t len, size_t d0) {
    for (size_t off = 0; off < len; off += 64) {
      size_t chunk = std::min<size_t>(64, len - off);
      uint64_t val = window(v.limbs_, s0 + off);
      if (chunk < 64) val &= (uint64_t{1} << chunk) - 1;
      xor_window(out.limbs_, d0 + off, val);
    }
  };
  copy_range(0, k - r, r);
  if (r) copy_range(k - r, r, 0);
  out.clear_slack();
}

BitWord rot_block(const BitWord& v, uint32_t r) {
  BitWord out(v.len());
  rot_block_into(out, v, r);
  return out;
}

BitWord block_rot(const BitWord& y, uint32_t r) {
  if (y.len() % 2) throw std::invalid_argument("block_rot: odd-length input");
  size_t k = y.len() / 2;
  if (k == 0) return y;
  uint32_t rr = static_cast<uint32_t>(r % k);
  return BitWord::concat(rot_block(y.first_half(), rr), rot_block(y.second_half(), rr));
}

BitWord circ_mul(const BitWord& a_row, const BitWord& m) {
  size_t k = a_row.len();
  if (m.len() != k) throw std::invalid_argument("circ_mul: length mismatch");
  BitWord acc(k);
  BitWord scratch(k);
  for (size_t j = 0; j < k; ++j) {
    if (!m.get(j)) continue;
    rot_block_into(scratch, a_row, static_cast<uint32_t>(j));
    acc ^= scratch;
  }
  return acc;
}

}  // namespace dcid
