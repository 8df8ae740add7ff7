#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dcid/bitword.hpp"

namespace dcid {

// Tightly packed bit stream, little-endian bit order within bytes. Wire
// payloads are packed with one padding run at the end of the message, so
// pre-padding bit counts equal the sums in the cost report.
class BitWriter {
 public:
  void put_bit(bool b) {
    if (bitpos_ % 8 == 0) buf_.push_back(0);
    if (b) buf_.back() |= uint8_t(1) << (bitpos_ % 8);
    ++bitpos_;
  }
  void put_bits(uint64_t v, unsigned width) {
    for (unsigned i = 0; i < width; ++i) put_bit((v >> i) & 1);
  }
  void put_word(const BitWord& w) {
    for (size_t i = 0; i < w.len(); ++i) put_bit(w.get(i));
  }
  void put_bytes(std::span<const uint8_t> bytes) {
    for (uint8_t b : bytes) put_bits(b, 8);
  }

  size_t bit_count() const { return bitpos_; }
  std::vector<uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<uint8_t> buf_;
  size_t bitpos_ = 0;
};

// Total reader: every getter reports truncation instead of reading past
// the end.
class BitReader {
 public:
  explicit BitReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  bool get_bit(bool& out) {
    if (bitpos_ >= bytes_.size() * 8) return false;
    out = (bytes_[bitpos_ / 8] >> (bitpos_ % 8)) & 1;
    ++bitpos_;
    return true;
  }
  bool get_bits(unsigned width, uint64_t& out) {
    uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) {
      bool b;
      if (!get_bit(b)) return false;
      if (b) v |= uint64_t{1} << i;
    }
    out = v;
    return true;
  }
  bool get_word(size_t len, BitWord& out) {
    if (bitpos_ + len > bytes_.size() * 8) return false;
    BitWord w(len);
    for (size_t i = 0; i < len; ++i) {
      bool b = false;
      get_bit(b);
      if (b) w.set(i, true);
    }
    out = std::move(w);
    return true;
  }
  bool get_bytes(size_t n, std::vector<uint8_t>& out) {
    out.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
      uint64_t v;
      if (!get_bits(8, v)) return false;
      out[i] = static_cast<uint8_t>(v);
    }
    return true;
  }

  // True when only zero padding bits remain in the final byte.
  bool at_clean_end() const {
    if (bitpos_ > bytes_.size() * 8) return false;
    if ((bytes_.size() * 8 - bitpos_) >= 8) return false;
    for (size_t i = bitpos_; i < bytes_.size() * 8; ++i)
      if ((bytes_[i / 8] >> (i % 8)) & 1) return false;
    return true;
  }
  size_t bits_left() const { return bytes_.size() * 8 - bitpos_; }

 private:
  std::span<const uint8_t> bytes_;
  size_t bitpos_ = 0;
};

}  // namespace dcid
