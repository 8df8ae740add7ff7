#include "dcid/rng.hpp"

#include <cstring>
#include <random>
#include <stdexcept>

#include "dcid/sha256.hpp"

namespace dcid {

namespace {
constexpr uint8_t kDrbgTag = 0x09;
}

Seed Seed::from(std::span<const uint8_t> b) {
  if (b.size() > 32) throw std::invalid_argument("seed too long");
  Seed s;
  s.len = static_cast<uint8_t>(b.size());
  std::memcpy(s.bytes.data(), b.data(), b.size());
  return s;
}

Rng Rng::from_entropy() {
  std::random_device rd;
  std::array<uint8_t, 32> key;
  for (size_t i = 0; i < key.size(); i += 4) {
    uint32_t v = rd();
    std::memcpy(key.data() + i, &v, 4);
  }
  return from_seed(key);
}

Rng Rng::from_seed(std::span<const uint8_t> seed) {
  Rng r;
  Sha256 h;
  h.update(kDrbgTag);
  h.update(seed);
  r.key_ = h.finish();
  return r;
}

std::optional<Rng> Rng::from_hex(std::string_view hex) {
  auto bytes = dcid::from_hex(hex);
  if (!bytes) return std::nullopt;
  return from_seed(*bytes);
}

void Rng::refill() {
  Sha256 h;
  h.update(kDrbgTag);
  h.update(key_);
  uint8_t ctr[8];
  for (int i = 0; i < 8; ++i) ctr[i] = static_cast<uint8_t>(counter_ >> (8 * i));
  h.update(std::span<const uint8_t>(ctr, 8));
  block_ = h.finish();
  ++counter_;
  pos_ = 0;
}

void Rng::fill(std::span<uint8_t> out) {
  size_t off = 0;
  while (off < out.size()) {
    if (pos_ == 32) refill();
    size_t take = std::min(out.size() - off, 32 - pos_);
    std::memcpy(out.data() + off, block_.data() + pos_, take);
    pos_ += take;
    off += take;
  }
}

uint64_t Rng::next_u64() {
  uint8_t b[8];
  fill(b);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t(b[i]) << (8 * i);
  return v;
}

uint32_t Rng::below(uint32_t bound) {
  if (bound == 0) throw std::invalid_argument("below: zero bound");
  if ((bound & (bound - 1)) == 0) {
    uint8_t b[4];
    fill(b);
    uint32_t v = uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 | uint32_t(b[3]) << 24;
    return v & (bound - 1);
  }
  uint32_t limit = UINT32_MAX - (UINT32_MAX % bound + 1) % bound;
  for (;;) {
    uint8_t b[4];
    fill(b);
    uint32_t v = uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 | uint32_t(b[3]) << 24;
    if (v <= limit) return v % bound;
  }
}

BitWord Rng::word(size_t len) {
  std::vector<uint8_t> bytes((len + 7) / 8);
  fill(bytes);
  return BitWord::from_bytes(bytes, len);
}

Seed Rng::seed(uint16_t seed_bits) {
  if (seed_bits % 8 || seed_bits > 256) throw std::invalid_argument("seed_bits must be a multiple of 8, <= 256");
  Seed s;
  s.len = static_cast<uint8_t>(seed_bits / 8);
  fill(std::span<uint8_t>(s.bytes.data(), s.len));
  return s;
}

Rng Rng::fork() {
  std::array<uint8_t, 32> child;
  fill(child);
  return from_seed(child);
}

BitWord sample_fixed_weight(uint32_t n, uint32_t w, Rng& rng) {
  if (w > n) throw std::invalid_argument("sample_fixed_weight: w > n");
  std::vector<uint32_t> idx(n);
  for (uint32_t i = 0; i < n; ++i) idx[i] = i;
  BitWord out(n);
  for (uint32_t i = 0; i < w; ++i) {
    uint32_t j = i + rng.below(n - i);
    std::swap(idx[i], idx[j]);
    out.set(idx[i], true);
  }
  return out;
}

std::string to_hex(std::span<const uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

std::optional<std::vector<uint8_t>> from_hex(std::string_view hex) {
  if (hex.size() % 2) return std::nullopt;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::vector<uint8_t> out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    int hi = nibble(hex[2 * i]), lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out[i] = static_cast<uint8_t>(hi << 4 | lo);
  }
  return out;
}

}  // namespace dcid
