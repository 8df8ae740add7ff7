#include "dcid/perm.hpp"

#include <algorithm>
#include <stdexcept>

#include "dcid/sha256.hpp"

namespace dcid {

namespace {

constexpr uint8_t kPermTag = 0x08;

// Uniform draws below a bound from a SHA-256 counter stream.
class SeedStream {
 public:
  explicit SeedStream(const Seed& seed) : seed_(seed) {}

  uint32_t below(uint32_t bound) {
    if ((bound & (bound - 1)) == 0) return next_u32() & (bound - 1);
    uint32_t limit = UINT32_MAX - (UINT32_MAX % bound + 1) % bound;
    for (;;) {
      uint32_t v = next_u32();
      if (v <= limit) return v % bound;
    }
  }

 private:
  uint32_t next_u32() {
    if (pos_ + 4 > 32) refill();
    uint32_t v = uint32_t(block_[pos_]) | uint32_t(block_[pos_ + 1]) << 8 |
                 uint32_t(block_[pos_ + 2]) << 16 | uint32_t(block_[pos_ + 3]) << 24;
    pos_ += 4;
    return v;
  }

  void refill() {
    Sha256 h;
    h.update(kPermTag);
    h.update(seed_.view());
    uint8_t ctr[4];
    for (int i = 0; i < 4; ++i) ctr[i] = static_cast<uint8_t>(counter_ >> (8 * i));
    h.update(std::span<const uint8_t>(ctr, 4));
    block_ = h.finish();
    ++counter_;
    pos_ = 0;
  }

  Seed seed_;
  std::array<uint8_t, 32> block_{};
  size_t pos_ = 32;
  uint32_t counter_ = 0;
};

}  // namespace

Permutation identity_perm(uint32_t n) {
  Permutation p;
  p.n = n;
  p.map.resize(n);
  for (uint32_t i = 0; i < n; ++i) p.map[i] = i;
  return p;
}

Permutation perm_from_seed(uint32_t n, const Seed& seed) {
  Permutation p = identity_perm(n);
  p.seed = seed;
  SeedStream stream(seed);
  for (uint32_t i = n; i > 1; --i) {
    uint32_t j = stream.below(i);
    std::swap(p.map[i - 1], p.map[j]);
  }
  return p;
}

Permutation random_perm(uint32_t n, uint16_t seed_bits, Rng& rng) {
  return perm_from_seed(n, rng.seed(seed_bits));
}

Permutation invert_perm(const Permutation& p) {
  Permutation inv;
  inv.n = p.n;
  inv.map.resize(p.n);
  for (uint32_t j = 0; j < p.n; ++j) inv.map[p.map[j]] = j;
  return inv;
}

BitWord apply_perm(const Permutation& p, const BitWord& v) {
  if (v.len() != p.n) throw std::invalid_argument("apply_perm: size mismatch");
  BitWord out(v.len());
  for (uint32_t j = 0; j < p.n; ++j)
    if (v.get(j)) out.set(p.map[j], true);
  return out;
}

bool is_bijection(const Permutation& p) {
  if (p.map.size() != p.n) return false;
  std::vector<bool> seen(p.n, false);
  for (uint32_t v : p.map) {
    if (v >= p.n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::vector<uint8_t> perm_bytes(const Permutation& p) {
  if (p.n > 0xFFFF) throw std::invalid_argument("perm_bytes: n too large for u16 encoding");
  std::vector<uint8_t> out;
  out.reserve(2 * p.n);
  for (uint32_t v : p.map) {
    out.push_back(static_cast<uint8_t>(v & 0xFF));
    out.push_back(static_cast<uint8_t>(v >> 8));
  }
  return out;
}

}  // namespace dcid
