#pragma once

#include <cstdint>
#include <vector>

#include "dcid/bitword.hpp"
#include "dcid/rng.hpp"

namespace dcid {

// Bijection on {0, ..., n-1}; apply_perm sends input bit j to output
// position map[j]. When derived from a seed the seed is kept so the
// prover can transmit it instead of the explicit map.
struct Permutation {
  uint32_t n = 0;
  std::vector<uint32_t> map;
  Seed seed;

  bool operator==(const Permutation& o) const { return n == o.n && map == o.map; }
};

Permutation identity_perm(uint32_t n);

// Deterministic Fisher-Yates over a SHA-256 counter stream keyed by the
// seed; rejection sampling keeps every draw exactly uniform. This is the
// wire-format expansion: both sides must derive the same map from a seed.
Permutation perm_from_seed(uint32_t n, const Seed& seed);

Permutation random_perm(uint32_t n, uint16_t seed_bits, Rng& rng);

Permutation invert_perm(const Permutation& p);
BitWord apply_perm(const Permutation& p, const BitWord& v);

bool is_bijection(const Permutation& p);

// n little-endian u16 entries; the hashing payload for commit c1.
std::vector<uint8_t> perm_bytes(const Permutation& p);

}  // namespace dcid
