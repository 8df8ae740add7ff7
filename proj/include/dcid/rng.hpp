#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dcid/bitword.hpp"

namespace dcid {

// Short byte string a permutation or round randomness is expanded from.
struct Seed {
  std::array<uint8_t, 32> bytes{};
  uint8_t len = 0;

  static Seed from(std::span<const uint8_t> b);
  std::span<const uint8_t> view() const { return {bytes.data(), len}; }
  bool operator==(const Seed&) const = default;
};

// Deterministic byte stream: SHA-256 in counter mode over a 32-byte key.
// Used both as the session RNG (keyed from OS entropy or a caller seed)
// and as the documented expansion of wire-transmitted seeds.
class Rng {
 public:
  static Rng from_entropy();
  static Rng from_seed(std::span<const uint8_t> seed);
  static std::optional<Rng> from_hex(std::string_view hex);

  void fill(std::span<uint8_t> out);
  uint64_t next_u64();
  // Uniform in [0, bound) by rejection; bound must be nonzero.
  uint32_t below(uint32_t bound);
  uint8_t bit() { return static_cast<uint8_t>(next_u64() & 1); }

  BitWord word(size_t len);
  Seed seed(uint16_t seed_bits);
  Rng fork();

 private:
  Rng() = default;
  void refill();

  std::array<uint8_t, 32> key_{};
  std::array<uint8_t, 32> block_{};
  size_t pos_ = 32;
  uint64_t counter_ = 0;
};

// Uniform word of length n with exactly w set bits.
BitWord sample_fixed_weight(uint32_t n, uint32_t w, Rng& rng);

std::string to_hex(std::span<const uint8_t> bytes);
std::optional<std::vector<uint8_t>> from_hex(std::string_view hex);

}  // namespace dcid
