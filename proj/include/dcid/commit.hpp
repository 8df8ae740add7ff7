#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dcid {

// Domain-separation tags for every hash use; registry documented in
// docs/wire.md.
namespace tag {
inline constexpr uint8_t c1 = 0x01;        // commitment to sigma
inline constexpr uint8_t c2 = 0x02;        // commitment to sigma(uG)
inline constexpr uint8_t c3 = 0x03;        // commitment to sigma(uG + e_r)
inline constexpr uint8_t master = 0x04;    // master over ordered leaf digests
inline constexpr uint8_t sig_shift = 0x05; // signature shift derivation
inline constexpr uint8_t sig_bit = 0x06;   // signature bit derivation
inline constexpr uint8_t message = 0x07;   // message prehash
// 0x08 permutation seed expansion, 0x09 DRBG (see perm.cpp / rng.cpp)
}  // namespace tag

struct Digest {
  std::array<uint8_t, 32> bytes{};
  uint8_t len = 0;

  std::span<const uint8_t> view() const { return {bytes.data(), len}; }
  bool empty() const { return len == 0; }
  std::string hex() const;
  bool operator==(const Digest&) const = default;
};

struct MasterCommitment {
  Digest digest;
  uint32_t count = 0;  // number of leaf digests committed
};

// Tagged, truncated SHA-256. Output length is the CostModel's hash_bits
// (160 by default, matching the communication accounting).
class Committer {
 public:
  explicit Committer(uint16_t hash_bits = 160);

  uint16_t hash_bits() const { return hash_bits_; }
  uint8_t hash_bytes() const { return static_cast<uint8_t>(hash_bits_ / 8); }

  Digest commit(uint8_t domain_tag, std::span<const uint8_t> payload) const;

  // Master over the ordered leaves; order-sensitive, never a pass-through.
  MasterCommitment compress(std::span<const Digest> leaves) const;
  bool verify_master(const MasterCommitment& master, std::span<const Digest> leaves) const;

 private:
  uint16_t hash_bits_;
};

}  // namespace dcid
