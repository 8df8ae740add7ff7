#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <span>

namespace dcid {

// Incremental SHA-256 (FIPS 180-4).
class Sha256 {
 public:
  Sha256() { reset(); }

  void reset();
  Sha256& update(std::span<const uint8_t> data);
  Sha256& update(uint8_t byte) { return update(std::span<const uint8_t>(&byte, 1)); }
  std::array<uint8_t, 32> finish();

 private:
  void compress(const uint8_t* block);

  std::array<uint32_t, 8> state_;
  std::array<uint8_t, 64> buf_;
  size_t buf_len_ = 0;
  uint64_t total_ = 0;
};

std::array<uint8_t, 32> sha256(std::span<const uint8_t> data);

}  // namespace dcid
