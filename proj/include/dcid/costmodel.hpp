#pragma once

#include <cstdint>

namespace dcid {

// Knobs of the communication accounting. Defaults reproduce the published
// totals: 160-bit digests, 128-bit permutation seeds, challenges counted.
// The published figures never state whether challenge bits or seed sizes
// are included; these knobs make the convention explicit.
struct CostModel {
  uint16_t hash_bits = 160;
  uint16_t seed_bits = 128;
  bool count_challenges = true;
  bool cw_encoding = false;
};

}  // namespace dcid
