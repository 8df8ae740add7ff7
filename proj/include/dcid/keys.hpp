#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dcid/code.hpp"
#include "dcid/params.hpp"
#include "dcid/parsed.hpp"
#include "dcid/rng.hpp"

namespace dcid {

struct SecretKey {
  BitWord e;  // length n, weight w
  BitWord m;  // length k
};

struct PublicKey {
  DoubleCirculantCode code;
  BitWord x;  // e + m*G, length n
  uint32_t w = 0;
};

struct KeyPair {
  SecretKey sk;
  PublicKey pk;
};

// Uniform a_row and m, uniform weight-w e. Secrets whose blockwise shift
// orbit is degenerate (invariant under a nontrivial rotation) are
// resampled: they would shrink the effective challenge space. The w = 0
// and w = n corner cases skip that check.
KeyPair keygen(const ParamSet& params, Rng& rng);

bool keypair_consistent(const SecretKey& sk, const PublicKey& pk);
bool has_nontrivial_period(const BitWord& e);

// x_r = block_rot(x, r); the public key of the shift-rotated secret.
BitWord shifted_public(const PublicKey& pk, uint32_t r);

// Binary key files: magic, version, param id, bit-packed payload.
// Layouts are documented in docs/wire.md.
std::vector<uint8_t> serialize_public(const PublicKey& pk, uint16_t param_id);
std::vector<uint8_t> serialize_secret(const SecretKey& sk, uint16_t param_id);

struct LoadedPublic {
  PublicKey pk;
  uint16_t param_id = 0;
};
struct LoadedSecret {
  SecretKey sk;
  uint16_t param_id = 0;
};
Parsed<LoadedPublic> deserialize_public(std::span<const uint8_t> bytes);
Parsed<LoadedSecret> deserialize_secret(std::span<const uint8_t> bytes);

}  // namespace dcid
