#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dcid/costmodel.hpp"
#include "dcid/parsed.hpp"
#include "dcid/protocol.hpp"

namespace dcid {

// Fiat-Shamir transform of the 5-pass scheme: the shift challenges come
// from hashing master1 with the message, the reveal bits from hashing both
// masters with the message. Every answer carries the one leaf digest the
// verifier cannot recompute (as in compressed interactive mode).
struct Signature {
  uint16_t param_id = 0;
  uint16_t rounds = 0;
  uint8_t flags = 0;  // bit0: constant-weight encoding of t on disk
  uint16_t hash_bits = 160;
  uint16_t seed_bits = 128;
  Digest master1, master2;
  std::vector<RoundAnswer> answers;
};

// Message prehash: decouples challenge derivation from message length.
std::array<uint8_t, 32> message_digest(std::span<const uint8_t> msg);

// Challenge derivation shared bit-for-bit between sign and verify. Shifts
// use 16-bit little-endian chunks reduced mod k (bias <= k/2^16 per draw).
std::vector<uint32_t> derive_shifts(const Digest& master1, const std::array<uint8_t, 32>& msg_digest,
                                    uint16_t rounds, uint32_t k);
std::vector<uint8_t> derive_bits(const Digest& master1, const Digest& master2,
                                 const std::array<uint8_t, 32>& msg_digest, uint16_t rounds);

// rounds = 0 means params.sig_rounds.
Signature sign_message(const SecretKey& sk, const PublicKey& pk, const ParamSet& params,
                       std::span<const uint8_t> msg, const CostModel& model, Rng& rng,
                       uint16_t rounds = 0);

bool verify_signature(const PublicKey& pk, const ParamSet& params, std::span<const uint8_t> msg,
                      const Signature& sig);

std::vector<uint8_t> serialize_signature(const Signature& sig, const ParamSet& params);

// Structural parse; splitting the record stream needs the derived reveal
// bits, so it happens inside verify_signature_bytes / decode_signature.
struct SignatureBlob {
  uint16_t param_id = 0;
  uint16_t rounds = 0;
  uint8_t flags = 0;
  uint16_t hash_bits = 160;
  uint16_t seed_bits = 128;
  Digest master1, master2;
  std::vector<uint8_t> records;
};
Parsed<SignatureBlob> parse_signature(std::span<const uint8_t> bytes);
Parsed<Signature> decode_signature(const SignatureBlob& blob, const ParamSet& params,
                                   std::span<const uint8_t> msg);

// Total: any malformation verifies false.
bool verify_signature_bytes(const PublicKey& pk, const ParamSet& params,
                            std::span<const uint8_t> msg, std::span<const uint8_t> sig_bytes);

struct SignatureSizeReport {
  uint64_t realized_bits = 0;   // field widths of this signature
  double expected_bits = 0;     // model average over the reveal-bit split
  uint64_t file_bytes = 0;      // serialized size including framing
  uint16_t rounds = 0;
  uint32_t bit0_rounds = 0, bit1_rounds = 0;
  // Documentation constants for the printed comparison.
  static constexpr uint32_t published_bits = 93000;
  static constexpr uint32_t published_id_x5_bits = 100400;
};
SignatureSizeReport signature_size_report(const Signature& sig, const ParamSet& params,
                                          const CostModel& model);

}  // namespace dcid
