#include "dcid/commit.hpp"

#include <stdexcept>

#include "dcid/rng.hpp"
#include "dcid/sha256.hpp"

namespace dcid {

std::string Digest::hex() const { return to_hex(view()); }

Committer::Committer(uint16_t hash_bits) : hash_bits_(hash_bits) {
  if (hash_bits == 0 || hash_bits % 8 || hash_bits > 256)
    throw std::invalid_argument("hash_bits must be a multiple of 8 in (0, 256]");
}

Digest Committer::commit(uint8_t domain_tag, std::span<const uint8_t> payload) const {
  Sha256 h;
  h.update(domain_tag);
  h.update(payload);
  auto full = h.finish();
  Digest d;
  d.len = hash_bytes();
  std::copy(full.begin(), full.begin() + d.len, d.bytes.begin());
  return d;
}

MasterCommitment Committer::compress(std::span<const Digest> leaves) const {
  if (leaves.empty()) throw std::invalid_argument("compress: empty leaf list");
  Sha256 h;
  h.update(tag::master);
  for (const Digest& leaf : leaves) h.update(leaf.view());
  auto full = h.finish();
  MasterCommitment m;
  m.count = static_cast<uint32_t>(leaves.size());
  m.digest.len = hash_bytes();
  std::copy(full.begin(), full.begin() + m.digest.len, m.digest.bytes.begin());
  return m;
}

bool Committer::verify_master(const MasterCommitment& master, std::span<const Digest> leaves) const {
  if (leaves.empty() || master.count != leaves.size()) return false;
  return compress(leaves).digest == master.digest;
}

}  // namespace dcid
