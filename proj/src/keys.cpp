#include "dcid/keys.hpp"

#include <cstring>
#include <stdexcept>

#include "dcid/bitio.hpp"

namespace dcid {

namespace {

constexpr uint8_t kVersion = 1;
constexpr char kPublicMagic[4] = {'D', 'C', 'P', 'K'};
constexpr char kSecretMagic[4] = {'D', 'C', 'S', 'K'};

void put_header(std::vector<uint8_t>& out, const char magic[4], uint16_t param_id) {
  out.insert(out.end(), magic, magic + 4);
  out.push_back(kVersion);
  out.push_back(static_cast<uint8_t>(param_id & 0xFF));
  out.push_back(static_cast<uint8_t>(param_id >> 8));
}

// nullptr on success, error text otherwise.
const char* check_header(std::span<const uint8_t> bytes, const char magic[4], uint16_t& param_id) {
  if (bytes.size() < 7) return "truncated header";
  if (std::memcmp(bytes.data(), magic, 4) != 0) return "bad magic";
  if (bytes[4] != kVersion) return "unsupported version";
  param_id = static_cast<uint16_t>(bytes[5] | bytes[6] << 8);
  return nullptr;
}

}  // namespace

bool has_nontrivial_period(const BitWord& e) {
  const uint32_t k = static_cast<uint32_t>(e.len() / 2);
  for (uint32_t r = 1; r < k; ++r)
    if (block_rot(e, r) == e) return true;
  return false;
}

KeyPair keygen(const ParamSet& params, Rng& rng) {
  KeyPair kp;
  kp.pk.code.k = params.k;
  kp.pk.code.a_row = rng.word(params.k);
  kp.sk.m = rng.word(params.k);
  do {
    kp.sk.e = sample_fixed_weight(params.n, params.w, rng);
  } while (params.w > 0 && params.w < params.n && has_nontrivial_period(kp.sk.e));
  kp.pk.x = kp.sk.e ^ encode(kp.pk.code, kp.sk.m);
  kp.pk.w = params.w;
  return kp;
}

bool keypair_consistent(const SecretKey& sk, const PublicKey& pk) {
  if (sk.e.len() != pk.x.len() || sk.m.len() != pk.code.k) return false;
  if (sk.e.weight() != pk.w) return false;
  return (sk.e ^ encode(pk.code, sk.m)) == pk.x;
}

BitWord shifted_public(const PublicKey& pk, uint32_t r) {
  if (r >= pk.code.k) throw std::invalid_argument("shifted_public: shift out of range");
  return block_rot(pk.x, r);
}

std::vector<uint8_t> serialize_public(const PublicKey& pk, uint16_t param_id) {
  std::vector<uint8_t> out;
  put_header(out, kPublicMagic, param_id);
  out.push_back(static_cast<uint8_t>(pk.w & 0xFF));
  out.push_back(static_cast<uint8_t>(pk.w >> 8));
  BitWriter bw;
  bw.put_word(pk.code.a_row);
  bw.put_word(pk.x);
  auto payload = bw.take();
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

std::vector<uint8_t> serialize_secret(const SecretKey& sk, uint16_t param_id) {
  std::vector<uint8_t> out;
  put_header(out, kSecretMagic, param_id);
  BitWriter bw;
  bw.put_word(sk.e);
  bw.put_word(sk.m);
  auto payload = bw.take();
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

Parsed<LoadedPublic> deserialize_public(std::span<const uint8_t> bytes) {
  using R = Parsed<LoadedPublic>;
  uint16_t param_id;
  if (const char* err = check_header(bytes, kPublicMagic, param_id)) return R::fail(err);
  const ParamSet* ps = preset_by_id(param_id);
  if (!ps) return R::fail("unknown parameter set id");
  if (bytes.size() < 9) return R::fail("truncated weight field");
  uint32_t w = static_cast<uint32_t>(bytes[7] | bytes[8] << 8);
  if (w != ps->w) return R::fail("weight field disagrees with parameter set");
  BitReader br(bytes.subspan(9));
  LoadedPublic out;
  out.param_id = param_id;
  out.pk.code.k = ps->k;
  out.pk.w = w;
  if (!br.get_word(ps->k, out.pk.code.a_row)) return R::fail("truncated circulant row");
  if (!br.get_word(ps->n, out.pk.x)) return R::fail("truncated public word x");
  if (!br.at_clean_end()) return R::fail("trailing data after public key payload");
  return R::success(std::move(out));
}

Parsed<LoadedSecret> deserialize_secret(std::span<const uint8_t> bytes) {
  using R = Parsed<LoadedSecret>;
  uint16_t param_id;
  if (const char* err = check_header(bytes, kSecretMagic, param_id)) return R::fail(err);
  const ParamSet* ps = preset_by_id(param_id);
  if (!ps) return R::fail("unknown parameter set id");
  BitReader br(bytes.subspan(7));
  LoadedSecret out;
  out.param_id = param_id;
  if (!br.get_word(ps->n, out.sk.e)) return R::fail("truncated secret word e");
  if (!br.get_word(ps->k, out.sk.m)) return R::fail("truncated secret word m");
  if (!br.at_clean_end()) return R::fail("trailing data after secret key payload");
  if (out.sk.e.weight() != ps->w) return R::fail("secret weight check failed");
  return R::success(std::move(out));
}

}  // namespace dcid
