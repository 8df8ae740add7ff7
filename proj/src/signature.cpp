#include "dcid/signature.hpp"

#include <cstring>
#include <stdexcept>

#include "dcid/bitio.hpp"
#include "dcid/cw.hpp"
#include "dcid/sha256.hpp"

namespace dcid {

namespace {

constexpr uint8_t kVersion = 1;
constexpr char kMagic[4] = {'D', 'C', 'S', 'G'};
constexpr uint16_t kMaxRounds = 4096;
constexpr uint8_t kFlagCw = 0x01;

// SHA-256 counter stream over tag || inputs...; untruncated blocks.
class DeriveStream {
 public:
  DeriveStream(uint8_t t, std::initializer_list<std::span<const uint8_t>> inputs) : tag_(t) {
    for (auto in : inputs) prefix_.insert(prefix_.end(), in.begin(), in.end());
  }

  uint8_t next_byte() {
    if (pos_ == 32) refill();
    return block_[pos_++];
  }
  uint16_t next_u16() {
    uint16_t lo = next_byte();
    return static_cast<uint16_t>(lo | uint16_t{next_byte()} << 8);
  }

 private:
  void refill() {
    Sha256 h;
    h.update(tag_);
    h.update(prefix_);
    uint8_t ctr[4];
    for (int i = 0; i < 4; ++i) ctr[i] = static_cast<uint8_t>(counter_ >> (8 * i));
    h.update(std::span<const uint8_t>(ctr, 4));
    block_ = h.finish();
    ++counter_;
    pos_ = 0;
  }

  uint8_t tag_;
  std::vector<uint8_t> prefix_;
  std::array<uint8_t, 32> block_{};
  size_t pos_ = 32;
  uint32_t counter_ = 0;
};

size_t t_field_bits(const ParamSet& params, bool cw) {
  return cw ? cw_bits(params.n, params.w) : params.n;
}

}  // namespace

std::array<uint8_t, 32> message_digest(std::span<const uint8_t> msg) {
  Sha256 h;
  h.update(tag::message);
  h.update(msg);
  return h.finish();
}

std::vector<uint32_t> derive_shifts(const Digest& master1, const std::array<uint8_t, 32>& msg_digest,
                                    uint16_t rounds, uint32_t k) {
  DeriveStream stream(tag::sig_shift, {master1.view(), msg_digest});
  std::vector<uint32_t> shifts(rounds);
  for (auto& s : shifts) s = stream.next_u16() % k;
  return shifts;
}

std::vector<uint8_t> derive_bits(const Digest& master1, const Digest& master2,
                                 const std::array<uint8_t, 32>& msg_digest, uint16_t rounds) {
  DeriveStream stream(tag::sig_bit, {master1.view(), master2.view(), msg_digest});
  std::vector<uint8_t> bits(rounds);
  uint8_t cur = 0;
  for (uint16_t j = 0; j < rounds; ++j) {
    if (j % 8 == 0) cur = stream.next_byte();
    bits[j] = (cur >> (j % 8)) & 1;
  }
  return bits;
}

Signature sign_message(const SecretKey& sk, const PublicKey& pk, const ParamSet& params,
                       std::span<const uint8_t> msg, const CostModel& model, Rng& rng,
                       uint16_t rounds) {
  const uint16_t R = rounds ? rounds : params.sig_rounds;
  if (R == 0 || R > kMaxRounds) throw std::invalid_argument("sign: bad round count");
  Committer com(model.hash_bits);

  Signature sig;
  sig.param_id = params.id;
  sig.rounds = R;
  sig.flags = model.cw_encoding ? kFlagCw : 0;
  sig.hash_bits = model.hash_bits;
  sig.seed_bits = model.seed_bits;

  std::vector<RoundProverState> states;
  states.reserve(R);
  std::vector<Digest> leaves1;
  leaves1.reserve(2 * size_t{R});
  for (uint16_t j = 0; j < R; ++j) {
    states.push_back(prover_pass1(pk, model, rng));
    leaves1.push_back(states.back().c1);
    leaves1.push_back(states.back().c2);
  }
  sig.master1 = com.compress(leaves1).digest;

  const auto md = message_digest(msg);
  const auto shifts = derive_shifts(sig.master1, md, R, params.k);
  std::vector<Digest> leaves3;
  leaves3.reserve(R);
  for (uint16_t j = 0; j < R; ++j) leaves3.push_back(prover_pass3(states[j], sk, pk, shifts[j]));
  sig.master2 = com.compress(leaves3).digest;

  const auto bits = derive_bits(sig.master1, sig.master2, md, R);
  sig.answers.reserve(R);
  for (uint16_t j = 0; j < R; ++j) sig.answers.push_back(prover_pass5(states[j], sk, bits[j], true));
  return sig;
}

bool verify_signature(const PublicKey& pk, const ParamSet& params, std::span<const uint8_t> msg,
                      const Signature& sig) {
  if (sig.param_id != params.id) return false;
  if (sig.rounds == 0 || sig.rounds > kMaxRounds) return false;
  if (sig.answers.size() != sig.rounds) return false;
  if (sig.hash_bits == 0 || sig.hash_bits % 8 || sig.hash_bits > 256) return false;
  Committer com(sig.hash_bits);
  if (sig.master1.len != com.hash_bytes() || sig.master2.len != com.hash_bytes()) return false;

  const auto md = message_digest(msg);
  const auto shifts = derive_shifts(sig.master1, md, sig.rounds, params.k);
  const auto bits = derive_bits(sig.master1, sig.master2, md, sig.rounds);

  std::vector<Digest> all1, all3;
  all1.reserve(2 * size_t{sig.rounds});
  all3.reserve(sig.rounds);
  for (uint16_t j = 0; j < sig.rounds; ++j) {
    const RoundAnswer& ans = sig.answers[j];
    if (ans.revealed.len != com.hash_bytes()) return false;
    if (ans.bit == 0 && ans.sigma_seed.len != sig.seed_bits / 8) return false;
    RoundChallenge ch{shifts[j], bits[j]};
    auto leaves = reconstruct_round(pk, com, ch, ans);
    if (!leaves) return false;
    all1.push_back(leaves->c1);
    all1.push_back(leaves->c2);
    all3.push_back(leaves->c3);
  }
  MasterCommitment m1{sig.master1, static_cast<uint32_t>(all1.size())};
  MasterCommitment m2{sig.master2, static_cast<uint32_t>(all3.size())};
  return com.verify_master(m1, all1) && com.verify_master(m2, all3);
}

std::vector<uint8_t> serialize_signature(const Signature& sig, const ParamSet& params) {
  const bool cw = sig.flags & kFlagCw;
  std::vector<uint8_t> out(kMagic, kMagic + 4);
  out.push_back(kVersion);
  auto put16 = [&out](uint16_t v) {
    out.push_back(static_cast<uint8_t>(v & 0xFF));
    out.push_back(static_cast<uint8_t>(v >> 8));
  };
  put16(sig.param_id);
  put16(sig.rounds);
  out.push_back(sig.flags);
  put16(sig.hash_bits);
  put16(sig.seed_bits);
  out.insert(out.end(), sig.master1.view().begin(), sig.master1.view().end());
  out.insert(out.end(), sig.master2.view().begin(), sig.master2.view().end());

  BitWriter bw;
  for (const RoundAnswer& ans : sig.answers) {
    bw.put_bytes(ans.revealed.view());
    if (ans.bit == 0) {
      bw.put_bytes(ans.sigma_seed.view());
      bw.put_word(ans.y);
    } else {
      bw.put_word(ans.v);
      if (cw) {
        auto enc = cw_encode(ans.t, params.w);
        if (!enc.ok()) throw std::logic_error("serialize_signature: cw encoding failed");
        // Packed at its exact bit width; the byte padding of cw_encode's
        // buffer is dropped here and re-added on parse.
        size_t bits = cw_bits(params.n, params.w);
        for (size_t i = 0; i < bits; ++i) bw.put_bit(((*enc.value)[i / 8] >> (i % 8)) & 1);
      } else {
        bw.put_word(ans.t);
      }
    }
  }
  auto records = bw.take();
  out.insert(out.end(), records.begin(), records.end());
  return out;
}

Parsed<SignatureBlob> parse_signature(std::span<const uint8_t> bytes) {
  using R = Parsed<SignatureBlob>;
  if (bytes.size() < 14) return R::fail("truncated signature header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) return R::fail("bad signature magic");
  if (bytes[4] != kVersion) return R::fail("unsupported signature version");
  SignatureBlob blob;
  auto get16 = [&bytes](size_t off) { return static_cast<uint16_t>(bytes[off] | bytes[off + 1] << 8); };
  blob.param_id = get16(5);
  blob.rounds = get16(7);
  blob.flags = bytes[9];
  blob.hash_bits = get16(10);
  blob.seed_bits = get16(12);
  if (blob.rounds == 0 || blob.rounds > kMaxRounds) return R::fail("round count out of range");
  if (blob.flags & ~kFlagCw) return R::fail("unknown signature flags");
  if (blob.hash_bits == 0 || blob.hash_bits % 8 || blob.hash_bits > 256)
    return R::fail("hash width out of range");
  if (blob.seed_bits == 0 || blob.seed_bits % 8 || blob.seed_bits > 256)
    return R::fail("seed width out of range");
  const size_t hb = blob.hash_bits / 8;
  if (bytes.size() < 14 + 2 * hb) return R::fail("truncated master commitments");
  blob.master1.len = static_cast<uint8_t>(hb);
  blob.master2.len = static_cast<uint8_t>(hb);
  std::copy(bytes.begin() + 14, bytes.begin() + 14 + hb, blob.master1.bytes.begin());
  std::copy(bytes.begin() + 14 + hb, bytes.begin() + 14 + 2 * hb, blob.master2.bytes.begin());
  blob.records.assign(bytes.begin() + 14 + 2 * hb, bytes.end());
  return R::success(std::move(blob));
}

Parsed<Signature> decode_signature(const SignatureBlob& blob, const ParamSet& params,
                                   std::span<const uint8_t> msg) {
  using R = Parsed<Signature>;
  if (blob.param_id != params.id) return R::fail("parameter set mismatch");
  Signature sig;
  sig.param_id = blob.param_id;
  sig.rounds = blob.rounds;
  sig.flags = blob.flags;
  sig.hash_bits = blob.hash_bits;
  sig.seed_bits = blob.seed_bits;
  sig.master1 = blob.master1;
  sig.master2 = blob.master2;

  const bool cw = blob.flags & kFlagCw;
  const auto md = message_digest(msg);
  const auto shifts = derive_shifts(blob.master1, md, blob.rounds, params.k);
  const auto bits = derive_bits(blob.master1, blob.master2, md, blob.rounds);
  (void)shifts;  // record layout depends only on the reveal bits

  BitReader br(blob.records);
  const size_t hb = blob.hash_bits / 8;
  const size_t sb = blob.seed_bits / 8;
  sig.answers.resize(blob.rounds);
  for (uint16_t j = 0; j < blob.rounds; ++j) {
    RoundAnswer& ans = sig.answers[j];
    ans.bit = bits[j];
    std::vector<uint8_t> tmp;
    if (!br.get_bytes(hb, tmp)) return R::fail("truncated revealed digest");
    ans.revealed.len = static_cast<uint8_t>(hb);
    std::copy(tmp.begin(), tmp.end(), ans.revealed.bytes.begin());
    if (bits[j] == 0) {
      if (!br.get_bytes(sb, tmp)) return R::fail("truncated sigma seed");
      ans.sigma_seed = Seed::from(tmp);
      if (!br.get_word(params.k, ans.y)) return R::fail("truncated answer word y");
    } else {
      if (!br.get_word(params.n, ans.v)) return R::fail("truncated answer word v");
      if (cw) {
        size_t tb = cw_bits(params.n, params.w);
        std::vector<uint8_t> enc((tb + 7) / 8, 0);
        for (size_t i = 0; i < tb; ++i) {
          bool b;
          if (!br.get_bit(b)) return R::fail("truncated constant-weight word");
          if (b) enc[i / 8] |= uint8_t(1) << (i % 8);
        }
        auto dec = cw_decode(enc, params.n, params.w);
        if (!dec.ok()) return R::fail("constant-weight word: " + dec.error);
        ans.t = std::move(*dec.value);
      } else {
        if (!br.get_word(params.n, ans.t)) return R::fail("truncated answer word t");
      }
    }
  }
  if (!br.at_clean_end()) return R::fail("trailing data after signature records");
  return R::success(std::move(sig));
}

bool verify_signature_bytes(const PublicKey& pk, const ParamSet& params,
                            std::span<const uint8_t> msg, std::span<const uint8_t> sig_bytes) {
  auto blob = parse_signature(sig_bytes);
  if (!blob.ok()) return false;
  auto sig = decode_signature(*blob.value, params, msg);
  if (!sig.ok()) return false;
  return verify_signature(pk, params, msg, *sig.value);
}

SignatureSizeReport signature_size_report(const Signature& sig, const ParamSet& params,
                                          const CostModel& model) {
  SignatureSizeReport rep;
  rep.rounds = sig.rounds;
  const bool cw = sig.flags & kFlagCw;
  const uint64_t h = sig.hash_bits, s = sig.seed_bits;
  const uint64_t b0 = s + params.k;
  const uint64_t b1 = params.n + t_field_bits(params, cw);
  rep.realized_bits = 2 * h;
  for (const RoundAnswer& ans : sig.answers) {
    rep.realized_bits += h;
    if (ans.bit == 0) {
      rep.realized_bits += b0;
      ++rep.bit0_rounds;
    } else {
      rep.realized_bits += b1;
      ++rep.bit1_rounds;
    }
  }
  rep.expected_bits = 2.0 * h + double(sig.rounds) * (double(h) + 0.5 * double(b0 + b1));
  rep.file_bytes = serialize_signature(sig, params).size();
  (void)model;
  return rep;
}

}  // namespace dcid
