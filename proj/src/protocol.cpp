#include "dcid/protocol.hpp"

#include <stdexcept>

namespace dcid {

namespace {

Digest random_digest(const Committer& com, Rng& rng) {
  Digest d;
  d.len = com.hash_bytes();
  std::array<uint8_t, 32> buf{};
  rng.fill(std::span<uint8_t>(buf.data(), d.len));
  d.bytes = buf;
  return d;
}

Digest commit_word(const Committer& com, uint8_t t, const BitWord& w) {
  auto bytes = w.to_bytes();
  return com.commit(t, bytes);
}

Digest commit_perm(const Committer& com, const Permutation& p) {
  auto bytes = perm_bytes(p);
  return com.commit(tag::c1, bytes);
}

}  // namespace

const char* to_string(SessionDiag d) {
  switch (d) {
    case SessionDiag::ok: return "ok";
    case SessionDiag::transport_error: return "transport error";
    case SessionDiag::desync: return "pass ordering violation";
    case SessionDiag::parse_error: return "malformed message";
    case SessionDiag::param_mismatch: return "parameter mismatch";
    case SessionDiag::count_mismatch: return "commitment count mismatch";
    case SessionDiag::master_mismatch: return "master commitment mismatch";
    case SessionDiag::round_reject: return "round verification failed";
  }
  return "unknown";
}

std::pair<Digest, Digest> round_commitments(const BitWord& u, const Permutation& sigma,
                                            const PublicKey& pk, const Committer& com) {
  BitWord masked = apply_perm(sigma, encode(pk.code, u));
  return {commit_perm(com, sigma), commit_word(com, tag::c2, masked)};
}

RoundProverState prover_pass1(const PublicKey& pk, const CostModel& model, Rng& rng) {
  RoundProverState st;
  st.hash_bits = model.hash_bits;
  st.u = rng.word(pk.code.k);
  st.sigma = random_perm(static_cast<uint32_t>(pk.x.len()), model.seed_bits, rng);
  st.masked_code = apply_perm(st.sigma, encode(pk.code, st.u));
  Committer com(model.hash_bits);
  st.c1 = commit_perm(com, st.sigma);
  st.c2 = commit_word(com, tag::c2, st.masked_code);
  return st;
}

Digest prover_pass3(RoundProverState& st, const SecretKey& sk, const PublicKey& pk, uint32_t shift) {
  if (shift >= pk.code.k) throw std::invalid_argument("prover_pass3: shift out of range");
  st.shift = shift;
  BitWord masked_err = apply_perm(st.sigma, block_rot(sk.e, shift));
  Committer com(st.hash_bits);
  st.c3 = commit_word(com, tag::c3, st.masked_code ^ masked_err);
  return st.c3;
}

RoundAnswer prover_pass5(const RoundProverState& st, const SecretKey& sk, uint8_t bit,
                         bool attach_leaf) {
  RoundAnswer ans;
  ans.bit = bit;
  if (bit == 0) {
    ans.sigma_seed = st.sigma.seed;
    ans.y = st.u ^ rot_block(sk.m, st.shift);
    if (attach_leaf) ans.revealed = st.c2;
  } else {
    ans.v = st.masked_code;
    ans.t = apply_perm(st.sigma, block_rot(sk.e, st.shift));
    if (attach_leaf) ans.revealed = st.c1;
  }
  return ans;
}

std::optional<RoundLeaves> reconstruct_round(const PublicKey& pk, const Committer& com,
                                             const RoundChallenge& ch, const RoundAnswer& ans) {
  const uint32_t k = pk.code.k;
  const size_t n = pk.x.len();
  if (ch.shift >= k || ch.bit > 1 || ans.bit != ch.bit) return std::nullopt;
  RoundLeaves out;
  if (ch.bit == 0) {
    if (ans.y.len() != k || ans.sigma_seed.len == 0) return std::nullopt;
    Permutation sigma = perm_from_seed(static_cast<uint32_t>(n), ans.sigma_seed);
    out.c1 = commit_perm(com, sigma);
    BitWord x_r = block_rot(pk.x, ch.shift);
    out.c3 = commit_word(com, tag::c3, apply_perm(sigma, encode(pk.code, ans.y) ^ x_r));
    out.c2 = ans.revealed;
  } else {
    if (ans.v.len() != n || ans.t.len() != n) return std::nullopt;
    if (ans.t.weight() != pk.w) return std::nullopt;
    out.c2 = commit_word(com, tag::c2, ans.v);
    out.c3 = commit_word(com, tag::c3, ans.v ^ ans.t);
    out.c1 = ans.revealed;
  }
  return out;
}

bool verify_round(const PublicKey& pk, const Committer& com, const Digest& c1, const Digest& c2,
                  const Digest& c3, const RoundChallenge& ch, const RoundAnswer& ans) {
  auto leaves = reconstruct_round(pk, com, ch, ans);
  if (!leaves) return false;
  if (ch.bit == 0) return leaves->c1 == c1 && leaves->c3 == c3;
  return leaves->c2 == c2 && leaves->c3 == c3;
}

// ---- HonestProver ----

HonestProver::HonestProver(const SecretKey& sk, const PublicKey& pk, const ParamSet& params,
                           uint16_t rounds, bool compressed, const CostModel& model, Rng& rng)
    : sk_(sk),
      pk_(pk),
      rounds_(rounds),
      compressed_(compressed),
      model_(model),
      com_(model.hash_bits),
      rng_(rng) {
  if (rounds == 0) throw std::invalid_argument("prover: rounds must be >= 1");
  transcript_.param_id = params.id;
  transcript_.rounds = rounds;
  transcript_.compressed = compressed;
}

std::vector<Digest> HonestProver::commit1() {
  if (stage_ != 0) throw std::logic_error("prover: commit1 out of order");
  stage_ = 1;
  states_.reserve(rounds_);
  std::vector<Digest> leaves;
  leaves.reserve(2 * size_t{rounds_});
  for (uint16_t j = 0; j < rounds_; ++j) {
    states_.push_back(prover_pass1(pk_, model_, rng_));
    leaves.push_back(states_.back().c1);
    leaves.push_back(states_.back().c2);
  }
  transcript_.record.resize(rounds_);
  for (uint16_t j = 0; j < rounds_; ++j) {
    transcript_.record[j].c1 = states_[j].c1;
    transcript_.record[j].c2 = states_[j].c2;
  }
  if (!compressed_) return leaves;
  transcript_.master1 = com_.compress(leaves).digest;
  return {transcript_.master1};
}

std::vector<Digest> HonestProver::commit3(std::span<const uint32_t> shifts) {
  if (stage_ != 1) throw std::logic_error("prover: commit3 out of order");
  if (shifts.size() != rounds_) throw std::invalid_argument("prover: wrong shift count");
  stage_ = 2;
  std::vector<Digest> leaves;
  leaves.reserve(rounds_);
  for (uint16_t j = 0; j < rounds_; ++j) {
    leaves.push_back(prover_pass3(states_[j], sk_, pk_, shifts[j]));
    transcript_.record[j].c3 = leaves.back();
    transcript_.record[j].ch.shift = shifts[j];
  }
  if (!compressed_) return leaves;
  transcript_.master2 = com_.compress(leaves).digest;
  return {transcript_.master2};
}

std::vector<RoundAnswer> HonestProver::answers(std::span<const uint8_t> bits) {
  if (stage_ != 2) throw std::logic_error("prover: answers out of order");
  if (bits.size() != rounds_) throw std::invalid_argument("prover: wrong bit count");
  stage_ = 3;
  std::vector<RoundAnswer> out;
  out.reserve(rounds_);
  for (uint16_t j = 0; j < rounds_; ++j) {
    out.push_back(prover_pass5(states_[j], sk_, bits[j] & 1, compressed_));
    transcript_.record[j].ch.bit = bits[j] & 1;
    transcript_.record[j].answer = out.back();
  }
  return out;
}

// ---- CheatProver ----

CheatProver::CheatProver(CheatStrategy strategy, const PublicKey& pk, const ParamSet& params,
                         uint16_t rounds, bool compressed, const CostModel& model, Rng& rng)
    : strategy_(strategy),
      pk_(pk),
      params_(params),
      rounds_(rounds),
      compressed_(compressed),
      model_(model),
      com_(model.hash_bits),
      rng_(rng) {}

std::vector<Digest> CheatProver::commit1() {
  const uint32_t n = params_.n;
  states_.clear();
  leaves1_.clear();
  for (uint16_t j = 0; j < rounds_; ++j) {
    RoundState st;
    st.u = rng_.word(params_.k);
    st.sigma = random_perm(n, model_.seed_bits, rng_);
    if (strategy_ == CheatStrategy::guess_b0) {
      // c2 is never opened on the guessed branch; commit to noise.
      st.c1 = commit_perm(com_, st.sigma);
      st.c2 = random_digest(com_, rng_);
    } else {
      st.fake_t = sample_fixed_weight(n, params_.w, rng_);
      st.c1 = random_digest(com_, rng_);
      st.c2 = commit_word(com_, tag::c2, apply_perm(st.sigma, encode(pk_.code, st.u)));
    }
    leaves1_.push_back(st.c1);
    leaves1_.push_back(st.c2);
    states_.push_back(std::move(st));
  }
  if (!compressed_) return leaves1_;
  return {com_.compress(leaves1_).digest};
}

std::vector<Digest> CheatProver::commit3(std::span<const uint32_t> shifts) {
  std::vector<Digest> leaves;
  for (uint16_t j = 0; j < rounds_; ++j) {
    RoundState& st = states_[j];
    st.shift = shifts[j];
    BitWord masked = apply_perm(st.sigma, encode(pk_.code, st.u));
    if (strategy_ == CheatStrategy::guess_b0) {
      // Answer y = u passes iff c3 opens sigma(uG + x_r): forge it now.
      st.c3 = commit_word(com_, tag::c3, apply_perm(st.sigma, encode(pk_.code, st.u) ^ block_rot(pk_.x, st.shift)));
    } else {
      // Shift-independent: a random weight-w word stands in for e_r.
      st.c3 = commit_word(com_, tag::c3, masked ^ st.fake_t);
    }
    leaves.push_back(st.c3);
  }
  if (!compressed_) return leaves;
  return {com_.compress(leaves).digest};
}

std::vector<RoundAnswer> CheatProver::answers(std::span<const uint8_t> bits) {
  std::vector<RoundAnswer> out;
  for (uint16_t j = 0; j < rounds_; ++j) {
    const RoundState& st = states_[j];
    RoundAnswer ans;
    ans.bit = bits[j] & 1;
    if (ans.bit == 0) {
      ans.sigma_seed = st.sigma.seed;
      ans.y = st.u;  // pretends m_r = 0
      if (compressed_) ans.revealed = st.c2;
    } else {
      ans.v = apply_perm(st.sigma, encode(pk_.code, st.u));
      ans.t = st.fake_t.len() ? st.fake_t : sample_fixed_weight(params_.n, params_.w, rng_);
      if (compressed_) ans.revealed = st.c1;
    }
    out.push_back(std::move(ans));
  }
  return out;
}

// ---- VerifierSession ----

VerifierSession::VerifierSession(const PublicKey& pk, const ParamSet& params, uint16_t rounds,
                                 bool compressed, const CostModel& model, Rng& rng)
    : pk_(pk),
      params_(params),
      rounds_(rounds),
      compressed_(compressed),
      model_(model),
      com_(model.hash_bits),
      rng_(rng) {
  if (rounds == 0) throw std::invalid_argument("verifier: rounds must be >= 1");
  transcript_.param_id = params.id;
  transcript_.rounds = rounds;
  transcript_.compressed = compressed;
}

bool VerifierSession::set_commit1(std::span<const Digest> digests) {
  if (stage_ != 0) return false;
  const size_t expect = compressed_ ? 1 : 2 * size_t{rounds_};
  if (digests.size() != expect) return false;
  if (compressed_)
    master1_ = digests[0];
  else
    leaves1_.assign(digests.begin(), digests.end());
  stage_ = 1;
  return true;
}

std::vector<uint32_t> VerifierSession::shifts() {
  if (stage_ != 1) throw std::logic_error("verifier: shifts out of order");
  stage_ = 2;
  shifts_.resize(rounds_);
  for (auto& s : shifts_) s = rng_.below(params_.k);
  return shifts_;
}

bool VerifierSession::set_commit3(std::span<const Digest> digests) {
  if (stage_ != 2) return false;
  const size_t expect = compressed_ ? 1 : rounds_;
  if (digests.size() != expect) return false;
  if (compressed_)
    master2_ = digests[0];
  else
    leaves3_.assign(digests.begin(), digests.end());
  stage_ = 3;
  return true;
}

std::vector<uint8_t> VerifierSession::bits() {
  if (stage_ != 3) throw std::logic_error("verifier: bits out of order");
  stage_ = 4;
  bits_.resize(rounds_);
  for (auto& b : bits_) b = rng_.bit();
  return bits_;
}

bool VerifierSession::inject_shifts(std::span<const uint32_t> shifts) {
  if (stage_ != 1 || shifts.size() != rounds_) return false;
  for (uint32_t s : shifts)
    if (s >= params_.k) return false;
  shifts_.assign(shifts.begin(), shifts.end());
  stage_ = 2;
  return true;
}

bool VerifierSession::inject_bits(std::span<const uint8_t> bits) {
  if (stage_ != 3 || bits.size() != rounds_) return false;
  bits_.assign(bits.begin(), bits.end());
  stage_ = 4;
  return true;
}

VerifyOutcome VerifierSession::finish(std::span<const RoundAnswer> answers) {
  if (stage_ != 4) return {false, SessionDiag::desync, -1};
  stage_ = 5;
  if (answers.size() != rounds_) return {false, SessionDiag::count_mismatch, -1};

  transcript_.record.resize(rounds_);
  std::vector<Digest> all1, all3;
  all1.reserve(2 * size_t{rounds_});
  all3.reserve(rounds_);

  for (uint16_t j = 0; j < rounds_; ++j) {
    RoundChallenge ch{shifts_[j], bits_[j]};
    const RoundAnswer& ans = answers[j];
    if (compressed_ && ans.revealed.len != com_.hash_bytes())
      return {false, SessionDiag::round_reject, j};
    auto leaves = reconstruct_round(pk_, com_, ch, ans);
    if (!leaves) return {false, SessionDiag::round_reject, j};

    RoundRecord& rec = transcript_.record[j];
    rec.ch = ch;
    rec.answer = ans;
    if (compressed_) {
      rec.c1 = leaves->c1;
      rec.c2 = leaves->c2;
      rec.c3 = leaves->c3;
      all1.push_back(leaves->c1);
      all1.push_back(leaves->c2);
      all3.push_back(leaves->c3);
    } else {
      rec.c1 = leaves1_[2 * size_t{j}];
      rec.c2 = leaves1_[2 * size_t{j} + 1];
      rec.c3 = leaves3_[j];
      const bool ok = (ch.bit == 0) ? (leaves->c1 == rec.c1 && leaves->c3 == rec.c3)
                                    : (leaves->c2 == rec.c2 && leaves->c3 == rec.c3);
      if (!ok) return {false, SessionDiag::round_reject, j};
    }
  }

  if (compressed_) {
    MasterCommitment m1{master1_, static_cast<uint32_t>(all1.size())};
    MasterCommitment m2{master2_, static_cast<uint32_t>(all3.size())};
    transcript_.master1 = master1_;
    transcript_.master2 = master2_;
    if (!com_.verify_master(m1, all1) || !com_.verify_master(m2, all3))
      return {false, SessionDiag::master_mismatch, -1};
  }
  transcript_.accepted = true;
  return {true, SessionDiag::ok, -1};
}

// ---- Orchestration ----

IdentifyResult run_identification(ProverEndpoint& prover, VerifierSession& verifier) {
  IdentifyResult res;
  auto c1 = prover.commit1();
  if (!verifier.set_commit1(c1)) {
    res.outcome = {false, SessionDiag::count_mismatch, -1};
    res.transcript = verifier.transcript();
    return res;
  }
  auto sh = verifier.shifts();
  auto c3 = prover.commit3(sh);
  if (!verifier.set_commit3(c3)) {
    res.outcome = {false, SessionDiag::count_mismatch, -1};
    res.transcript = verifier.transcript();
    return res;
  }
  auto bb = verifier.bits();
  auto ans = prover.answers(bb);
  res.outcome = verifier.finish(ans);
  res.transcript = verifier.transcript();
  return res;
}

IdentifyResult run_identification(const SecretKey& sk, const PublicKey& pk, const ParamSet& params,
                                  uint16_t rounds, bool compressed, const CostModel& model,
                                  Rng& prover_rng, Rng& verifier_rng) {
  HonestProver prover(sk, pk, params, rounds, compressed, model, prover_rng);
  VerifierSession verifier(pk, params, rounds, compressed, model, verifier_rng);
  return run_identification(prover, verifier);
}

VerifyOutcome verify_transcript(const PublicKey& pk, const CostModel& model, const Transcript& t) {
  Committer com(model.hash_bits);
  if (t.record.size() != t.rounds || t.rounds == 0) return {false, SessionDiag::count_mismatch, -1};
  std::vector<Digest> all1, all3;
  for (uint16_t j = 0; j < t.rounds; ++j) {
    const RoundRecord& rec = t.record[j];
    if (!verify_round(pk, com, rec.c1, rec.c2, rec.c3, rec.ch, rec.answer))
      return {false, SessionDiag::round_reject, j};
    all1.push_back(rec.c1);
    all1.push_back(rec.c2);
    all3.push_back(rec.c3);
  }
  if (t.compressed) {
    MasterCommitment m1{t.master1, static_cast<uint32_t>(all1.size())};
    MasterCommitment m2{t.master2, static_cast<uint32_t>(all3.size())};
    if (!com.verify_master(m1, all1) || !com.verify_master(m2, all3))
      return {false, SessionDiag::master_mismatch, -1};
  }
  return {true, SessionDiag::ok, -1};
}

// ---- Special soundness ----

ExtractResult extract_secret(const PublicKey& pk, const CostModel& model, const RoundRecord& t0,
                             const RoundRecord& t1) {
  ExtractResult res;
  if (t0.answer.bit != 0 || t1.answer.bit != 1) {
    res.note = "prefix mismatch: need one bit-0 and one bit-1 transcript";
    return res;
  }
  if (t0.ch.shift != t1.ch.shift || !(t0.c1 == t1.c1) || !(t0.c2 == t1.c2) || !(t0.c3 == t1.c3)) {
    res.note = "prefix mismatch: transcripts disagree on commitments or shift";
    return res;
  }
  Committer com(model.hash_bits);
  if (!verify_round(pk, com, t0.c1, t0.c2, t0.c3, t0.ch, t0.answer) ||
      !verify_round(pk, com, t1.c1, t1.c2, t1.c3, t1.ch, t1.answer)) {
    res.note = "prefix mismatch: transcript does not verify";
    return res;
  }

  const uint32_t k = pk.code.k;
  Permutation sigma = perm_from_seed(static_cast<uint32_t>(pk.x.len()), t0.answer.sigma_seed);
  BitWord e_r = apply_perm(invert_perm(sigma), t1.answer.t);
  BitWord e = block_rot(e_r, (k - t0.ch.shift) % k);
  BitWord m = (pk.x ^ e).first_half();
  SecretKey sk{std::move(e), std::move(m)};
  if (!keypair_consistent(sk, pk)) {
    // Both rounds verify yet open c3 to different preimages.
    res.note = "hash collision witness";
    return res;
  }
  res.ok = true;
  res.key = std::move(sk);
  return res;
}

// ---- Simulator ----

std::optional<Transcript> simulate_transcript(const PublicKey& pk, const ParamSet& params,
                                              uint16_t rounds, bool compressed,
                                              const CostModel& model, ChallengeSource& challenges,
                                              Rng& rng, SimStats* stats) {
  Committer com(model.hash_bits);
  const uint32_t n = params.n;
  Transcript t;
  t.param_id = params.id;
  t.rounds = rounds;
  t.compressed = compressed;
  t.record.resize(rounds);

  for (uint16_t j = 0; j < rounds; ++j) {
    for (;;) {
      if (stats) ++stats->attempts;
      uint8_t guess = rng.bit();
      RoundRecord rec;
      if (guess == 0) {
        Permutation sigma = random_perm(n, model.seed_bits, rng);
        BitWord y = rng.word(params.k);
        rec.c1 = commit_perm(com, sigma);
        rec.c2 = random_digest(com, rng);
        auto shift = challenges.next_shift();
        if (!shift) return std::nullopt;
        rec.ch.shift = *shift;
        rec.c3 = commit_word(com, tag::c3,
                             apply_perm(sigma, encode(pk.code, y) ^ block_rot(pk.x, *shift)));
        auto bit = challenges.next_bit();
        if (!bit) return std::nullopt;
        if (*bit != 0) continue;  // wrong guess: restart the round
        rec.ch.bit = 0;
        rec.answer.bit = 0;
        rec.answer.sigma_seed = sigma.seed;
        rec.answer.y = std::move(y);
        if (compressed) rec.answer.revealed = rec.c2;
      } else {
        Permutation pi = random_perm(n, model.seed_bits, rng);
        BitWord u = rng.word(params.k);
        BitWord z = sample_fixed_weight(n, params.w, rng);
        BitWord v = apply_perm(pi, encode(pk.code, u));
        rec.c1 = random_digest(com, rng);
        rec.c2 = commit_word(com, tag::c2, v);
        auto shift = challenges.next_shift();
        if (!shift) return std::nullopt;
        rec.ch.shift = *shift;
        rec.c3 = commit_word(com, tag::c3, v ^ z);
        auto bit = challenges.next_bit();
        if (!bit) return std::nullopt;
        if (*bit != 1) continue;
        rec.ch.bit = 1;
        rec.answer.bit = 1;
        rec.answer.v = std::move(v);
        rec.answer.t = std::move(z);
        if (compressed) rec.answer.revealed = rec.c1;
      }
      t.record[j] = std::move(rec);
      if (stats) ++stats->rounds;
      break;
    }
  }

  if (compressed) {
    std::vector<Digest> all1, all3;
    for (const auto& rec : t.record) {
      all1.push_back(rec.c1);
      all1.push_back(rec.c2);
      all3.push_back(rec.c3);
    }
    t.master1 = com.compress(all1).digest;
    t.master2 = com.compress(all3).digest;
  }
  t.accepted = true;
  return t;
}

// ---- 3-pass baseline ----

VeronState veron_commit(const SecretKey& sk, const PublicKey& pk, const CostModel& model, Rng& rng) {
  VeronState st;
  st.u = rng.word(pk.code.k);
  st.sigma = random_perm(static_cast<uint32_t>(pk.x.len()), model.seed_bits, rng);
  Committer com(model.hash_bits);
  st.c1 = commit_perm(com, st.sigma);
  st.c2 = commit_word(com, tag::c2, apply_perm(st.sigma, encode(pk.code, st.u ^ sk.m)));
  st.c3 = commit_word(com, tag::c3, apply_perm(st.sigma, encode(pk.code, st.u) ^ pk.x));
  return st;
}

VeronAnswer veron_answer(const VeronState& st, const SecretKey& sk, const PublicKey& pk,
                         uint8_t challenge) {
  VeronAnswer ans;
  ans.challenge = challenge;
  switch (challenge) {
    case 0:
      ans.word_k = st.u ^ sk.m;
      ans.sigma_seed = st.sigma.seed;
      break;
    case 1:
      ans.v = apply_perm(st.sigma, encode(pk.code, st.u ^ sk.m));
      ans.t = apply_perm(st.sigma, sk.e);
      break;
    case 2:
      ans.word_k = st.u;
      ans.sigma_seed = st.sigma.seed;
      break;
    default:
      throw std::invalid_argument("veron_answer: challenge out of range");
  }
  return ans;
}

bool veron_verify(const PublicKey& pk, const Committer& com, const Digest& c1, const Digest& c2,
                  const Digest& c3, const VeronAnswer& ans) {
  const uint32_t k = pk.code.k;
  const size_t n = pk.x.len();
  switch (ans.challenge) {
    case 0: {
      if (ans.word_k.len() != k || ans.sigma_seed.len == 0) return false;
      Permutation sigma = perm_from_seed(static_cast<uint32_t>(n), ans.sigma_seed);
      if (!(commit_perm(com, sigma) == c1)) return false;
      return commit_word(com, tag::c2, apply_perm(sigma, encode(pk.code, ans.word_k))) == c2;
    }
    case 1: {
      if (ans.v.len() != n || ans.t.len() != n || ans.t.weight() != pk.w) return false;
      if (!(commit_word(com, tag::c2, ans.v) == c2)) return false;
      return commit_word(com, tag::c3, ans.v ^ ans.t) == c3;
    }
    case 2: {
      if (ans.word_k.len() != k || ans.sigma_seed.len == 0) return false;
      Permutation sigma = perm_from_seed(static_cast<uint32_t>(n), ans.sigma_seed);
      if (!(commit_perm(com, sigma) == c1)) return false;
      return commit_word(com, tag::c3, apply_perm(sigma, encode(pk.code, ans.word_k) ^ pk.x)) == c3;
    }
    default:
      return false;
  }
}

VeronRoundResult veron_round(const SecretKey& sk, const PublicKey& pk, const CostModel& model,
                             Rng& rng, uint8_t challenge) {
  VeronRoundResult res;
  res.state = veron_commit(sk, pk, model, rng);
  res.answer = veron_answer(res.state, sk, pk, challenge);
  Committer com(model.hash_bits);
  res.accepted =
      veron_verify(pk, com, res.state.c1, res.state.c2, res.state.c3, res.answer);
  return res;
}

}  // namespace dcid
