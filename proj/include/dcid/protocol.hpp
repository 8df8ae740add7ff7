#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dcid/commit.hpp"
#include "dcid/costmodel.hpp"
#include "dcid/keys.hpp"
#include "dcid/perm.hpp"

namespace dcid {

// One of the 2k per-round challenges: a blockwise shift and a reveal bit.
struct RoundChallenge {
  uint32_t shift = 0;
  uint8_t bit = 0;
};

// Per-round reveal. Exactly one variant is populated: bit 0 carries the
// sigma seed and y = u + m_r; bit 1 carries v = sigma(uG) and t =
// sigma(e_r). In compressed mode `revealed` holds the one leaf digest the
// verifier cannot recompute (c2 for bit 0, c1 for bit 1).
struct RoundAnswer {
  uint8_t bit = 0;
  Seed sigma_seed;
  BitWord y;
  BitWord v;
  BitWord t;
  Digest revealed;
};

struct RoundRecord {
  Digest c1, c2, c3;
  RoundChallenge ch;
  RoundAnswer answer;
};

struct Transcript {
  uint16_t param_id = 0;
  uint16_t rounds = 0;
  bool compressed = false;
  Digest master1, master2;  // empty when uncompressed
  std::vector<RoundRecord> record;
  bool accepted = false;
};

enum class SessionDiag : uint8_t {
  ok = 0,
  transport_error,
  desync,
  parse_error,
  param_mismatch,
  count_mismatch,
  master_mismatch,
  round_reject,
};
const char* to_string(SessionDiag d);

struct VerifyOutcome {
  bool accepted = false;
  SessionDiag diag = SessionDiag::ok;
  int32_t failed_round = -1;
};

// ---- Single-round building blocks (Fig-2-style 5-pass round) ----

struct RoundProverState {
  BitWord u;           // length k
  Permutation sigma;   // of {0..n-1}, seed-derived
  BitWord masked_code; // sigma(uG), cached
  Digest c1, c2, c3;
  uint32_t shift = 0;
  uint16_t hash_bits = 160;
};

// c1 = commit(sigma), c2 = commit(sigma(uG)); exposed so tests can pin u.
std::pair<Digest, Digest> round_commitments(const BitWord& u, const Permutation& sigma,
                                            const PublicKey& pk, const Committer& com);

RoundProverState prover_pass1(const PublicKey& pk, const CostModel& model, Rng& rng);
Digest prover_pass3(RoundProverState& st, const SecretKey& sk, const PublicKey& pk, uint32_t shift);
RoundAnswer prover_pass5(const RoundProverState& st, const SecretKey& sk, uint8_t bit, bool attach_leaf);

struct RoundLeaves {
  Digest c1, c2, c3;
};

// Recomputes the leaves an answer determines (the missing one is taken
// from answer.revealed, possibly empty). nullopt on malformed shapes or a
// failed weight check.
std::optional<RoundLeaves> reconstruct_round(const PublicKey& pk, const Committer& com,
                                             const RoundChallenge& ch, const RoundAnswer& ans);

// Explicit-commitment verification: total, never throws on bad answers.
bool verify_round(const PublicKey& pk, const Committer& com, const Digest& c1, const Digest& c2,
                  const Digest& c3, const RoundChallenge& ch, const RoundAnswer& ans);

// ---- Multi-round endpoints (parallel composition) ----

class ProverEndpoint {
 public:
  virtual ~ProverEndpoint() = default;
  // Compressed mode: one master digest; otherwise (c1,c2) leaf pairs.
  virtual std::vector<Digest> commit1() = 0;
  virtual std::vector<Digest> commit3(std::span<const uint32_t> shifts) = 0;
  virtual std::vector<RoundAnswer> answers(std::span<const uint8_t> bits) = 0;
};

class HonestProver : public ProverEndpoint {
 public:
  HonestProver(const SecretKey& sk, const PublicKey& pk, const ParamSet& params, uint16_t rounds,
               bool compressed, const CostModel& model, Rng& rng);
  std::vector<Digest> commit1() override;
  std::vector<Digest> commit3(std::span<const uint32_t> shifts) override;
  std::vector<RoundAnswer> answers(std::span<const uint8_t> bits) override;

  const Transcript& transcript() const { return transcript_; }

 private:
  SecretKey sk_;
  PublicKey pk_;
  uint16_t rounds_;
  bool compressed_;
  CostModel model_;
  Committer com_;
  Rng& rng_;
  std::vector<RoundProverState> states_;
  Transcript transcript_;
  int stage_ = 0;
};

enum class CheatStrategy { guess_b0, guess_b1 };

// Keyless prover that wins exactly the k challenges matching its guessed
// reveal bit. guess_b0 forges c3 = commit(sigma(uG + x_r)) after seeing r
// (pretending m_r = 0); guess_b1 commits to a random weight-w word in
// place of e_r, which no shift can invalidate.
class CheatProver : public ProverEndpoint {
 public:
  CheatProver(CheatStrategy strategy, const PublicKey& pk, const ParamSet& params, uint16_t rounds,
              bool compressed, const CostModel& model, Rng& rng);
  std::vector<Digest> commit1() override;
  std::vector<Digest> commit3(std::span<const uint32_t> shifts) override;
  std::vector<RoundAnswer> answers(std::span<const uint8_t> bits) override;

 private:
  struct RoundState {
    BitWord u;
    Permutation sigma;
    BitWord fake_t;  // guess_b1: the random weight-w stand-in for e_r
    Digest c1, c2, c3;
    uint32_t shift = 0;
  };
  CheatStrategy strategy_;
  PublicKey pk_;
  ParamSet params_;
  uint16_t rounds_;
  bool compressed_;
  CostModel model_;
  Committer com_;
  Rng& rng_;
  std::vector<RoundState> states_;
  std::vector<Digest> leaves1_;
};

class VerifierSession {
 public:
  VerifierSession(const PublicKey& pk, const ParamSet& params, uint16_t rounds, bool compressed,
                  const CostModel& model, Rng& rng);

  bool set_commit1(std::span<const Digest> digests);
  std::vector<uint32_t> shifts();
  bool set_commit3(std::span<const Digest> digests);
  std::vector<uint8_t> bits();
  VerifyOutcome finish(std::span<const RoundAnswer> answers);

  // Replay mode: use recorded challenges instead of drawing fresh ones.
  bool inject_shifts(std::span<const uint32_t> shifts);
  bool inject_bits(std::span<const uint8_t> bits);

  const Transcript& transcript() const { return transcript_; }

 private:
  PublicKey pk_;
  ParamSet params_;
  uint16_t rounds_;
  bool compressed_;
  CostModel model_;
  Committer com_;
  Rng& rng_;
  Digest master1_, master2_;
  std::vector<Digest> leaves1_, leaves3_;
  std::vector<uint32_t> shifts_;
  std::vector<uint8_t> bits_;
  Transcript transcript_;
  int stage_ = 0;
};

// Drives prover and verifier in process; the verifier's transcript (the
// binding view) is returned.
struct IdentifyResult {
  VerifyOutcome outcome;
  Transcript transcript;
};
IdentifyResult run_identification(ProverEndpoint& prover, VerifierSession& verifier);
IdentifyResult run_identification(const SecretKey& sk, const PublicKey& pk, const ParamSet& params,
                                  uint16_t rounds, bool compressed, const CostModel& model,
                                  Rng& prover_rng, Rng& verifier_rng);

// Checks a transcript's rounds (and masters in compressed mode) against
// the challenges it already contains. Deterministic replay verification.
VerifyOutcome verify_transcript(const PublicKey& pk, const CostModel& model, const Transcript& t);

// ---- Special soundness ----

struct ExtractResult {
  bool ok = false;
  SecretKey key;
  std::string note;  // "prefix mismatch" / "hash collision witness" when !ok
};

// Two accepting rounds with equal (c1,c2,r,c3) and opposite bits yield the
// secret, or exhibit a hash collision.
ExtractResult extract_secret(const PublicKey& pk, const CostModel& model, const RoundRecord& t0,
                             const RoundRecord& t1);

// ---- Zero-knowledge simulator ----

class ChallengeSource {
 public:
  virtual ~ChallengeSource() = default;
  virtual std::optional<uint32_t> next_shift() = 0;
  virtual std::optional<uint8_t> next_bit() = 0;
};

class RngChallengeSource : public ChallengeSource {
 public:
  RngChallengeSource(uint32_t k, Rng& rng) : k_(k), rng_(rng) {}
  std::optional<uint32_t> next_shift() override { return rng_.below(k_); }
  std::optional<uint8_t> next_bit() override { return rng_.bit(); }

 private:
  uint32_t k_;
  Rng& rng_;
};

struct SimStats {
  uint64_t attempts = 0;
  uint64_t rounds = 0;
};

// Builds an accepting transcript from the public key alone by anticipating
// the reveal bit and restarting a round when the guess misses (two
// attempts per round on average). nullopt when the challenge source runs
// out.
std::optional<Transcript> simulate_transcript(const PublicKey& pk, const ParamSet& params,
                                              uint16_t rounds, bool compressed,
                                              const CostModel& model, ChallengeSource& challenges,
                                              Rng& rng, SimStats* stats = nullptr);

// ---- 3-pass baseline round (challenge in {0,1,2}) ----

struct VeronState {
  BitWord u;
  Permutation sigma;
  Digest c1, c2, c3;
};
struct VeronAnswer {
  uint8_t challenge = 0;
  Seed sigma_seed;  // challenges 0 and 2
  BitWord word_k;   // u+m (challenge 0) or u (challenge 2)
  BitWord v, t;     // challenge 1
};

VeronState veron_commit(const SecretKey& sk, const PublicKey& pk, const CostModel& model, Rng& rng);
VeronAnswer veron_answer(const VeronState& st, const SecretKey& sk, const PublicKey& pk,
                         uint8_t challenge);
bool veron_verify(const PublicKey& pk, const Committer& com, const Digest& c1, const Digest& c2,
                  const Digest& c3, const VeronAnswer& ans);

struct VeronRoundResult {
  VeronState state;
  VeronAnswer answer;
  bool accepted = false;
};
VeronRoundResult veron_round(const SecretKey& sk, const PublicKey& pk, const CostModel& model,
                             Rng& rng, uint8_t challenge);

}  // namespace dcid
