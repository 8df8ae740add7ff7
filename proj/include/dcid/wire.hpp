#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dcid/costmodel.hpp"
#include "dcid/parsed.hpp"
#include "dcid/protocol.hpp"

namespace dcid {

// ---- Messages ----

enum class Pass : uint8_t {
  commit1 = 1,
  shifts = 2,
  commit3 = 3,
  bits = 4,
  answers = 5,
  result = 6,
};
const char* to_string(Pass p);

// One framed protocol message. On a stream every frame is preceded by a
// 4-byte big-endian length; layouts are documented in docs/wire.md.
struct Message {
  std::array<uint8_t, 8> session{};
  Pass pass = Pass::commit1;
  std::vector<uint8_t> payload;
};

std::vector<uint8_t> frame(const Message& m);
Parsed<Message> parse_frame(std::span<const uint8_t> bytes);

// Session flags carried in the commit1 payload.
inline constexpr uint8_t kFlagCompressed = 0x01;
inline constexpr uint8_t kFlagCw = 0x02;
inline constexpr uint8_t kFlagSequential = 0x04;

struct Commit1Payload {
  uint16_t param_id = 0;
  uint16_t rounds = 0;
  uint8_t flags = 0;
  std::vector<Digest> digests;
};

unsigned shift_field_width(uint32_t k);

std::vector<uint8_t> build_commit1(const Commit1Payload& p, uint16_t hash_bits);
Parsed<Commit1Payload> parse_commit1(std::span<const uint8_t> payload, uint16_t hash_bits);

std::vector<uint8_t> build_shifts(std::span<const uint32_t> shifts, uint32_t k);
Parsed<std::vector<uint32_t>> parse_shifts(std::span<const uint8_t> payload, uint32_t k, uint16_t count);

std::vector<uint8_t> build_commit3(std::span<const Digest> digests);
Parsed<std::vector<Digest>> parse_commit3(std::span<const uint8_t> payload, uint16_t hash_bits,
                                          uint16_t count);

std::vector<uint8_t> build_bits(std::span<const uint8_t> bits);
Parsed<std::vector<uint8_t>> parse_bits(std::span<const uint8_t> payload, uint16_t count);

std::vector<uint8_t> build_answers(std::span<const RoundAnswer> answers, const ParamSet& params,
                                   const CostModel& model, bool compressed, bool cw);
Parsed<std::vector<RoundAnswer>> parse_answers(std::span<const uint8_t> payload,
                                               std::span<const uint8_t> bits, const ParamSet& params,
                                               const CostModel& model, bool compressed, bool cw);

struct ResultPayload {
  bool accepted = false;
  SessionDiag diag = SessionDiag::ok;
  int32_t failed_round = -1;
};
std::vector<uint8_t> build_result(const ResultPayload& r);
Parsed<ResultPayload> parse_result(std::span<const uint8_t> payload);

// ---- Transports ----

// Reliable ordered byte stream; both methods block up to the transport's
// timeout and report failure instead of throwing.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual bool send_all(std::span<const uint8_t> data) = 0;
  virtual bool recv_all(std::span<uint8_t> data) = 0;
  virtual void close() {}
};

// In-process duplex pipe; make_pipe returns the two connected ends.
std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> make_pipe(int timeout_ms = 30000);

class TcpTransport : public Transport {
 public:
  explicit TcpTransport(int fd, int timeout_ms);
  ~TcpTransport() override;
  TcpTransport(const TcpTransport&) = delete;
  TcpTransport& operator=(const TcpTransport&) = delete;

  bool send_all(std::span<const uint8_t> data) override;
  bool recv_all(std::span<uint8_t> data) override;
  void close() override;

 private:
  int fd_;
};

class TcpListener {
 public:
  // host may be empty (any interface); port 0 picks an ephemeral port.
  static Parsed<std::unique_ptr<TcpListener>> bind(const std::string& host, uint16_t port);
  ~TcpListener();
  uint16_t port() const { return port_; }
  std::unique_ptr<TcpTransport> accept(int timeout_ms);

 private:
  TcpListener(int fd, uint16_t port) : fd_(fd), port_(port) {}
  int fd_;
  uint16_t port_;
};

Parsed<std::unique_ptr<TcpTransport>> tcp_connect(const std::string& host, uint16_t port,
                                                  int timeout_ms);
Parsed<std::pair<std::string, uint16_t>> split_host_port(const std::string& spec);

bool send_message(Transport& t, const Message& m);
Parsed<Message> recv_message(Transport& t, size_t max_message_bytes);

// ---- Session runner ----

struct SessionOptions {
  uint16_t rounds = 0;  // 0: ParamSet.id_rounds
  bool compressed = true;
  bool sequential = false;
  CostModel model;
  int timeout_ms = 30000;
  size_t max_message_bytes = size_t{1} << 22;
};

struct SessionResult {
  VerifyOutcome outcome;
  Transcript transcript;
  // All frames in pass order (both directions); identical on both ends of
  // an undisturbed session.
  std::vector<std::vector<uint8_t>> log;
};

SessionResult run_prover(Transport& t, const SecretKey& sk, const PublicKey& pk,
                         const ParamSet& params, const SessionOptions& opt, Rng& rng);
SessionResult run_verifier(Transport& t, const PublicKey& pk, const ParamSet& params,
                           const SessionOptions& opt, Rng& rng);

// ---- Transcript persistence & replay ----

std::vector<uint8_t> encode_log(std::span<const std::vector<uint8_t>> frames);
Parsed<std::vector<std::vector<uint8_t>>> decode_log(std::span<const uint8_t> bytes);

// Deterministic re-verification of a stored session: challenges are taken
// from the logged verifier messages.
SessionResult replay_log(const PublicKey& pk, const ParamSet& params, const CostModel& model,
                         std::span<const std::vector<uint8_t>> frames);

// ---- Communication-cost accounting ----

struct CostLine {
  std::string label;
  double bits = 0;
  bool prover_to_verifier = true;
};

struct CostReport {
  std::vector<CostLine> lines;
  double total_bits = 0;
  double prover_bits = 0;
  double verifier_bits = 0;
  // Model average over the reveal-bit split: the accounting behind the
  // published per-protocol totals.
  double expected_total_bits = 0;
  double hashes_per_round = 0;
  uint64_t wire_bytes = 0;  // padded framed bytes, when a log is supplied
};

CostReport measure_cost(const Transcript& t, const ParamSet& params, const CostModel& model,
                        std::span<const std::vector<uint8_t>> log = {});

double expected_identification_bits(const ParamSet& params, uint16_t rounds, bool compressed,
                                    const CostModel& model);
double veron_expected_bits(const ParamSet& params, uint16_t rounds, const CostModel& model);
double signature_expected_bits(const ParamSet& params, uint16_t rounds, const CostModel& model);

// Documentation constants from the published comparison tables.
namespace published {
inline constexpr uint32_t new_scheme_bits = 20080;
inline constexpr uint32_t new_scheme_cw_bits = 17000;
inline constexpr uint32_t veron_bits = 35486;
inline constexpr uint32_t cve_bits = 31888;
inline constexpr uint32_t stern3_bits = 42019;
inline constexpr uint32_t stern5_bits = 62272;
inline constexpr uint32_t veron_rounds = 28;
inline constexpr uint32_t stern5_rounds = 16;
inline constexpr uint32_t new_scheme_rounds = 18;
}  // namespace published

}  // namespace dcid
