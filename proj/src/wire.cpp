#include "dcid/wire.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <bit>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <stdexcept>

#include "dcid/bitio.hpp"
#include "dcid/cw.hpp"

namespace dcid {

const char* to_string(Pass p) {
  switch (p) {
    case Pass::commit1: return "commit1";
    case Pass::shifts: return "shifts";
    case Pass::commit3: return "commit3";
    case Pass::bits: return "bits";
    case Pass::answers: return "answers";
    case Pass::result: return "result";
  }
  return "unknown";
}

// ---- Frames & payloads ----

std::vector<uint8_t> frame(const Message& m) {
  std::vector<uint8_t> out;
  out.reserve(9 + m.payload.size());
  out.insert(out.end(), m.session.begin(), m.session.end());
  out.push_back(static_cast<uint8_t>(m.pass));
  out.insert(out.end(), m.payload.begin(), m.payload.end());
  return out;
}

Parsed<Message> parse_frame(std::span<const uint8_t> bytes) {
  using R = Parsed<Message>;
  if (bytes.size() < 9) return R::fail("truncated frame: missing session id or pass tag");
  Message m;
  std::copy(bytes.begin(), bytes.begin() + 8, m.session.begin());
  uint8_t p = bytes[8];
  if (p < 1 || p > 6) return R::fail("bad pass tag");
  m.pass = static_cast<Pass>(p);
  m.payload.assign(bytes.begin() + 9, bytes.end());
  return R::success(std::move(m));
}

unsigned shift_field_width(uint32_t k) {
  return k <= 1 ? 0 : static_cast<unsigned>(std::bit_width(k - 1));
}

namespace {

bool read_digest(BitReader& br, uint16_t hash_bits, Digest& out) {
  std::vector<uint8_t> tmp;
  if (!br.get_bytes(hash_bits / 8, tmp)) return false;
  out.len = static_cast<uint8_t>(hash_bits / 8);
  std::copy(tmp.begin(), tmp.end(), out.bytes.begin());
  return true;
}

constexpr uint16_t kMaxRounds = 4096;

}  // namespace

std::vector<uint8_t> build_commit1(const Commit1Payload& p, uint16_t hash_bits) {
  BitWriter bw;
  bw.put_bits(p.param_id, 16);
  bw.put_bits(p.rounds, 16);
  bw.put_bits(p.flags, 8);
  for (const Digest& d : p.digests) bw.put_bytes(d.view());
  (void)hash_bits;
  return bw.take();
}

Parsed<Commit1Payload> parse_commit1(std::span<const uint8_t> payload, uint16_t hash_bits) {
  using R = Parsed<Commit1Payload>;
  if (payload.size() < 5) return R::fail("commit1: truncated header");
  Commit1Payload p;
  p.param_id = static_cast<uint16_t>(payload[0] | payload[1] << 8);
  p.rounds = static_cast<uint16_t>(payload[2] | payload[3] << 8);
  p.flags = payload[4];
  if (p.rounds == 0 || p.rounds > kMaxRounds) return R::fail("commit1: round count out of range");
  if (p.flags & ~(kFlagCompressed | kFlagCw | kFlagSequential))
    return R::fail("commit1: unknown flags");
  if ((p.flags & kFlagCompressed) && (p.flags & kFlagSequential))
    return R::fail("commit1: compressed and sequential are exclusive");
  const size_t hb = hash_bits / 8;
  const size_t body = payload.size() - 5;
  if (body == 0 || body % hb) return R::fail("commit1: truncated digest list");
  const size_t count = body / hb;
  if (count > 2 * size_t{kMaxRounds}) return R::fail("commit1: digest list too long");
  BitReader br(payload.subspan(5));
  p.digests.resize(count);
  for (auto& d : p.digests)
    if (!read_digest(br, hash_bits, d)) return R::fail("commit1: truncated digest");
  return R::success(std::move(p));
}

std::vector<uint8_t> build_shifts(std::span<const uint32_t> shifts, uint32_t k) {
  BitWriter bw;
  const unsigned width = shift_field_width(k);
  for (uint32_t s : shifts) bw.put_bits(s, width);
  return bw.take();
}

Parsed<std::vector<uint32_t>> parse_shifts(std::span<const uint8_t> payload, uint32_t k,
                                           uint16_t count) {
  using R = Parsed<std::vector<uint32_t>>;
  BitReader br(payload);
  const unsigned width = shift_field_width(k);
  std::vector<uint32_t> out(count);
  for (auto& s : out) {
    uint64_t v;
    if (!br.get_bits(width, v)) return R::fail("shifts: truncated shift value");
    if (v >= k) return R::fail("shifts: shift out of range");
    s = static_cast<uint32_t>(v);
  }
  if (!br.at_clean_end()) return R::fail("shifts: trailing data");
  return R::success(std::move(out));
}

std::vector<uint8_t> build_commit3(std::span<const Digest> digests) {
  BitWriter bw;
  for (const Digest& d : digests) bw.put_bytes(d.view());
  return bw.take();
}

Parsed<std::vector<Digest>> parse_commit3(std::span<const uint8_t> payload, uint16_t hash_bits,
                                          uint16_t count) {
  using R = Parsed<std::vector<Digest>>;
  if (payload.size() != size_t{count} * (hash_bits / 8)) return R::fail("commit3: truncated digest list");
  BitReader br(payload);
  std::vector<Digest> out(count);
  for (auto& d : out)
    if (!read_digest(br, hash_bits, d)) return R::fail("commit3: truncated digest");
  return R::success(std::move(out));
}

std::vector<uint8_t> build_bits(std::span<const uint8_t> bits) {
  BitWriter bw;
  for (uint8_t b : bits) bw.put_bit(b & 1);
  return bw.take();
}

Parsed<std::vector<uint8_t>> parse_bits(std::span<const uint8_t> payload, uint16_t count) {
  using R = Parsed<std::vector<uint8_t>>;
  BitReader br(payload);
  std::vector<uint8_t> out(count);
  for (auto& b : out) {
    bool bit;
    if (!br.get_bit(bit)) return R::fail("bits: truncated bit list");
    b = bit ? 1 : 0;
  }
  if (!br.at_clean_end()) return R::fail("bits: trailing data");
  return R::success(std::move(out));
}

std::vector<uint8_t> build_answers(std::span<const RoundAnswer> answers, const ParamSet& params,
                                   const CostModel& model, bool compressed, bool cw) {
  BitWriter bw;
  for (const RoundAnswer& ans : answers) {
    if (compressed) bw.put_bytes(ans.revealed.view());
    if (ans.bit == 0) {
      bw.put_bytes(ans.sigma_seed.view());
      bw.put_word(ans.y);
    } else {
      bw.put_word(ans.v);
      if (cw) {
        auto enc = cw_encode(ans.t, params.w);
        if (!enc.ok()) throw std::logic_error("build_answers: cw encoding failed");
        size_t bits = cw_bits(params.n, params.w);
        for (size_t i = 0; i < bits; ++i) bw.put_bit(((*enc.value)[i / 8] >> (i % 8)) & 1);
      } else {
        bw.put_word(ans.t);
      }
    }
  }
  (void)model;
  return bw.take();
}

Parsed<std::vector<RoundAnswer>> parse_answers(std::span<const uint8_t> payload,
                                               std::span<const uint8_t> bits, const ParamSet& params,
                                               const CostModel& model, bool compressed, bool cw) {
  using R = Parsed<std::vector<RoundAnswer>>;
  BitReader br(payload);
  std::vector<RoundAnswer> out(bits.size());
  const size_t hb = model.hash_bits / 8;
  const size_t sb = model.seed_bits / 8;
  std::vector<uint8_t> tmp;
  for (size_t j = 0; j < bits.size(); ++j) {
    RoundAnswer& ans = out[j];
    ans.bit = bits[j] & 1;
    if (compressed) {
      if (!br.get_bytes(hb, tmp)) return R::fail("answers: truncated revealed digest");
      ans.revealed.len = static_cast<uint8_t>(hb);
      std::copy(tmp.begin(), tmp.end(), ans.revealed.bytes.begin());
    }
    if (ans.bit == 0) {
      if (!br.get_bytes(sb, tmp)) return R::fail("answers: truncated sigma seed");
      ans.sigma_seed = Seed::from(tmp);
      if (!br.get_word(params.k, ans.y)) return R::fail("answers: truncated word y");
    } else {
      if (!br.get_word(params.n, ans.v)) return R::fail("answers: truncated word v");
      if (cw) {
        size_t tb = cw_bits(params.n, params.w);
        std::vector<uint8_t> enc((tb + 7) / 8, 0);
        for (size_t i = 0; i < tb; ++i) {
          bool b;
          if (!br.get_bit(b)) return R::fail("answers: truncated constant-weight word");
          if (b) enc[i / 8] |= uint8_t(1) << (i % 8);
        }
        auto dec = cw_decode(enc, params.n, params.w);
        if (!dec.ok()) return R::fail("answers: " + dec.error);
        ans.t = std::move(*dec.value);
      } else {
        if (!br.get_word(params.n, ans.t)) return R::fail("answers: truncated word t");
      }
    }
  }
  if (!br.at_clean_end()) return R::fail("answers: trailing data");
  return R::success(std::move(out));
}

std::vector<uint8_t> build_result(const ResultPayload& r) {
  std::vector<uint8_t> out(6);
  out[0] = r.accepted ? 1 : 0;
  out[1] = static_cast<uint8_t>(r.diag);
  uint32_t fr = static_cast<uint32_t>(r.failed_round);
  for (int i = 0; i < 4; ++i) out[2 + i] = static_cast<uint8_t>(fr >> (8 * i));
  return out;
}

Parsed<ResultPayload> parse_result(std::span<const uint8_t> payload) {
  using R = Parsed<ResultPayload>;
  if (payload.size() != 6) return R::fail("result: wrong payload size");
  if (payload[0] > 1) return R::fail("result: bad accept flag");
  if (payload[1] > static_cast<uint8_t>(SessionDiag::round_reject)) return R::fail("result: bad diag");
  ResultPayload r;
  r.accepted = payload[0] == 1;
  r.diag = static_cast<SessionDiag>(payload[1]);
  uint32_t fr = 0;
  for (int i = 0; i < 4; ++i) fr |= uint32_t(payload[2 + i]) << (8 * i);
  r.failed_round = static_cast<int32_t>(fr);
  return R::success(r);
}

// ---- Pipe transport ----

namespace {

struct PipeCore {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<uint8_t> a_to_b, b_to_a;
  bool closed = false;
};

class PipeEnd : public Transport {
 public:
  PipeEnd(std::shared_ptr<PipeCore> core, bool is_a, int timeout_ms)
      : core_(std::move(core)), is_a_(is_a), timeout_ms_(timeout_ms) {}

  ~PipeEnd() override { close(); }

  bool send_all(std::span<const uint8_t> data) override {
    std::lock_guard lk(core_->mu);
    if (core_->closed) return false;
    auto& q = is_a_ ? core_->a_to_b : core_->b_to_a;
    q.insert(q.end(), data.begin(), data.end());
    core_->cv.notify_all();
    return true;
  }

  bool recv_all(std::span<uint8_t> data) override {
    std::unique_lock lk(core_->mu);
    auto& q = is_a_ ? core_->b_to_a : core_->a_to_b;
    size_t off = 0;
    while (off < data.size()) {
      if (!core_->cv.wait_for(lk, std::chrono::milliseconds(timeout_ms_),
                              [&] { return !q.empty() || core_->closed; }))
        return false;  // timeout
      if (q.empty() && core_->closed) return false;
      while (off < data.size() && !q.empty()) {
        data[off++] = q.front();
        q.pop_front();
      }
    }
    return true;
  }

  void close() override {
    std::lock_guard lk(core_->mu);
    core_->closed = true;
    core_->cv.notify_all();
  }

 private:
  std::shared_ptr<PipeCore> core_;
  bool is_a_;
  int timeout_ms_;
};

}  // namespace

std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> make_pipe(int timeout_ms) {
  auto core = std::make_shared<PipeCore>();
  return {std::make_unique<PipeEnd>(core, true, timeout_ms),
          std::make_unique<PipeEnd>(core, false, timeout_ms)};
}

// ---- TCP transport ----

TcpTransport::TcpTransport(int fd, int timeout_ms) : fd_(fd) {
  timeval tv{};
  tv.tv_sec = timeout_ms / 1000;
  tv.tv_usec = (timeout_ms % 1000) * 1000;
  setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  setsockopt(fd_, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
  int one = 1;
  setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

TcpTransport::~TcpTransport() { close(); }

bool TcpTransport::send_all(std::span<const uint8_t> data) {
  size_t off = 0;
  while (off < data.size()) {
    ssize_t n = ::send(fd_, data.data() + off, data.size() - off, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    if (n == 0) return false;
    off += static_cast<size_t>(n);
  }
  return true;
}

bool TcpTransport::recv_all(std::span<uint8_t> data) {
  size_t off = 0;
  while (off < data.size()) {
    ssize_t n = ::recv(fd_, data.data() + off, data.size() - off, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;  // includes timeout (EAGAIN/EWOULDBLOCK)
    }
    if (n == 0) return false;  // peer closed
    off += static_cast<size_t>(n);
  }
  return true;
}

void TcpTransport::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

Parsed<std::unique_ptr<TcpListener>> TcpListener::bind(const std::string& host, uint16_t port) {
  using R = Parsed<std::unique_ptr<TcpListener>>;
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  std::string port_str = std::to_string(port);
  int rc = getaddrinfo(host.empty() ? nullptr : host.c_str(), port_str.c_str(), &hints, &res);
  if (rc != 0) return R::fail(std::string("bind: ") + gai_strerror(rc));
  int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  if (fd < 0) {
    freeaddrinfo(res);
    return R::fail("bind: socket failed");
  }
  int one = 1;
  setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (::bind(fd, res->ai_addr, res->ai_addrlen) != 0 || ::listen(fd, 16) != 0) {
    freeaddrinfo(res);
    ::close(fd);
    return R::fail(std::string("bind: ") + std::strerror(errno));
  }
  freeaddrinfo(res);
  sockaddr_in addr{};
  socklen_t len = sizeof(addr);
  getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  return R::success(std::unique_ptr<TcpListener>(new TcpListener(fd, ntohs(addr.sin_port))));
}

std::unique_ptr<TcpTransport> TcpListener::accept(int timeout_ms) {
  pollfd pfd{fd_, POLLIN, 0};
  int rc = ::poll(&pfd, 1, timeout_ms);
  if (rc <= 0) return nullptr;
  int client = ::accept(fd_, nullptr, nullptr);
  if (client < 0) return nullptr;
  return std::make_unique<TcpTransport>(client, timeout_ms);
}

Parsed<std::unique_ptr<TcpTransport>> tcp_connect(const std::string& host, uint16_t port,
                                                  int timeout_ms) {
  using R = Parsed<std::unique_ptr<TcpTransport>>;
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  std::string port_str = std::to_string(port);
  int rc = getaddrinfo(host.c_str(), port_str.c_str(), &hints, &res);
  if (rc != 0) return R::fail(std::string("connect: ") + gai_strerror(rc));
  int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  if (fd < 0) {
    freeaddrinfo(res);
    return R::fail("connect: socket failed");
  }
  if (::connect(fd, res->ai_addr, res->ai_addrlen) != 0) {
    freeaddrinfo(res);
    ::close(fd);
    return R::fail(std::string("connect: ") + std::strerror(errno));
  }
  freeaddrinfo(res);
  return R::success(std::make_unique<TcpTransport>(fd, timeout_ms));
}

Parsed<std::pair<std::string, uint16_t>> split_host_port(const std::string& spec) {
  using R = Parsed<std::pair<std::string, uint16_t>>;
  auto pos = spec.rfind(':');
  if (pos == std::string::npos || pos + 1 >= spec.size()) return R::fail("expected HOST:PORT");
  unsigned long port;
  try {
    port = std::stoul(spec.substr(pos + 1));
  } catch (...) {
    return R::fail("bad port number");
  }
  if (port > 65535) return R::fail("bad port number");
  return R::success({spec.substr(0, pos), static_cast<uint16_t>(port)});
}

bool send_message(Transport& t, const Message& m) {
  auto f = frame(m);
  uint8_t prefix[4];
  uint32_t len = static_cast<uint32_t>(f.size());
  for (int i = 0; i < 4; ++i) prefix[i] = static_cast<uint8_t>(len >> (24 - 8 * i));
  return t.send_all(std::span<const uint8_t>(prefix, 4)) && t.send_all(f);
}

Parsed<Message> recv_message(Transport& t, size_t max_message_bytes) {
  using R = Parsed<Message>;
  uint8_t prefix[4];
  if (!t.recv_all(std::span<uint8_t>(prefix, 4))) return R::fail("transport: receive failed");
  uint32_t len = 0;
  for (int i = 0; i < 4; ++i) len = len << 8 | prefix[i];
  if (len < 9) return R::fail("frame length too small");
  if (len > max_message_bytes) return R::fail("frame length exceeds limit");
  std::vector<uint8_t> buf(len);
  if (!t.recv_all(buf)) return R::fail("transport: receive failed");
  return parse_frame(buf);
}

// ---- Session runner ----

namespace {

struct Endpoint {
  Transport& t;
  SessionResult& res;
  std::array<uint8_t, 8> session{};
  size_t max_bytes;

  bool send(Pass pass, std::vector<uint8_t> payload) {
    Message m{session, pass, std::move(payload)};
    if (!send_message(t, m)) {
      res.outcome = {false, SessionDiag::transport_error, -1};
      return false;
    }
    res.log.push_back(frame(m));
    return true;
  }

  // Receives and logs one message; enforces session id. Returns nullopt
  // after filling res.outcome.
  std::optional<Message> recv(bool check_session = true) {
    auto m = recv_message(t, max_bytes);
    if (!m.ok()) {
      res.outcome = {false,
                     m.error.rfind("transport:", 0) == 0 ? SessionDiag::transport_error
                                                         : SessionDiag::parse_error,
                     -1};
      return std::nullopt;
    }
    res.log.push_back(frame(*m.value));
    if (check_session && m.value->session != session) {
      res.outcome = {false, SessionDiag::desync, -1};
      return std::nullopt;
    }
    return std::move(*m.value);
  }
};

ResultPayload outcome_to_result(const VerifyOutcome& o) {
  return ResultPayload{o.accepted, o.diag, o.failed_round};
}

}  // namespace

SessionResult run_prover(Transport& t, const SecretKey& sk, const PublicKey& pk,
                         const ParamSet& params, const SessionOptions& opt, Rng& rng) {
  if (opt.sequential && opt.compressed)
    throw std::invalid_argument("run_prover: sequential mode requires uncompressed commitments");
  SessionResult res;
  res.outcome = {false, SessionDiag::transport_error, -1};
  Endpoint ep{t, res, {}, opt.max_message_bytes};
  rng.fill(ep.session);

  const uint16_t rounds = opt.rounds ? opt.rounds : params.id_rounds;
  const uint8_t flags = (opt.compressed ? kFlagCompressed : 0) |
                        (opt.model.cw_encoding ? kFlagCw : 0) |
                        (opt.sequential ? kFlagSequential : 0);
  const uint16_t cycles = opt.sequential ? rounds : 1;
  const uint16_t rounds_per_cycle = opt.sequential ? 1 : rounds;

  res.transcript.param_id = params.id;
  res.transcript.rounds = rounds;
  res.transcript.compressed = opt.compressed;

  for (uint16_t c = 0; c < cycles; ++c) {
    HonestProver prover(sk, pk, params, rounds_per_cycle, opt.compressed, opt.model, rng);

    Commit1Payload c1p{params.id, rounds, flags, prover.commit1()};
    if (!ep.send(Pass::commit1, build_commit1(c1p, opt.model.hash_bits))) return res;

    auto m = ep.recv();
    if (!m) return res;
    if (m->pass == Pass::result) {
      auto r = parse_result(m->payload);
      res.outcome = r.ok() ? VerifyOutcome{r.value->accepted, r.value->diag, r.value->failed_round}
                           : VerifyOutcome{false, SessionDiag::parse_error, -1};
      return res;
    }
    if (m->pass != Pass::shifts) {
      res.outcome = {false, SessionDiag::desync, -1};
      return res;
    }
    auto shifts = parse_shifts(m->payload, params.k, rounds_per_cycle);
    if (!shifts.ok()) {
      res.outcome = {false, SessionDiag::parse_error, -1};
      return res;
    }
    if (!ep.send(Pass::commit3, build_commit3(prover.commit3(*shifts.value)))) return res;

    m = ep.recv();
    if (!m) return res;
    if (m->pass != Pass::bits) {
      res.outcome = {false, SessionDiag::desync, -1};
      return res;
    }
    auto bits = parse_bits(m->payload, rounds_per_cycle);
    if (!bits.ok()) {
      res.outcome = {false, SessionDiag::parse_error, -1};
      return res;
    }
    auto answers = prover.answers(*bits.value);
    if (!ep.send(Pass::answers, build_answers(answers, params, opt.model, opt.compressed,
                                              opt.model.cw_encoding)))
      return res;

    const Transcript& pt = prover.transcript();
    res.transcript.record.insert(res.transcript.record.end(), pt.record.begin(), pt.record.end());
    if (opt.compressed) {
      res.transcript.master1 = pt.master1;
      res.transcript.master2 = pt.master2;
    }
  }

  auto m = ep.recv();
  if (!m) return res;
  if (m->pass != Pass::result) {
    res.outcome = {false, SessionDiag::desync, -1};
    return res;
  }
  auto r = parse_result(m->payload);
  if (!r.ok()) {
    res.outcome = {false, SessionDiag::parse_error, -1};
    return res;
  }
  res.outcome = {r.value->accepted, r.value->diag, r.value->failed_round};
  res.transcript.accepted = r.value->accepted;
  return res;
}

SessionResult run_verifier(Transport& t, const PublicKey& pk, const ParamSet& params,
                           const SessionOptions& opt, Rng& rng) {
  SessionResult res;
  res.outcome = {false, SessionDiag::transport_error, -1};
  Endpoint ep{t, res, {}, opt.max_message_bytes};

  auto reject = [&](SessionDiag diag, int32_t round = -1) {
    res.outcome = {false, diag, round};
    ep.send(Pass::result, build_result(outcome_to_result(res.outcome)));
    return res;
  };

  uint16_t rounds = 0;
  uint8_t flags = 0;
  bool first = true;
  uint16_t cycles = 1, rounds_per_cycle = 0;
  CostModel model = opt.model;

  for (uint16_t c = 0; c < cycles; ++c) {
    auto m = first ? ep.recv(false) : ep.recv();
    if (!m) return res;
    if (m->pass != Pass::commit1) return reject(SessionDiag::desync);
    auto c1p = parse_commit1(m->payload, model.hash_bits);
    if (!c1p.ok()) return reject(SessionDiag::parse_error);
    if (first) {
      ep.session = m->session;
      rounds = c1p.value->rounds;
      flags = c1p.value->flags;
      cycles = (flags & kFlagSequential) ? rounds : 1;
      rounds_per_cycle = (flags & kFlagSequential) ? 1 : rounds;
      model.cw_encoding = flags & kFlagCw;
      res.transcript.param_id = params.id;
      res.transcript.rounds = rounds;
      res.transcript.compressed = flags & kFlagCompressed;
      first = false;
    } else if (c1p.value->rounds != rounds || c1p.value->flags != flags) {
      return reject(SessionDiag::desync);
    }
    if (c1p.value->param_id != params.id) return reject(SessionDiag::param_mismatch);

    VerifierSession vs(pk, params, rounds_per_cycle, flags & kFlagCompressed, model, rng);
    if (!vs.set_commit1(c1p.value->digests)) return reject(SessionDiag::count_mismatch);

    auto shifts = vs.shifts();
    if (!ep.send(Pass::shifts, build_shifts(shifts, params.k))) return res;

    m = ep.recv();
    if (!m) return res;
    if (m->pass != Pass::commit3) return reject(SessionDiag::desync);
    const uint16_t c3count = (flags & kFlagCompressed) ? 1 : rounds_per_cycle;
    auto c3 = parse_commit3(m->payload, model.hash_bits, c3count);
    if (!c3.ok()) return reject(SessionDiag::parse_error);
    if (!vs.set_commit3(*c3.value)) return reject(SessionDiag::count_mismatch);

    auto bits = vs.bits();
    if (!ep.send(Pass::bits, build_bits(bits))) return res;

    m = ep.recv();
    if (!m) return res;
    if (m->pass != Pass::answers) return reject(SessionDiag::desync);
    auto answers = parse_answers(m->payload, bits, params, model, flags & kFlagCompressed,
                                 flags & kFlagCw);
    if (!answers.ok()) return reject(SessionDiag::parse_error);

    VerifyOutcome out = vs.finish(*answers.value);
    if (!out.accepted) {
      if (out.failed_round >= 0 && (flags & kFlagSequential))
        out.failed_round += static_cast<int32_t>(c);
      res.outcome = out;
      ep.send(Pass::result, build_result(outcome_to_result(out)));
      return res;
    }
    const Transcript& vt = vs.transcript();
    res.transcript.record.insert(res.transcript.record.end(), vt.record.begin(), vt.record.end());
    if (flags & kFlagCompressed) {
      res.transcript.master1 = vt.master1;
      res.transcript.master2 = vt.master2;
    }
  }

  res.outcome = {true, SessionDiag::ok, -1};
  res.transcript.accepted = true;
  ep.send(Pass::result, build_result(outcome_to_result(res.outcome)));
  return res;
}

// ---- Transcript persistence & replay ----

std::vector<uint8_t> encode_log(std::span<const std::vector<uint8_t>> frames) {
  std::vector<uint8_t> out;
  for (const auto& f : frames) {
    uint32_t len = static_cast<uint32_t>(f.size());
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(len >> (24 - 8 * i)));
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

Parsed<std::vector<std::vector<uint8_t>>> decode_log(std::span<const uint8_t> bytes) {
  using R = Parsed<std::vector<std::vector<uint8_t>>>;
  std::vector<std::vector<uint8_t>> frames;
  size_t off = 0;
  while (off < bytes.size()) {
    if (off + 4 > bytes.size()) return R::fail("log: truncated length prefix");
    uint32_t len = 0;
    for (int i = 0; i < 4; ++i) len = len << 8 | bytes[off + i];
    off += 4;
    if (len < 9 || off + len > bytes.size()) return R::fail("log: truncated frame");
    frames.emplace_back(bytes.begin() + off, bytes.begin() + off + len);
    off += len;
  }
  return R::success(std::move(frames));
}

SessionResult replay_log(const PublicKey& pk, const ParamSet& params, const CostModel& model_in,
                         std::span<const std::vector<uint8_t>> frames) {
  SessionResult res;
  res.log.assign(frames.begin(), frames.end());
  res.outcome = {false, SessionDiag::parse_error, -1};

  std::vector<Message> msgs;
  for (const auto& f : frames) {
    auto m = parse_frame(f);
    if (!m.ok()) return res;
    if (m.value->pass == Pass::result) continue;  // recomputed, not replayed
    msgs.push_back(std::move(*m.value));
  }
  if (msgs.empty()) return res;

  size_t pos = 0;
  auto next = [&](Pass expect) -> const Message* {
    if (pos >= msgs.size() || msgs[pos].pass != expect) return nullptr;
    return &msgs[pos++];
  };

  const Message* first_msg = pos < msgs.size() ? &msgs[pos] : nullptr;
  if (!first_msg || first_msg->pass != Pass::commit1) return res;
  auto head = parse_commit1(first_msg->payload, model_in.hash_bits);
  if (!head.ok()) return res;
  const uint16_t rounds = head.value->rounds;
  const uint8_t flags = head.value->flags;
  if (head.value->param_id != params.id) {
    res.outcome = {false, SessionDiag::param_mismatch, -1};
    return res;
  }
  CostModel model = model_in;
  model.cw_encoding = flags & kFlagCw;
  const uint16_t cycles = (flags & kFlagSequential) ? rounds : 1;
  const uint16_t rounds_per_cycle = (flags & kFlagSequential) ? 1 : rounds;

  res.transcript.param_id = params.id;
  res.transcript.rounds = rounds;
  res.transcript.compressed = flags & kFlagCompressed;

  Rng dummy = Rng::from_seed(std::span<const uint8_t>());

  for (uint16_t c = 0; c < cycles; ++c) {
    const Message* m1 = next(Pass::commit1);
    if (!m1) return res;
    auto c1p = parse_commit1(m1->payload, model.hash_bits);
    if (!c1p.ok() || c1p.value->rounds != rounds || c1p.value->flags != flags) return res;

    VerifierSession vs(pk, params, rounds_per_cycle, flags & kFlagCompressed, model, dummy);
    if (!vs.set_commit1(c1p.value->digests)) {
      res.outcome = {false, SessionDiag::count_mismatch, -1};
      return res;
    }

    const Message* ms = next(Pass::shifts);
    if (!ms) return res;
    auto shifts = parse_shifts(ms->payload, params.k, rounds_per_cycle);
    if (!shifts.ok()) return res;
    vs.inject_shifts(*shifts.value);

    const Message* m3 = next(Pass::commit3);
    if (!m3) return res;
    auto c3 = parse_commit3(m3->payload, model.hash_bits,
                            (flags & kFlagCompressed) ? 1 : rounds_per_cycle);
    if (!c3.ok() || !vs.set_commit3(*c3.value)) return res;

    const Message* mb = next(Pass::bits);
    if (!mb) return res;
    auto bits = parse_bits(mb->payload, rounds_per_cycle);
    if (!bits.ok()) return res;
    vs.inject_bits(*bits.value);

    const Message* ma = next(Pass::answers);
    if (!ma) return res;
    auto answers = parse_answers(ma->payload, *bits.value, params, model,
                                 flags & kFlagCompressed, flags & kFlagCw);
    if (!answers.ok()) return res;

    VerifyOutcome out = vs.finish(*answers.value);
    if (!out.accepted) {
      if (out.failed_round >= 0 && (flags & kFlagSequential))
        out.failed_round += static_cast<int32_t>(c);
      res.outcome = out;
      return res;
    }
    const Transcript& vt = vs.transcript();
    res.transcript.record.insert(res.transcript.record.end(), vt.record.begin(), vt.record.end());
    if (flags & kFlagCompressed) {
      res.transcript.master1 = vt.master1;
      res.transcript.master2 = vt.master2;
    }
  }
  if (pos != msgs.size()) {
    res.outcome = {false, SessionDiag::desync, -1};
    return res;
  }
  res.outcome = {true, SessionDiag::ok, -1};
  res.transcript.accepted = true;
  return res;
}

// ---- Cost accounting ----

namespace {

double answer_bits(const ParamSet& params, const CostModel& model, uint8_t bit) {
  if (bit == 0) return double(model.seed_bits) + params.k;
  double t_bits = model.cw_encoding ? double(cw_bits(params.n, params.w)) : double(params.n);
  return double(params.n) + t_bits;
}

}  // namespace

double expected_identification_bits(const ParamSet& params, uint16_t rounds, bool compressed,
                                    const CostModel& model) {
  const double h = model.hash_bits;
  const double R = rounds;
  double total = compressed ? 2 * h : 3 * R * h;     // pass 1 + pass 3 digests
  if (compressed) total += R * h;                    // per-round revealed leaf
  if (model.count_challenges) total += R * shift_field_width(params.k) + R;
  total += R * 0.5 * (answer_bits(params, model, 0) + answer_bits(params, model, 1));
  return total;
}

double veron_expected_bits(const ParamSet& params, uint16_t rounds, const CostModel& model) {
  const double h = model.hash_bits;
  const double R = rounds;
  double per_round = 3 * h;
  if (model.count_challenges) per_round += 2;  // challenge in {0,1,2}
  const double a0 = double(model.seed_bits) + params.k;  // u+m, sigma seed
  const double a2 = a0;                                  // u, sigma seed
  const double t_bits = model.cw_encoding ? double(cw_bits(params.n, params.w)) : double(params.n);
  const double a1 = double(params.n) + t_bits;
  per_round += (a0 + a1 + a2) / 3.0;
  return R * per_round;
}

double signature_expected_bits(const ParamSet& params, uint16_t rounds, const CostModel& model) {
  const double h = model.hash_bits;
  const double R = rounds;
  return 2 * h + R * (h + 0.5 * (answer_bits(params, model, 0) + answer_bits(params, model, 1)));
}

CostReport measure_cost(const Transcript& t, const ParamSet& params, const CostModel& model,
                        std::span<const std::vector<uint8_t>> log) {
  if (t.record.size() != t.rounds)
    throw std::invalid_argument("measure_cost: incomplete transcript");
  CostReport rep;
  const double h = model.hash_bits;
  const double R = t.rounds;

  auto add = [&rep](std::string label, double bits, bool p2v) {
    rep.lines.push_back({std::move(label), bits, p2v});
    rep.total_bits += bits;
    (p2v ? rep.prover_bits : rep.verifier_bits) += bits;
  };

  add("pass 1: commitments", t.compressed ? h : 2 * R * h, true);
  if (model.count_challenges) add("pass 2: shift challenges", R * shift_field_width(params.k), false);
  add("pass 3: commitments", t.compressed ? h : R * h, true);
  if (model.count_challenges) add("pass 4: reveal bits", R, false);
  if (t.compressed) add("pass 5: revealed leaf digests", R * h, true);

  double b0 = 0, b1 = 0;
  uint32_t n0 = 0, n1 = 0;
  for (const RoundRecord& rec : t.record) {
    if (rec.answer.bit == 0) {
      b0 += answer_bits(params, model, 0);
      ++n0;
    } else {
      b1 += answer_bits(params, model, 1);
      ++n1;
    }
  }
  add("pass 5: answers (bit 0, " + std::to_string(n0) + " rounds)", b0, true);
  add("pass 5: answers (bit 1, " + std::to_string(n1) + " rounds)", b1, true);

  rep.expected_total_bits = expected_identification_bits(params, t.rounds, t.compressed, model);
  const double digests = t.compressed ? (2.0 + R) : 3.0 * R;
  rep.hashes_per_round = digests / R;
  for (const auto& f : log) rep.wire_bytes += 4 + f.size();
  return rep;
}

}  // namespace dcid
