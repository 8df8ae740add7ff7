#include <doctest.h>

#include <stdexcept>

#include <chrono>
#include <thread>

#include "dcid/wire.hpp"

using namespace dcid;

namespace {

Rng wrng(uint8_t salt) { return Rng::from_seed(std::array<uint8_t, 3>{'w', 'r', salt}); }

struct Fixture {
  ParamSet params;
  CostModel model;
  KeyPair kp;

  explicit Fixture(const char* name, uint8_t salt = 1) : params(*preset_by_name(name)) {
    auto rng = wrng(salt);
    kp = keygen(params, rng);
  }
};

Digest make_digest(uint8_t fill, uint8_t len = 20) {
  Digest d;
  d.len = len;
  for (int i = 0; i < len; ++i) d.bytes[i] = fill;
  return d;
}

}  // namespace

TEST_CASE("frames round-trip for every pass type") {
  for (uint8_t p = 1; p <= 6; ++p) {
    Message m;
    m.session = {1, 2, 3, 4, 5, 6, 7, 8};
    m.pass = static_cast<Pass>(p);
    m.payload = {0xAA, 0xBB, static_cast<uint8_t>(p)};
    auto parsed = parse_frame(frame(m));
    REQUIRE(parsed.ok());
    CHECK(parsed.value->session == m.session);
    CHECK(parsed.value->pass == m.pass);
    CHECK(parsed.value->payload == m.payload);
  }
  CHECK_FALSE(parse_frame(std::vector<uint8_t>(8)).ok());  // missing pass tag
  std::vector<uint8_t> bad(10, 0);
  bad[8] = 9;
  CHECK(parse_frame(bad).error == "bad pass tag");
}

TEST_CASE("commit1 payload: layout, flags, truncation") {
  Commit1Payload p;
  p.param_id = 0;
  p.rounds = 18;
  p.flags = kFlagCompressed;
  p.digests = {make_digest(0x42)};
  auto bytes = build_commit1(p, 160);
  CHECK(bytes.size() == 5 + 20);
  auto back = parse_commit1(bytes, 160);
  REQUIRE(back.ok());
  CHECK(back.value->rounds == 18);
  CHECK(back.value->digests.size() == 1);
  CHECK(back.value->digests[0] == p.digests[0]);

  auto cut = bytes;
  cut.resize(cut.size() - 1);
  CHECK(parse_commit1(cut, 160).error == "commit1: truncated digest list");
  CHECK_FALSE(parse_commit1(std::vector<uint8_t>{1, 2, 3}, 160).ok());

  auto bad_flags = bytes;
  bad_flags[4] = 0xFF;
  CHECK(parse_commit1(bad_flags, 160).error == "commit1: unknown flags");
  auto both = bytes;
  both[4] = kFlagCompressed | kFlagSequential;
  CHECK_FALSE(parse_commit1(both, 160).ok());
  auto zero_rounds = bytes;
  zero_rounds[2] = zero_rounds[3] = 0;
  CHECK(parse_commit1(zero_rounds, 160).error == "commit1: round count out of range");
}

TEST_CASE("shift payload packs 9-bit fields tightly at paper parameters") {
  std::vector<uint32_t> shifts(18);
  for (size_t i = 0; i < shifts.size(); ++i) shifts[i] = static_cast<uint32_t>(i * 19);
  CHECK(shift_field_width(349) == 9);
  auto payload = build_shifts(shifts, 349);
  CHECK(payload.size() == (18 * 9 + 7) / 8);  // 162 bits -> 21 bytes
  auto back = parse_shifts(payload, 349, 18);
  REQUIRE(back.ok());
  CHECK(*back.value == shifts);

  auto cut = payload;
  cut.resize(cut.size() - 1);
  CHECK(parse_shifts(cut, 349, 18).error == "shifts: truncated shift value");
  std::vector<uint32_t> big{500};
  auto bad = build_shifts(big, 512);
  CHECK(parse_shifts(bad, 349, 1).error == "shifts: shift out of range");
}

TEST_CASE("bits and result payloads") {
  std::vector<uint8_t> bits{1, 0, 1, 1, 0, 0, 1, 0, 1};
  auto payload = build_bits(bits);
  CHECK(payload.size() == 2);
  auto back = parse_bits(payload, 9);
  REQUIRE(back.ok());
  CHECK(*back.value == bits);
  CHECK_FALSE(parse_bits(payload, 32).ok());

  ResultPayload r{false, SessionDiag::round_reject, 7};
  auto rb = build_result(r);
  auto rr = parse_result(rb);
  REQUIRE(rr.ok());
  CHECK(rr.value->accepted == false);
  CHECK(rr.value->diag == SessionDiag::round_reject);
  CHECK(rr.value->failed_round == 7);
  CHECK_FALSE(parse_result(std::vector<uint8_t>(5)).ok());
}

TEST_CASE("answers payload round-trips in every mode") {
  Fixture f("toy7");
  auto rng = wrng(2);
  for (bool compressed : {false, true}) {
    for (bool cw : {false, true}) {
      CostModel model = f.model;
      model.cw_encoding = cw;
      std::vector<RoundAnswer> answers(2);
      answers[0].bit = 0;
      answers[0].sigma_seed = rng.seed(128);
      answers[0].y = rng.word(f.params.k);
      answers[1].bit = 1;
      answers[1].v = rng.word(f.params.n);
      answers[1].t = sample_fixed_weight(f.params.n, f.params.w, rng);
      if (compressed) {
        answers[0].revealed = make_digest(0x01);
        answers[1].revealed = make_digest(0x02);
      }
      std::vector<uint8_t> bits{0, 1};
      auto payload = build_answers(answers, f.params, model, compressed, cw);
      auto back = parse_answers(payload, bits, f.params, model, compressed, cw);
      REQUIRE(back.ok());
      CHECK((*back.value)[0].y == answers[0].y);
      CHECK((*back.value)[0].sigma_seed == answers[0].sigma_seed);
      CHECK((*back.value)[1].v == answers[1].v);
      CHECK((*back.value)[1].t == answers[1].t);
      if (compressed) CHECK((*back.value)[1].revealed == answers[1].revealed);

      auto cut = payload;
      cut.resize(cut.size() - 1);
      CHECK_FALSE(parse_answers(cut, bits, f.params, model, compressed, cw).ok());
    }
  }
}

TEST_CASE("pipe sessions complete and both ends log identical frames") {
  Fixture f("toy7", 3);
  for (bool compressed : {true, false}) {
    auto [a, b] = make_pipe(2000);
    SessionOptions opt;
    opt.rounds = 6;
    opt.compressed = compressed;
    SessionResult pres, vres;
    std::thread vt([&] {
      auto rng = wrng(20);
      vres = run_verifier(*b, f.kp.pk, f.params, opt, rng);
    });
    auto rng = wrng(21);
    pres = run_prover(*a, f.kp.sk, f.kp.pk, f.params, opt, rng);
    vt.join();
    CHECK(pres.outcome.accepted);
    CHECK(vres.outcome.accepted);
    REQUIRE(pres.log.size() == vres.log.size());
    for (size_t i = 0; i < pres.log.size(); ++i) CHECK(pres.log[i] == vres.log[i]);
    CHECK(verify_transcript(f.kp.pk, f.model, vres.transcript).accepted);
  }
}

TEST_CASE("sequential sessions verify round by round") {
  Fixture f("toy7", 4);
  auto [a, b] = make_pipe(2000);
  SessionOptions opt;
  opt.rounds = 5;
  opt.compressed = false;
  opt.sequential = true;
  SessionResult pres, vres;
  std::thread vt([&] {
    auto rng = wrng(22);
    vres = run_verifier(*b, f.kp.pk, f.params, opt, rng);
  });
  auto rng = wrng(23);
  pres = run_prover(*a, f.kp.sk, f.kp.pk, f.params, opt, rng);
  vt.join();
  CHECK(pres.outcome.accepted);
  CHECK(vres.outcome.accepted);
  CHECK(vres.transcript.record.size() == 5);
  // Sequential framing never changes the idealized bit accounting.
  auto cost_seq = measure_cost(vres.transcript, f.params, f.model);
  Transcript parallel = vres.transcript;
  auto cost_par = measure_cost(parallel, f.params, f.model);
  CHECK(cost_seq.total_bits == cost_par.total_bits);

  SessionOptions bad = opt;
  bad.compressed = true;
  auto [c, d] = make_pipe(100);
  auto rng2 = wrng(24);
  CHECK_THROWS_AS(run_prover(*c, f.kp.sk, f.kp.pk, f.params, bad, rng2), std::invalid_argument);
}

TEST_CASE("TCP loopback sessions are byte-identical to pipe sessions") {
  Fixture f("toy7", 5);
  SessionOptions opt;
  opt.rounds = 4;
  opt.timeout_ms = 5000;

  auto run_pipe = [&] {
    auto [a, b] = make_pipe(5000);
    SessionResult pres, vres;
    std::thread vt([&] {
      auto rng = wrng(30);
      vres = run_verifier(*b, f.kp.pk, f.params, opt, rng);
    });
    auto rng = wrng(31);
    pres = run_prover(*a, f.kp.sk, f.kp.pk, f.params, opt, rng);
    vt.join();
    return std::pair{pres, vres};
  };
  auto run_tcp = [&] {
    auto listener = TcpListener::bind("127.0.0.1", 0);
    REQUIRE(listener.ok());
    SessionResult pres, vres;
    std::thread vt([&] {
      auto t = (*listener.value)->accept(5000);
      if (!t) return;
      auto rng = wrng(30);
      vres = run_verifier(*t, f.kp.pk, f.params, opt, rng);
    });
    auto client = tcp_connect("127.0.0.1", (*listener.value)->port(), 5000);
    REQUIRE(client.ok());
    auto rng = wrng(31);
    pres = run_prover(**client.value, f.kp.sk, f.kp.pk, f.params, opt, rng);
    vt.join();
    return std::pair{pres, vres};
  };

  auto [pipe_p, pipe_v] = run_pipe();
  auto [tcp_p, tcp_v] = run_tcp();
  CHECK(pipe_p.outcome.accepted);
  CHECK(tcp_p.outcome.accepted);
  REQUIRE(pipe_v.log.size() == tcp_v.log.size());
  for (size_t i = 0; i < pipe_v.log.size(); ++i) CHECK(pipe_v.log[i] == tcp_v.log[i]);
  CHECK(encode_log(pipe_v.log) == encode_log(tcp_v.log));
}

TEST_CASE("verifier times out mid-pass-3 instead of hanging") {
  Fixture f("toy7", 6);
  auto [a, b] = make_pipe(300);  // short timeout
  SessionOptions opt;
  opt.rounds = 3;
  SessionResult vres;
  auto start = std::chrono::steady_clock::now();
  std::thread vt([&] {
    auto rng = wrng(40);
    vres = run_verifier(*b, f.kp.pk, f.params, opt, rng);
  });
  // Send a valid commit1, then stall: the verifier is left waiting for
  // commit3 after it sends the shifts.
  auto rng = wrng(41);
  HonestProver prover(f.kp.sk, f.kp.pk, f.params, 3, true, f.model, rng);
  Message m;
  rng.fill(m.session);
  m.pass = Pass::commit1;
  m.payload = build_commit1({f.params.id, 3, kFlagCompressed, prover.commit1()}, 160);
  REQUIRE(send_message(*a, m));
  vt.join();
  auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK_FALSE(vres.outcome.accepted);
  CHECK(vres.outcome.diag == SessionDiag::transport_error);
  CHECK(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() < 5000);
}

TEST_CASE("eight concurrent TCP sessions complete independently") {
  Fixture f("toy7", 7);
  auto listener = TcpListener::bind("127.0.0.1", 0);
  REQUIRE(listener.ok());
  const uint16_t port = (*listener.value)->port();
  SessionOptions opt;
  opt.rounds = 4;
  opt.timeout_ms = 10000;

  std::vector<SessionResult> vres(8), pres(8);
  std::thread server([&] {
    std::vector<std::thread> handlers;
    for (int i = 0; i < 8; ++i) {
      auto t = (*listener.value)->accept(10000);
      if (!t) break;
      handlers.emplace_back([&, i, tp = std::shared_ptr<TcpTransport>(std::move(t))] {
        auto rng = Rng::from_seed(std::array<uint8_t, 2>{0x50, static_cast<uint8_t>(i)});
        vres[i] = run_verifier(*tp, f.kp.pk, f.params, opt, rng);
      });
    }
    for (auto& h : handlers) h.join();
  });
  std::vector<std::thread> clients;
  for (int i = 0; i < 8; ++i) {
    clients.emplace_back([&, i] {
      auto c = tcp_connect("127.0.0.1", port, 10000);
      if (!c.ok()) return;
      auto rng = Rng::from_seed(std::array<uint8_t, 2>{0x60, static_cast<uint8_t>(i)});
      pres[i] = run_prover(**c.value, f.kp.sk, f.kp.pk, f.params, opt, rng);
    });
  }
  for (auto& c : clients) c.join();
  server.join();
  for (int i = 0; i < 8; ++i) {
    CHECK(pres[i].outcome.accepted);
    CHECK(vres[i].outcome.accepted);
  }
}

TEST_CASE("stored logs replay deterministically and reject tampering") {
  Fixture f("toy7", 8);
  auto [a, b] = make_pipe(2000);
  SessionOptions opt;
  opt.rounds = 6;
  SessionResult pres, vres;
  std::thread vt([&] {
    auto rng = wrng(50);
    vres = run_verifier(*b, f.kp.pk, f.params, opt, rng);
  });
  auto rng = wrng(51);
  pres = run_prover(*a, f.kp.sk, f.kp.pk, f.params, opt, rng);
  vt.join();
  REQUIRE(vres.outcome.accepted);

  auto encoded = encode_log(vres.log);
  auto decoded = decode_log(encoded);
  REQUIRE(decoded.ok());
  auto replay = replay_log(f.kp.pk, f.params, f.model, *decoded.value);
  CHECK(replay.outcome.accepted);
  auto replay2 = replay_log(f.kp.pk, f.params, f.model, *decoded.value);
  CHECK(replay2.outcome.accepted == replay.outcome.accepted);

  // Tamper with one answer byte inside the log.
  auto frames = *decoded.value;
  frames[4].back() ^= 0x40;
  CHECK_FALSE(replay_log(f.kp.pk, f.params, f.model, frames).outcome.accepted);
  CHECK_FALSE(decode_log(std::span<const uint8_t>(encoded.data(), encoded.size() - 2)).ok());
}

TEST_CASE("malformed messages never crash a session endpoint") {
  Fixture f("toy7", 9);
  auto rng = wrng(60);
  const int kCases = 1000;
  for (int it = 0; it < kCases; ++it) {
    auto [a, b] = make_pipe(200);
    SessionOptions opt;
    opt.rounds = 2;
    SessionResult vres;
    std::thread vt([&] {
      auto vrng = wrng(61);
      vres = run_verifier(*b, f.kp.pk, f.params, opt, vrng);
    });
    // Mutated or random first frames.
    std::vector<uint8_t> junk(rng.below(80) + 1);
    rng.fill(junk);
    uint8_t prefix[4] = {0, 0, 0, static_cast<uint8_t>(junk.size())};
    a->send_all(std::span<const uint8_t>(prefix, 4));
    a->send_all(junk);
    a->close();
    vt.join();
    CHECK_FALSE(vres.outcome.accepted);
  }
}

TEST_CASE("cost report reproduces the published communication figures") {
  Fixture f("p81", 10);
  const ParamSet& p = f.params;

  double compressed = expected_identification_bits(p, 18, true, f.model);
  CHECK(compressed == doctest::Approx(20237.0));
  CHECK(std::abs(compressed - published::new_scheme_bits) / published::new_scheme_bits < 0.05);

  CostModel cw_model = f.model;
  cw_model.cw_encoding = true;
  double cw = expected_identification_bits(p, 18, true, cw_model);
  CHECK(cw == doctest::Approx(16871.0));
  CHECK(std::abs(cw - published::new_scheme_cw_bits) / published::new_scheme_cw_bits < 0.10);

  double uncompressed = expected_identification_bits(p, 18, false, f.model);
  CHECK(uncompressed == doctest::Approx(25677.0));
  CHECK(compressed < uncompressed);  // compression never raises the total
  CHECK(cw < compressed);            // cw never raises the total

  double veron = veron_expected_bits(p, 28, f.model);
  CHECK(veron == doctest::Approx(28 * (3 * 160 + 2 + (477.0 + 1396.0 + 477.0) / 3)));
  CHECK(std::abs(veron - published::veron_bits) / published::veron_bits < 0.10);

  double sig = signature_expected_bits(p, 90, f.model);
  CHECK(sig == doctest::Approx(99005.0));
  CHECK(sig <= 105000.0);
}

TEST_CASE("measured transcript cost attributes every bit to one line") {
  Fixture f("toy7", 11);
  auto pr = wrng(70), vr = wrng(71);
  auto res = run_identification(f.kp.sk, f.kp.pk, f.params, 10, true, f.model, pr, vr);
  REQUIRE(res.outcome.accepted);
  auto rep = measure_cost(res.transcript, f.params, f.model);
  double sum = 0;
  for (const auto& line : rep.lines) sum += line.bits;
  CHECK(sum == doctest::Approx(rep.total_bits));
  CHECK(rep.prover_bits + rep.verifier_bits == doctest::Approx(rep.total_bits));
  CHECK(rep.expected_total_bits ==
        doctest::Approx(expected_identification_bits(f.params, 10, true, f.model)));
  // Compressed mode sends (rounds + 2) digests overall.
  CHECK(rep.hashes_per_round == doctest::Approx((10.0 + 2.0) / 10.0));

  auto pr2 = wrng(70), vr2 = wrng(71);
  auto unc = run_identification(f.kp.sk, f.kp.pk, f.params, 10, false, f.model, pr2, vr2);
  auto unc_rep = measure_cost(unc.transcript, f.params, f.model);
  CHECK(unc_rep.hashes_per_round == doctest::Approx(3.0));
  CHECK(rep.total_bits < unc_rep.total_bits);
}
