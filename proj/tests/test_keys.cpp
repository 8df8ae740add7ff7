#include <doctest.h>

#include <stdexcept>

#include "dcid/keys.hpp"

using namespace dcid;

namespace {
Rng krng(uint8_t salt) { return Rng::from_seed(std::array<uint8_t, 3>{'k', 'y', salt}); }
}  // namespace

TEST_CASE("keygen produces consistent keypairs at paper parameters") {
  auto rng = krng(1);
  const ParamSet& p = *preset_by_name("p81");
  KeyPair kp = keygen(p, rng);
  CHECK(kp.sk.e.weight() == 70);
  CHECK(kp.sk.e.len() == 698);
  CHECK(kp.sk.m.len() == 349);
  CHECK(keypair_consistent(kp.sk, kp.pk));
  CHECK((kp.pk.x ^ encode(kp.pk.code, kp.sk.m)).weight() == 70);
  CHECK_FALSE(has_nontrivial_period(kp.sk.e));
}

TEST_CASE("w=0 keys make x a codeword") {
  auto rng = krng(2);
  ParamSet p = *preset_by_name("toy7");
  p.w = 0;
  KeyPair kp = keygen(p, rng);
  CHECK(kp.sk.e.is_zero());
  CHECK(kp.pk.x == encode(kp.pk.code, kp.sk.m));
  CHECK(syndrome(kp.pk.code, kp.pk.x).is_zero());
}

TEST_CASE("shifted_public matches the rotated-secret identity") {
  auto rng = krng(3);
  const ParamSet& toy = *preset_by_name("toy7");
  KeyPair kp = keygen(toy, rng);
  for (uint32_t r = 0; r < toy.k; ++r) {
    BitWord x_r = shifted_public(kp.pk, r);
    if (r == 0) CHECK(x_r == kp.pk.x);
    // x_r = e_r + m_r G, so stripping the rotated codeword leaves weight w.
    BitWord m_r = rot_block(kp.sk.m, r);
    CHECK((x_r ^ encode(kp.pk.code, m_r)).weight() == toy.w);
    CHECK((x_r ^ encode(kp.pk.code, m_r)) == block_rot(kp.sk.e, r));
    CHECK(syndrome(kp.pk.code, x_r) == rot_block(syndrome(kp.pk.code, kp.pk.x), r));
  }
  CHECK_THROWS_AS(shifted_public(kp.pk, toy.k), std::invalid_argument);
}

TEST_CASE("shift coherence is exhaustive at k<=16") {
  auto rng = krng(4);
  for (uint16_t id : {uint16_t{3}}) {
    const ParamSet& p = *preset_by_id(id);
    KeyPair kp = keygen(p, rng);
    for (uint32_t r = 0; r < p.k; ++r) {
      SecretKey rotated{block_rot(kp.sk.e, r), rot_block(kp.sk.m, r)};
      PublicKey shifted = kp.pk;
      shifted.x = shifted_public(kp.pk, r);
      CHECK(keypair_consistent(rotated, shifted));
    }
  }
}

TEST_CASE("key serialization round-trips and rejects malformed files") {
  auto rng = krng(5);
  const ParamSet& p = *preset_by_name("p81");
  KeyPair kp = keygen(p, rng);

  auto pub = serialize_public(kp.pk, p.id);
  auto sec = serialize_secret(kp.sk, p.id);
  // 7-byte header + u16 weight + 349 + 698 bits.
  CHECK(pub.size() == 9 + (349 + 698 + 7) / 8);
  // 7-byte header + 698 + 349 bits.
  CHECK(sec.size() == 7 + (698 + 349 + 7) / 8);

  auto lp = deserialize_public(pub);
  REQUIRE(lp.ok());
  CHECK(lp.value->param_id == p.id);
  CHECK(lp.value->pk.x == kp.pk.x);
  CHECK(lp.value->pk.code.a_row == kp.pk.code.a_row);

  auto ls = deserialize_secret(sec);
  REQUIRE(ls.ok());
  CHECK(ls.value->sk.e == kp.sk.e);
  CHECK(ls.value->sk.m == kp.sk.m);

  SUBCASE("truncation yields explicit errors") {
    auto cut = pub;
    cut.resize(cut.size() - 1);
    auto r = deserialize_public(cut);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.error.empty());
    CHECK_FALSE(deserialize_public(std::span<const uint8_t>(pub.data(), 3)).ok());
  }
  SUBCASE("bad magic") {
    auto bad = pub;
    bad[0] ^= 0xFF;
    CHECK(deserialize_public(bad).error == "bad magic");
    CHECK_FALSE(deserialize_secret(pub).ok());  // wrong file type
  }
  SUBCASE("secret weight check on load") {
    auto tampered = sec;
    // Flip a bit inside e's payload: weight becomes 69 or 71.
    tampered[7] ^= 0x01;
    auto r = deserialize_secret(tampered);
    CHECK_FALSE(r.ok());
    CHECK(r.error == "secret weight check failed");
  }
  SUBCASE("trailing bytes rejected") {
    auto extra = pub;
    extra.push_back(0);
    CHECK_FALSE(deserialize_public(extra).ok());
  }
}

TEST_CASE("degenerate-orbit secrets are rejected by construction") {
  // A secret invariant under rotation (both halves constant) must never
  // come out of keygen; verify the predicate itself on a crafted word.
  BitWord bad(14);
  for (int i = 0; i < 7; ++i) bad.set(i, true);  // first half all ones
  CHECK(has_nontrivial_period(bad));
  BitWord good(14);
  good.set(0, true);
  good.set(7, true);
  good.set(8, true);
  CHECK_FALSE(has_nontrivial_period(good));
  CHECK(has_nontrivial_period(BitWord(14)));  // zero word

  auto rng = krng(6);
  const ParamSet& toy = *preset_by_name("toy7");
  for (int it = 0; it < 200; ++it) CHECK_FALSE(has_nontrivial_period(keygen(toy, rng).sk.e));
}
