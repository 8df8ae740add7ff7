#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "dcid/cw.hpp"
#include "dcid/rng.hpp"

using namespace dcid;

TEST_CASE("BigUInt arithmetic basics") {
  BigUInt a(uint64_t{1} << 63);
  a += a;  // 2^64
  CHECK(a.bit_length() == 65);
  CHECK(a.bit(64));
  BigUInt b = a;
  b -= BigUInt(1);
  CHECK(b.bit_length() == 64);
  CHECK(b < a);
  b += BigUInt(1);
  CHECK(b == a);

  BigUInt c(3);
  c.mul_u64(UINT64_MAX);
  uint64_t rem = c.divmod_u64(UINT64_MAX);
  CHECK(rem == 0);
  CHECK(c == BigUInt(3));

  CHECK(BigUInt::pow2(100).bit_length() == 101);
  CHECK(BigUInt::pow(10, 3) == BigUInt(1000));
  CHECK(std::abs(BigUInt::pow2(100).log2() - 100.0) < 1e-9);
}

TEST_CASE("binomials: exact values and dual-route log2") {
  CHECK(binomial(4, 2) == BigUInt(6));
  CHECK(binomial(10, 0) == BigUInt(1));
  CHECK(binomial(10, 10) == BigUInt(1));
  CHECK(binomial(10, 11).is_zero());
  CHECK(binomial(52, 5) == BigUInt(2598960));

  // The exact big-integer route and the floating summation agree.
  for (auto [n, k] : {std::pair{698u, 70u}, {838u, 86u}, {1094u, 109u}}) {
    double exact = binomial(n, k).log2();
    double summed = log2_binomial(n, k);
    CHECK(std::abs(exact - summed) < 1e-6 * exact);
  }
  // Frozen from the exact big-integer evaluation.
  CHECK(binomial(698, 70).bit_length() == 324);
  CHECK(std::abs(binomial(698, 70).log2() - 323.6765553883928) < 1e-6);
}

TEST_CASE("cw codec enumerates C(4,2) bijectively") {
  CHECK(cw_bits(4, 2) == 3);  // 6 ranks need 3 bits
  std::vector<BitWord> words;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      BitWord v(4);
      v.set(a, true);
      v.set(b, true);
      words.push_back(v);
    }
  std::vector<bool> seen(6, false);
  for (const auto& v : words) {
    BigUInt r = cw_rank(v, 2);
    CHECK(r < BigUInt(6));
    uint64_t idx = r.is_zero() ? 0 : (r.bit(0) ? 1 : 0) + (r.bit(1) ? 2 : 0) + (r.bit(2) ? 4 : 0);
    CHECK_FALSE(seen[idx]);
    seen[idx] = true;
    auto back = cw_unrank(r, 4, 2);
    REQUIRE(back.ok());
    CHECK(*back.value == v);
  }
  for (bool s : seen) CHECK(s);
  CHECK_FALSE(cw_unrank(BigUInt(6), 4, 2).ok());  // rank out of range
}

TEST_CASE("cw corner cases and errors") {
  BitWord zero(9);
  CHECK(cw_bits(9, 0) == 0);
  auto enc = cw_encode(zero, 0);
  REQUIRE(enc.ok());
  CHECK(enc.value->empty());  // zero bits needed
  auto dec = cw_decode({}, 9, 0);
  REQUIRE(dec.ok());
  CHECK(dec.value->is_zero());

  BitWord w1(9);
  w1.set(3, true);
  CHECK_FALSE(cw_encode(w1, 2).ok());  // wrong weight

  // Nonzero padding rejected.
  auto rng = Rng::from_seed(std::array<uint8_t, 2>{3, 3});
  BitWord v = sample_fixed_weight(16, 4, rng);
  auto bytes = cw_encode(v, 4);
  REQUIRE(bytes.ok());
  size_t bits = cw_bits(16, 4);
  if (bits % 8) {
    auto bad = *bytes.value;
    bad.back() |= uint8_t(0x80);
    CHECK_FALSE(cw_decode(bad, 16, 4).ok());
  }
}

TEST_CASE("cw round-trips at paper scale within the k-bit budget") {
  CHECK(cw_bits(698, 70) == 324);  // ceil(log2 C(698,70)), frozen above
  CHECK(cw_bits(698, 70) <= 349);
  auto rng = Rng::from_seed(std::array<uint8_t, 2>{3, 4});
  for (int it = 0; it < 5; ++it) {
    BitWord v = sample_fixed_weight(698, 70, rng);
    auto enc = cw_encode(v, 70);
    REQUIRE(enc.ok());
    CHECK(enc.value->size() == cw_bytes(698, 70));
    auto dec = cw_decode(*enc.value, 698, 70);
    REQUIRE(dec.ok());
    CHECK(*dec.value == v);
  }
}
