#pragma once

#include <cstdint>
#include <vector>

namespace dcid {

// Minimal arbitrary-precision unsigned integer: just what combinatorial
// ranking, the GV bound and the round-count calculators need.
class BigUInt {
 public:
  BigUInt() = default;
  BigUInt(uint64_t v) {
    if (v) limbs_.push_back(v);
  }

  bool is_zero() const { return limbs_.empty(); }
  size_t bit_length() const;
  bool bit(size_t i) const;

  // -1, 0, 1
  int cmp(const BigUInt& o) const;
  bool operator==(const BigUInt& o) const { return limbs_ == o.limbs_; }
  bool operator<(const BigUInt& o) const { return cmp(o) < 0; }
  bool operator<=(const BigUInt& o) const { return cmp(o) <= 0; }

  BigUInt& operator+=(const BigUInt& o);
  BigUInt& operator-=(const BigUInt& o);  // requires *this >= o
  BigUInt& mul_u64(uint64_t m);
  uint64_t divmod_u64(uint64_t d);  // returns remainder
  BigUInt& shl1();

  friend BigUInt operator+(BigUInt a, const BigUInt& b) { return a += b; }
  friend BigUInt operator-(BigUInt a, const BigUInt& b) { return a -= b; }

  // log2 with ~50 bits of precision; -inf is never produced (0 -> throws).
  double log2() const;

  static BigUInt pow2(size_t e);
  static BigUInt pow(uint64_t base, uint32_t exp);

 private:
  void trim();
  std::vector<uint64_t> limbs_;  // little-endian, canonical
};

// Exact binomial coefficient via the multiplicative formula.
BigUInt binomial(uint32_t n, uint32_t k);

// Summation route: sum of log2((n-j)/(j+1)) in double precision. An
// independent check on binomial(); the two agree to ~1e-9 relative.
double log2_binomial(uint32_t n, uint32_t k);

}  // namespace dcid
