#include "dcid/bigint.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace dcid {

void BigUInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

size_t BigUInt::bit_length() const {
  if (limbs_.empty()) return 0;
  return 64 * (limbs_.size() - 1) + (64 - std::countl_zero(limbs_.back()));
}

bool BigUInt::bit(size_t i) const {
  size_t w = i / 64;
  if (w >= limbs_.size()) return false;
  return (limbs_[w] >> (i % 64)) & 1;
}

int BigUInt::cmp(const BigUInt& o) const {
  if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
  for (size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
  }
  return 0;
}

BigUInt& BigUInt::operator+=(const BigUInt& o) {
  if (o.limbs_.size() > limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
  unsigned __int128 carry = 0;
  for (size_t i = 0; i < limbs_.size(); ++i) {
    unsigned __int128 s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
    limbs_[i] = static_cast<uint64_t>(s);
    carry = s >> 64;
  }
  if (carry) limbs_.push_back(static_cast<uint64_t>(carry));
  return *this;
}

BigUInt& BigUInt::operator-=(const BigUInt& o) {
  if (cmp(o) < 0) throw std::invalid_argument("BigUInt subtraction underflow");
  uint64_t borrow = 0;
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t sub = (i < o.limbs_.size() ? o.limbs_[i] : 0);
    uint64_t before = limbs_[i];
    uint64_t after = before - sub - borrow;
    borrow = (before < sub + borrow) || (sub == UINT64_MAX && borrow) ? 1 : 0;
    limbs_[i] = after;
  }
  trim();
  return *this;
}

BigUInt& BigUInt::mul_u64(uint64_t m) {
  if (m == 0) {
    limbs_.clear();
    return *this;
  }
  unsigned __int128 carry = 0;
  for (size_t i = 0; i < limbs_.size(); ++i) {
    unsigned __int128 p = static_cast<unsigned __int128>(limbs_[i]) * m + carry;
    limbs_[i] = static_cast<uint64_t>(p);
    carry = p >> 64;
  }
  if (carry) limbs_.push_back(static_cast<uint64_t>(carry));
  return *this;
}

uint64_t BigUInt::divmod_u64(uint64_t d) {
  if (d == 0) throw std::invalid_argument("BigUInt division by zero");
  unsigned __int128 rem = 0;
  for (size_t i = limbs_.size(); i-- > 0;) {
    unsigned __int128 cur = (rem << 64) | limbs_[i];
    limbs_[i] = static_cast<uint64_t>(cur / d);
    rem = cur % d;
  }
  trim();
  return static_cast<uint64_t>(rem);
}

BigUInt& BigUInt::shl1() {
  uint64_t carry = 0;
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t next = limbs_[i] >> 63;
    limbs_[i] = (limbs_[i] << 1) | carry;
    carry = next;
  }
  if (carry) limbs_.push_back(carry);
  return *this;
}

double BigUInt::log2() const {
  if (limbs_.empty()) throw std::invalid_argument("log2 of zero");
  size_t bl = bit_length();
  if (bl <= 63) return std::log2(static_cast<double>(limbs_[0]));
  // Top 64 bits as mantissa; exponent accounts for the rest.
  size_t top = bl - 64;
  uint64_t mant = 0;
  for (int b = 63; b >= 0; --b) mant = (mant << 1) | (bit(top + b) ? 1 : 0);
  return std::log2(static_cast<double>(mant)) + static_cast<double>(top);
}

BigUInt BigUInt::pow2(size_t e) {
  BigUInt v;
  v.limbs_.assign(e / 64 + 1, 0);
  v.limbs_[e / 64] = uint64_t{1} << (e % 64);
  return v;
}

BigUInt BigUInt::pow(uint64_t base, uint32_t exp) {
  BigUInt v(1);
  for (uint32_t i = 0; i < exp; ++i) v.mul_u64(base);
  return v;
}

BigUInt binomial(uint32_t n, uint32_t k) {
  if (k > n) return BigUInt(0);
  if (k > n - k) k = n - k;
  BigUInt c(1);
  for (uint32_t j = 0; j < k; ++j) {
    c.mul_u64(n - j);
    uint64_t rem = c.divmod_u64(j + 1);
    if (rem) throw std::logic_error("binomial: non-exact division");
  }
  return c;
}

double log2_binomial(uint32_t n, uint32_t k) {
  if (k > n) throw std::invalid_argument("log2_binomial: k > n");
  if (k > n - k) k = n - k;
  double s = 0;
  for (uint32_t j = 0; j < k; ++j) s += std::log2(double(n - j)) - std::log2(double(j + 1));
  return s;
}

}  // namespace dcid
