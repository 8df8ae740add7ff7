#include "dcid/params.hpp"

#include <cmath>
#include <stdexcept>

#include "dcid/bigint.hpp"

namespace dcid {

namespace {

constexpr ParamSet kPresets[] = {
    {0, "p81", 698, 349, 70, 19, 18, 90, 81},
    {1, "p100", 838, 419, 86, 20, 18, 90, 100},
    {2, "p128", 1094, 547, 109, 14, 17, 85, 128},
    // Toy scale for exhaustive sweeps and the selftest command.
    {3, "toy7", 14, 7, 2, 1, 20, 100, 0},
};

}  // namespace

std::span<const ParamSet> presets() { return kPresets; }

const ParamSet* preset_by_id(uint16_t id) {
  for (const ParamSet& p : kPresets)
    if (p.id == id) return &p;
  return nullptr;
}

const ParamSet* preset_by_name(std::string_view name) {
  for (const ParamSet& p : kPresets)
    if (name == p.name) return &p;
  return nullptr;
}

Rational cheat_probability(uint32_t k, uint32_t i) {
  if (k == 0 || i >= k) throw std::invalid_argument("cheat_probability: need 0 <= i < k");
  return Rational{k + i, 2 * uint64_t{k}};
}

uint32_t rounds_for(uint32_t target_log2, uint32_t k, uint32_t i) {
  if (target_log2 == 0) throw std::invalid_argument("rounds_for: target must be >= 1");
  if (k == 0 || i >= k) throw std::invalid_argument("rounds_for: need 0 <= i < k");
  // ((k+i)/2k)^R <= 2^-t  <=>  (k+i)^R * 2^t <= (2k)^R
  BigUInt num(1), den(1);
  for (uint32_t r = 1;; ++r) {
    num.mul_u64(k + i);
    den.mul_u64(2 * uint64_t{k});
    BigUInt lhs = num;
    for (size_t b = 0; b < target_log2; ++b) lhs.shl1();
    if (lhs <= den) return r;
    if (r > 100000) throw std::logic_error("rounds_for: no convergence");
  }
}

uint32_t veron_rounds_for(uint32_t target_log2) {
  // (2/3)^R <= 2^-t  <=>  2^{R+t} <= 3^R
  BigUInt three(1);
  for (uint32_t r = 1;; ++r) {
    three.mul_u64(3);
    if (BigUInt::pow2(r + target_log2) <= three) return r;
    if (r > 100000) throw std::logic_error("veron_rounds_for: no convergence");
  }
}

double soundness_failure_log2(uint32_t n, uint32_t k, uint32_t w, uint32_t i) {
  if (n <= k || w > n) throw std::invalid_argument("soundness_failure_log2: bad parameters");
  const double nk = double(n - k);
  // log2(2^{n-k} - i): i is negligible against 2^{n-k} at any usable size,
  // but evaluate the exact expression when it fits a double.
  double t1;
  if (nk <= 52) {
    t1 = std::log2(std::ldexp(1.0, int(nk)) - double(i));
  } else {
    t1 = nk + std::log2(1.0 - std::ldexp(double(i), -int(nk)));
  }
  const double t2 = double(i) * (nk + std::log2(1.0 + std::ldexp(double(n) - 1.0, -int(nk))));
  const double t3 = double(i) * binomial(n, w).log2();
  return t1 - t2 + t3;
}

const char* soundness_bound_note() {
  return "as-printed soundness-theorem expression; typography of the published "
         "bound is suspect, value reported verbatim";
}

uint32_t gv_distance(uint32_t n, uint32_t k) {
  if (n != 2 * k) throw std::invalid_argument("gv_distance: n must equal 2k");
  const BigUInt limit = BigUInt::pow2(n - k);
  BigUInt sum(0);
  uint32_t d = 0;
  for (uint32_t j = 0; j <= n; ++j) {
    sum += binomial(n, j);
    if (limit < sum) break;
    d = j + 1;  // sum_{t<=j} C(n,t) still within 2^{n-k}
  }
  return d;
}

}  // namespace dcid
