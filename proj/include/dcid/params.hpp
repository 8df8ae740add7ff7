#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <string_view>

namespace dcid {

// Preset double-circulant parameters. id_rounds targets a 2^-16 cheating
// probability; sig_rounds is five times that, following the signature
// construction (rounds_for(80, k, i) gives the sharper count).
struct ParamSet {
  uint16_t id = 0;
  const char* name = "";
  uint32_t n = 0;  // code length, n = 2k
  uint32_t k = 0;  // circulant block size
  uint32_t w = 0;  // secret weight
  uint32_t i = 0;  // soundness slack parameter
  uint16_t id_rounds = 0;
  uint16_t sig_rounds = 0;
  uint16_t security_bits = 0;  // documentation label
};

std::span<const ParamSet> presets();
const ParamSet* preset_by_id(uint16_t id);
const ParamSet* preset_by_name(std::string_view name);

struct Rational {
  uint64_t num = 0;
  uint64_t den = 1;

  Rational reduced() const {
    uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
  }
  double value() const { return double(num) / double(den); }
  bool operator==(const Rational& o) const {
    return num * o.den == o.num * den;  // small operands only
  }
};

// Per-round cheating probability bound (k+i)/(2k), exact.
Rational cheat_probability(uint32_t k, uint32_t i);

// Smallest R with ((k+i)/2k)^R <= 2^-target_log2, exact integer arithmetic.
uint32_t rounds_for(uint32_t target_log2, uint32_t k, uint32_t i);

// Same for the 3-pass baseline's 2/3 bound.
uint32_t veron_rounds_for(uint32_t target_log2);

// log2 of the key-recovery failure term of the as-printed soundness
// theorem: (2^{n-k} - i) / (2^{n-k} + n - 1)^i * C(n,w)^i. The printed
// expression's typography is suspect (see soundness_bound_note); callers
// check failure <= 2^-80 only where the parameter set was designed for it.
double soundness_failure_log2(uint32_t n, uint32_t k, uint32_t w, uint32_t i);
const char* soundness_bound_note();

// Largest d with sum_{j<d} C(n,j) <= 2^{n-k}, exact.
uint32_t gv_distance(uint32_t n, uint32_t k);

}  // namespace dcid
