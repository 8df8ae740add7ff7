#include "dcid/code.hpp"

#include <stdexcept>

namespace dcid {

BitWord encode(const DoubleCirculantCode& code, const BitWord& m) {
  if (m.len() != code.k || code.a_row.len() != code.k)
    throw std::invalid_argument("encode: length mismatch");
  return BitWord::concat(m, circ_mul(code.a_row, m));
}

BitWord syndrome(const DoubleCirculantCode& code, const BitWord& y) {
  if (y.len() != 2 * size_t{code.k}) throw std::invalid_argument("syndrome: length mismatch");
  BitWord s = circ_mul(code.a_row, y.first_half());
  s ^= y.second_half();
  return s;
}

}  // namespace dcid
