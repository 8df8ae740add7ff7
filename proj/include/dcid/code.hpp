#pragma once

#include <cstdint>

#include "dcid/bitword.hpp"

namespace dcid {

// Rate-1/2 double-circulant code: generator G = [I | A] with A the k x k
// circulant whose row j is rot_block(a_row, j). The parity check is taken
// as H = [A^T | I], the unique circulant-commuting choice annihilating G,
// so syndrome(y) = y1*A + y2 and rotation commutes with the syndrome map.
struct DoubleCirculantCode {
  uint32_t k = 0;
  BitWord a_row;  // first row of A, length k
};

// (m, m*A), length n = 2k.
BitWord encode(const DoubleCirculantCode& code, const BitWord& m);

// circ_mul(a_row, y1) ^ y2, length k; zero exactly on codewords.
BitWord syndrome(const DoubleCirculantCode& code, const BitWord& y);

}  // namespace dcid
