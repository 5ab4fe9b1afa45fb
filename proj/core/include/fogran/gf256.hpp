#pragma once

#include <cstdint>
#include <vector>

namespace fogran::gf256 {

// GF(2^8) modulo x^8+x^4+x^3+x+1 (0x11B); 0x03 generates the multiplicative group.
std::uint8_t mul(std::uint8_t a, std::uint8_t b);
std::uint8_t inv(std::uint8_t a);
inline std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }

// Row-reduces the matrix in place (row-major, rows x cols) and returns its rank.
// pivots receives the pivot column of each of the first `rank` rows.
int rref(std::vector<std::uint8_t>& m, int rows, int cols, int ncoef, std::vector<int>* pivots = nullptr);
int rank(std::vector<std::uint8_t> m, int rows, int cols);

}  // namespace fogran::gf256
