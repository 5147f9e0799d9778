#pragma once

#include <cstdint>
#include <vector>

namespace rrsyt::modp {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

inline std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t out = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) out = out * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return out;
}

/// Inverse of a nonzero residue modulo a prime p < 2^32.
inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) { return pow(a, p - 2, p); }

inline std::uint64_t neg(std::uint64_t a, std::uint64_t p) { return a == 0 ? 0 : p - a; }

/// Dense row-major matrix over GF(p), entries in [0, p).
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint32_t> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  std::uint32_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

enum class PivotOrder {
  natural,   // columns left to right
  reversed,  // columns right to left, rows bottom to top
};

/// Basis of {v : M v = 0} over GF(p). Each basis vector has a 1 at its free
/// column and zeros at the other free columns. p must be an odd prime < 2^31.
std::vector<std::vector<std::uint64_t>> nullspace(const Matrix& m, std::uint64_t p,
                                                  PivotOrder order = PivotOrder::natural);

/// Rank of M over GF(p); cheaper than nullspace when only emptiness matters.
std::size_t rank(const Matrix& m, std::uint64_t p, PivotOrder order = PivotOrder::natural);

}  // namespace rrsyt::modp
