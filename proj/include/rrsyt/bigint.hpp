#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace rrsyt {

using BigInt = mpz_class;

inline BigInt factorial(std::uint64_t n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

// Parses a base-10 integer; throws InvalidInput on malformed text.
BigInt parse_bigint(const std::string& text);

inline std::uint64_t reduce_mod(const BigInt& v, std::uint64_t prime) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(prime));
  return r.get_ui();
}

}  // namespace rrsyt
