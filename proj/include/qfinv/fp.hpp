#pragma once

#include <cstdint>

namespace qfinv::fp {

inline std::uint32_t reduce(std::int64_t a, std::uint32_t p) {
  const auto m = static_cast<std::int64_t>(p);
  auto r = a % m;
  if (r < 0) r += m;
  return static_cast<std::uint32_t>(r);
}

inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p);
}

inline std::uint32_t pow(std::uint32_t base, std::uint64_t e, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  std::uint64_t b = base % p;
  while (e > 0) {
    if (e & 1) result = (result * b) % p;
    b = (b * b) % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

/// Inverse of a nonzero element of F_p, p prime.
inline std::uint32_t inv(std::uint32_t a, std::uint32_t p) { return pow(a, p - 2, p); }

/// Euler's criterion. Precondition: a != 0 mod p, p odd prime.
inline bool is_square(std::uint32_t a, std::uint32_t p) { return pow(a, (p - 1) / 2, p) == 1; }

inline std::uint32_t least_nonresidue(std::uint32_t p) {
  for (std::uint32_t a = 2; a < p; ++a) {
    if (!is_square(a, p)) return a;
  }
  return 0;
}

}  // namespace qfinv::fp
