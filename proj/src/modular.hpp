#pragma once

// Word-size prime field arithmetic, Gaussian elimination mod p, CRT and
// rational reconstruction.

#include <cstdint>
#include <optional>
#include <vector>

#include "caustica/rational.hpp"

namespace caustica::modp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 add(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mul(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow(u64 a, u64 e, u64 p);
u64 inv(u64 a, u64 p);

/// Primes just below 2^62, largest first; deterministic.
const std::vector<u64>& primes();

/// q mod p; nullopt when p divides the denominator.
std::optional<u64> reduce(const Rational& q, u64 p);

/// Basis of the right kernel of `rows` (each of width `cols`) mod p.
std::vector<std::vector<u64>> kernel(std::vector<std::vector<u64>> rows, std::size_t cols, u64 p);

/// x = a mod m with x = b mod p, 0 <= x < m p. Updates (a, m) in place.
void crt(Integer& a, Integer& m, u64 b, u64 p);

/// n/d with n = d a mod m, |n|, d <= sqrt(m / 2); nullopt if none.
std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m);

}  // namespace caustica::modp
