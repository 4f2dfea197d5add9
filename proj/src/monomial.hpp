#pragma once

// Packed monomial helpers shared by the polynomial sources.

#include <vector>

#include "caustica/error.hpp"
#include "caustica/poly.hpp"

namespace caustica::mono {

constexpr int shift(std::size_t i) { return 8 * (6 - static_cast<int>(i)); }

inline int exp(Monomial m, std::size_t i) { return static_cast<int>((m >> shift(i)) & 0xFFu); }
inline int total(Monomial m) { return static_cast<int>(m >> 56); }
inline Monomial unit(std::size_t i) { return (Monomial(1) << 56) | (Monomial(1) << shift(i)); }

inline Monomial pack(const std::vector<int>& e) {
  if (e.size() > kMaxVars) throw Error(ErrorKind::Internal, "too many polynomial variables");
  Monomial m = 0;
  int tot = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0) throw Error(ErrorKind::Internal, "negative exponent");
    tot += e[i];
    if (tot > kMaxDegree) throw Error(ErrorKind::Internal, "polynomial total degree exceeds 255");
    m |= Monomial(e[i]) << shift(i);
  }
  return m | (Monomial(tot) << 56);
}

inline bool divides(Monomial d, Monomial m, std::size_t nvars) {
  for (std::size_t i = 0; i < nvars; ++i)
    if (exp(d, i) > exp(m, i)) return false;
  return true;
}

}  // namespace caustica::mono
