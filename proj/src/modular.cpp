#include "modular.hpp"

namespace caustica::modp {

u64 pow(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 inv(u64 a, u64 p) { return pow(a, p - 2, p); }

namespace {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
    if (n % q == 0) return n == q;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all 64-bit n.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

const std::vector<u64>& primes() {
  static const std::vector<u64> list = [] {
    std::vector<u64> out;
    for (u64 n = (u64(1) << 62) - 1; out.size() < 64; n -= 2)
      if (is_prime(n)) out.push_back(n);
    return out;
  }();
  return list;
}

std::optional<u64> reduce(const Rational& q, u64 p) {
  Integer pz;
  mpz_set_ui(pz.get_mpz_t(), 0);
  mpz_import(pz.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
  Integer n = q.get_num() % pz;
  if (n < 0) n += pz;
  Integer d = q.get_den() % pz;
  if (d == 0) return std::nullopt;
  u64 nv = 0, dv = 0;
  mpz_export(&nv, nullptr, 1, sizeof(u64), 0, 0, n.get_mpz_t());
  mpz_export(&dv, nullptr, 1, sizeof(u64), 0, 0, d.get_mpz_t());
  return mul(nv, inv(dv, p), p);
}

std::vector<std::vector<u64>> kernel(std::vector<std::vector<u64>> rows, std::size_t cols, u64 p) {
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[rank]);
    u64 iv = inv(rows[rank][c], p);
    for (std::size_t k = c; k < cols; ++k) rows[rank][k] = mul(rows[rank][k], iv, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      u64 f = rows[i][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] = sub(rows[i][k], mul(f, rows[rank][k], p), p);
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<u64>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<u64> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < rank; ++i) v[pivot_col[i]] = sub(0, rows[i][free], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

void crt(Integer& a, Integer& m, u64 b, u64 p) {
  Integer pz;
  mpz_import(pz.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
  if (m == 1) {
    a = Integer(0);
    mpz_import(a.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &b);
    m = pz;
    return;
  }
  // x = a + m * k with k = (b - a) / m mod p.
  Integer bz;
  mpz_import(bz.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &b);
  Integer diff = (bz - a) % pz;
  if (diff < 0) diff += pz;
  Integer minv;
  mpz_invert(minv.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t());
  Integer k = diff * minv % pz;
  a += m * k;
  m *= pz;
}

std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  Integer s0 = 0, s1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rational q(r1, s1);
  q.canonicalize();
  return q;
}

}  // namespace caustica::modp
