// Evolute by exact implicitization of the curvature-center map.
//
// On G(x0, y0) = 0 the ED equations H = J = 0 are linear in (x, y), so the
// curvature center is (Dx / D, Dy / D) with D, Dx, Dy polynomials in (x0, y0).
// An evolute candidate E of degree d must satisfy
//   sum_ab c_ab Dx^a Dy^b D^(d-a-b) = 0  mod G.
// After the shear x0 = u + c y0, G is monic in y0 up to a constant, so the
// remainder mod G is a polynomial in u of degree <= d * deg(D, Dx, Dy) with
// coefficients in Q[y0]/G. Sampling u at that many points + 1 makes the
// linear conditions equivalent to the identity. The kernel is found mod
// word-size primes, lifted by CRT and rational reconstruction, and certified
// with the same sample set over Q.

#include <algorithm>

#include "caustica/caustic.hpp"
#include "modular.hpp"

namespace caustica {

namespace {

struct ModField {
  using T = modp::u64;
  modp::u64 p;
  T zero() const { return 0; }
  T from_int(long v) const { return v >= 0 ? T(v) % p : modp::sub(0, T(-v) % p, p); }
  T add(T a, T b) const { return modp::add(a, b, p); }
  T sub(T a, T b) const { return modp::sub(a, b, p); }
  T mul(T a, T b) const { return modp::mul(a, b, p); }
  T inv(T a) const { return modp::inv(a, p); }
  bool is_zero(const T& a) const { return a == 0; }
};

struct RatField {
  using T = Rational;
  T zero() const { return 0; }
  T from_int(long v) const { return v; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T inv(const T& a) const { return 1 / a; }
  bool is_zero(const T& a) const { return a == 0; }
};

// Bivariate polynomial in (u, y0) with coefficients already mapped into F.
template <class F>
struct Biv {
  struct Entry {
    int a, b;  // u^a y0^b
    typename F::T c;
  };
  std::vector<Entry> terms;
  int max_a = 0, max_b = 0;
};

template <class F>
std::optional<Biv<F>> map_poly(const MPoly& p, const F& f);

template <>
std::optional<Biv<ModField>> map_poly(const MPoly& p, const ModField& f) {
  Biv<ModField> out;
  for (const auto& t : p.terms()) {
    auto c = modp::reduce(t.coef, f.p);
    if (!c) return std::nullopt;
    int a = p.exponent(t, 0), b = p.exponent(t, 1);
    out.terms.push_back({a, b, *c});
    out.max_a = std::max(out.max_a, a);
    out.max_b = std::max(out.max_b, b);
  }
  return out;
}

template <>
std::optional<Biv<RatField>> map_poly(const MPoly& p, const RatField&) {
  Biv<RatField> out;
  for (const auto& t : p.terms()) {
    int a = p.exponent(t, 0), b = p.exponent(t, 1);
    out.terms.push_back({a, b, t.coef});
    out.max_a = std::max(out.max_a, a);
    out.max_b = std::max(out.max_b, b);
  }
  return out;
}

template <class F>
using UPoly = std::vector<typename F::T>;  // ascending powers of y0

template <class F>
UPoly<F> specialize(const Biv<F>& p, const std::vector<typename F::T>& upow, const F& f) {
  UPoly<F> out(static_cast<std::size_t>(p.max_b) + 1, f.zero());
  for (const auto& e : p.terms) out[e.b] = f.add(out[e.b], f.mul(e.c, upow[e.a]));
  return out;
}

// Arithmetic in F[y0] / (y0^e + g_{e-1} y0^{e-1} + ... + g_0).
template <class F>
struct Algebra {
  const F& f;
  UPoly<F> g;  // monic modulus, size e + 1

  std::size_t dim() const { return g.size() - 1; }

  UPoly<F> reduce(UPoly<F> p) const {
    const std::size_t e = dim();
    for (std::size_t k = p.size(); k-- > e;) {
      if (f.is_zero(p[k])) continue;
      auto c = p[k];
      for (std::size_t i = 0; i <= e; ++i) p[k - e + i] = f.sub(p[k - e + i], f.mul(c, g[i]));
    }
    p.resize(e, f.zero());
    return p;
  }

  UPoly<F> mul(const UPoly<F>& a, const UPoly<F>& b) const {
    UPoly<F> p(a.size() + b.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (f.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) p[i + j] = f.add(p[i + j], f.mul(a[i], b[j]));
    }
    return reduce(std::move(p));
  }

  std::vector<UPoly<F>> powers(const UPoly<F>& x, int d) const {
    std::vector<UPoly<F>> out;
    UPoly<F> one(dim(), f.zero());
    one[0] = f.from_int(1);
    out.push_back(one);
    for (int k = 1; k <= d; ++k) out.push_back(mul(out.back(), x));
    return out;
  }
};

struct Setup {
  MPoly g, dx, dy, dd;  // in (u, y0)
  int e = 0;            // deg_y0 G
  int phi_degree = 0;   // max total degree of dx, dy, dd
};

long sample_point(int i) { return (i % 2 == 0) ? i / 2 : -(i + 1) / 2; }

std::vector<std::pair<int, int>> exponents_for(int d) {
  std::vector<std::pair<int, int>> out;
  for (int tot = d; tot >= 0; --tot)
    for (int a = tot; a >= 0; --a) out.emplace_back(a, tot - a);
  return out;
}

// One sample: the algebra elements Dx^a Dy^b D^(d-a-b) for all unknowns.
// Returns nullopt when the sample is unusable for this field.
template <class F>
std::optional<std::vector<UPoly<F>>> sample_elements(const Biv<F>& g, const Biv<F>& dx, const Biv<F>& dy,
                                                     const Biv<F>& dd, long u, int d,
                                                     const std::vector<std::pair<int, int>>& exps, const F& f) {
  int max_a = std::max({g.max_a, dx.max_a, dy.max_a, dd.max_a});
  std::vector<typename F::T> upow(static_cast<std::size_t>(max_a) + 1);
  upow[0] = f.from_int(1);
  auto uv = f.from_int(u);
  for (int k = 1; k <= max_a; ++k) upow[k] = f.mul(upow[k - 1], uv);
  UPoly<F> gm = specialize(g, upow, f);
  if (f.is_zero(gm.back())) return std::nullopt;
  auto lc_inv = f.inv(gm.back());
  for (auto& c : gm) c = f.mul(c, lc_inv);
  Algebra<F> alg{f, gm};
  auto xp = alg.powers(alg.reduce(specialize(dx, upow, f)), d);
  auto yp = alg.powers(alg.reduce(specialize(dy, upow, f)), d);
  auto zp = alg.powers(alg.reduce(specialize(dd, upow, f)), d);
  std::vector<UPoly<F>> out;
  out.reserve(exps.size());
  for (auto [a, b] : exps) out.push_back(alg.mul(alg.mul(xp[a], yp[b]), zp[d - a - b]));
  return out;
}

Setup prepare(const MPoly& g_in, const std::string& gx, const std::string& gy) {
  EdSystem sys = ed_system(g_in, gx, gy);
  auto split = [](const MPoly& p) {
    auto cx = coefficients_in(p, "x");
    if (cx.size() > 2) throw Error(ErrorKind::Internal, "ED equation is not linear in x");
    MPoly px = cx.size() == 2 ? cx[1] : MPoly(p.vars());
    auto cy = coefficients_in(cx[0], "y");
    if (cy.size() > 2 || px.involves("y")) throw Error(ErrorKind::Internal, "ED equation is not linear in y");
    MPoly py = cy.size() == 2 ? cy[1] : MPoly(p.vars());
    return std::array<MPoly, 3>{px, py, cy[0]};
  };
  auto [hx, hy, h0] = split(sys.h);
  auto [jx, jy, j0] = split(sys.j);
  MPoly dd = hx * jy - hy * jx;
  MPoly dx = hy * j0 - h0 * jy;
  MPoly dy = h0 * jx - hx * j0;

  MPoly g = sys.g;
  const int e = g.total_degree();
  if (e < 1) throw Error(ErrorKind::ZeroResultant, "curve equation is constant");
  // Shear so that the top form does not vanish at (c, 1).
  auto xi = g.var_index("x0");
  long shear = 0;
  for (long c : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 5L, 7L}) {
    Rational top = 0;
    for (const auto& t : g.terms()) {
      if (g.total_degree() != static_cast<int>(t.mono >> 56)) continue;
      int a = xi ? g.exponent(t, *xi) : 0;
      Rational pw = 1;
      for (int k = 0; k < a; ++k) pw *= c;
      top += t.coef * pw;
    }
    if (top != 0) {
      shear = c;
      break;
    }
  }
  MPoly u = MPoly::variable("u");
  MPoly y0 = MPoly::variable("y0");
  MPoly x0 = u + Rational(shear) * y0;
  const MPoly::VarList uv{"u", "y0"};
  auto to_uv = [&](const MPoly& p) { return substitute(p, "x0", x0).with_vars(uv); };
  Setup s{to_uv(g), to_uv(dx), to_uv(dy), to_uv(dd), e, 0};
  if (s.g.degree_in("y0") != e) throw Error(ErrorKind::Internal, "shear did not make G monic in y0");
  s.phi_degree = std::max({s.dx.total_degree(), s.dy.total_degree(), s.dd.total_degree(), 0});
  return s;
}

// Kernel of the sampled conditions mod p; nullopt for an unlucky prime.
std::optional<std::vector<std::vector<modp::u64>>> kernel_mod(const Setup& s, int d,
                                                              const std::vector<std::pair<int, int>>& exps,
                                                              modp::u64 p) {
  ModField f{p};
  auto g = map_poly(s.g, f), dx = map_poly(s.dx, f), dy = map_poly(s.dy, f), dd = map_poly(s.dd, f);
  if (!g || !dx || !dy || !dd) return std::nullopt;
  const int samples = d * s.phi_degree + 1;
  std::vector<std::vector<modp::u64>> rows;
  int used = 0;
  for (int i = 0; used < samples; ++i) {
    if (i > 4 * samples + 64) return std::nullopt;
    auto el = sample_elements(*g, *dx, *dy, *dd, sample_point(i), d, exps, f);
    if (!el) continue;
    ++used;
    for (int k = 0; k < s.e; ++k) {
      std::vector<modp::u64> row(exps.size());
      for (std::size_t j = 0; j < exps.size(); ++j) row[j] = (*el)[j][k];
      rows.push_back(std::move(row));
    }
  }
  return modp::kernel(std::move(rows), exps.size(), p);
}

bool certify(const Setup& s, int d, const std::vector<std::pair<int, int>>& exps, const std::vector<Rational>& c) {
  RatField f;
  auto g = *map_poly(s.g, f), dx = *map_poly(s.dx, f), dy = *map_poly(s.dy, f), dd = *map_poly(s.dd, f);
  const int samples = d * s.phi_degree + 1;
  int used = 0;
  for (int i = 0; used < samples; ++i) {
    // The y0-leading coefficient of G is a nonzero constant: every sample works.
    auto el = sample_elements(g, dx, dy, dd, sample_point(i), d, exps, f);
    if (!el) throw Error(ErrorKind::Internal, "certification sample rejected");
    ++used;
    for (int k = 0; k < s.e; ++k) {
      Rational acc = 0;
      for (std::size_t j = 0; j < exps.size(); ++j)
        if (c[j] != 0) acc += c[j] * (*el)[j][k];
      if (acc != 0) return false;
    }
  }
  return true;
}

MPoly implicitize(const MPoly& g_in, const EvoluteOptions& options) {
  Setup s = prepare(g_in, options.gx, options.gy);
  const int e = g_in.total_degree();
  const int max_d = options.max_degree > 0 ? options.max_degree : std::max(1, 3 * e * (e - 1));
  const auto& primes = modp::primes();
  for (int d = 1; d <= max_d; ++d) {
    auto exps = exponents_for(d);
    std::size_t pi = 0;
    std::optional<std::vector<std::vector<modp::u64>>> basis;
    while (pi < primes.size() && !(basis = kernel_mod(s, d, exps, primes[pi]))) ++pi;
    if (!basis) throw Error(ErrorKind::Internal, "no usable prime for implicitization");
    if (basis->empty()) continue;
    if (basis->size() > 1) {
      // Confirm with a second prime before declaring the image degenerate.
      std::optional<std::vector<std::vector<modp::u64>>> again;
      ++pi;
      while (pi < primes.size() && !(again = kernel_mod(s, d, exps, primes[pi]))) ++pi;
      if (again && again->empty()) continue;
      if (again && again->size() > 1)
        throw Error(ErrorKind::ZeroResultant, "curvature-center map has a zero-dimensional image");
      basis = again;
      if (!basis) throw Error(ErrorKind::Internal, "no usable prime for implicitization");
    }
    // Normalize at the first nonzero coordinate of the first kernel vector.
    const auto& v0 = (*basis)[0];
    std::size_t anchor = 0;
    while (v0[anchor] == 0) ++anchor;
    std::vector<Integer> residues(exps.size(), Integer(0));
    Integer modulus = 1;
    bool wrong_degree = false;
    auto absorb = [&](const std::vector<modp::u64>& v, modp::u64 p) {
      modp::u64 scale = modp::inv(v[anchor], p);
      Integer m;
      for (std::size_t j = 0; j < exps.size(); ++j) {
        m = modulus;
        modp::crt(residues[j], m, modp::mul(v[j], scale, p), p);
      }
      modulus = m;
    };
    absorb(v0, primes[pi]);
    for (int rounds = 0; rounds < 40 && !wrong_degree; ++rounds) {
      std::vector<Rational> coeffs;
      bool ok = true;
      for (const auto& r : residues) {
        auto q = modp::rational_reconstruct(r, modulus);
        if (!q) {
          ok = false;
          break;
        }
        coeffs.push_back(*q);
      }
      if (ok && certify(s, d, exps, coeffs)) {
        std::vector<std::pair<std::vector<int>, Rational>> terms;
        for (std::size_t j = 0; j < exps.size(); ++j)
          if (coeffs[j] != 0) terms.push_back({{exps[j].first, exps[j].second}, coeffs[j]});
        return primitive(MPoly::from_terms({"x", "y"}, terms));
      }
      std::optional<std::vector<std::vector<modp::u64>>> next;
      ++pi;
      while (pi < primes.size() && !(next = kernel_mod(s, d, exps, primes[pi]))) ++pi;
      if (!next) throw Error(ErrorKind::Internal, "implicitization ran out of primes");
      if (next->empty()) {
        wrong_degree = true;  // the first prime was unlucky
        break;
      }
      if (next->size() > 1 || (*next)[0][anchor] == 0) continue;  // unlucky prime, skip it
      absorb((*next)[0], primes[pi]);
    }
    if (!wrong_degree) throw Error(ErrorKind::Internal, "implicitization failed to certify");
  }
  throw Error(ErrorKind::EliminationCollapse, "no evolute equation up to degree " + std::to_string(max_d));
}

}  // namespace

MPoly evolute_eliminate(const MPoly& g, const EvoluteOptions& options) {
  if (g.is_zero()) throw Error(ErrorKind::ZeroPoly, "curve equation is zero");
  MPoly result;
  if (options.engine == EvoluteEngine::Implicitization) {
    result = implicitize(g, options);
  } else {
    EdSystem sys = ed_system(g, options.gx, options.gy);
    result = eliminate_two(sys.g, sys.h, sys.j, "x0", "y0").with_vars({"x", "y"});
  }
  for (const auto& p : options.referee) {
    if (!(scaled_residual(result, p) < options.referee_tol))
      throw Error(ErrorKind::EliminationCollapse, "evolute candidate fails the curvature-center residual test");
  }
  return result;
}

}  // namespace caustica
