#include <algorithm>
#include <exception>
#include <mutex>

#include "caustica/error.hpp"
#include "caustica/parallel.hpp"
#include "caustica/poly.hpp"

namespace caustica {

namespace {

std::size_t degree_of(const MPoly& p, std::string_view var) {
  return static_cast<std::size_t>(std::max(0, p.degree_in(var)));
}

MPoly bareiss_entry(const PolyMatrix& m, std::size_t k, std::size_t i, std::size_t j, const MPoly& prev,
                    bool divide) {
  MPoly num = m[k][k] * m[i][j];
  if (!m[i][k].is_zero() && !m[k][j].is_zero()) num -= m[i][k] * m[k][j];
  if (!divide) return num;
  auto q = exact_div(num, prev);
  if (!q) throw Error(ErrorKind::Internal, "inexact Bareiss division");
  return std::move(*q);
}

// Brings a nonzero pivot to (k, k). Returns false when the column is zero.
bool pivot(PolyMatrix& m, std::size_t k, int& sign) {
  if (!m[k][k].is_zero()) return true;
  for (std::size_t i = k + 1; i < m.size(); ++i) {
    if (!m[i][k].is_zero()) {
      std::swap(m[i], m[k]);
      sign = -sign;
      return true;
    }
  }
  return false;
}

MPoly zero_like(const PolyMatrix& m) { return MPoly(m[0][0].vars()); }

MPoly bareiss(PolyMatrix m, bool parallel) {
  const std::size_t n = m.size();
  if (n == 0) return MPoly::constant(1);
  for (const auto& row : m)
    if (row.size() != n) throw Error(ErrorKind::Internal, "determinant of a non-square matrix");
  int sign = 1;
  MPoly prev = MPoly::constant(1, m[0][0].vars());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!pivot(m, k, sign)) return zero_like(m);
    const bool divide = k > 0;
    const std::size_t rest = n - k - 1;
    if (parallel && rest * rest > 1) {
      std::exception_ptr failure;
      std::mutex guard;
      const long long span = static_cast<long long>(rest);
#pragma omp parallel for collapse(2) schedule(dynamic, 1) num_threads(max_threads())
      for (long long ii = 0; ii < span; ++ii) {
        for (long long jj = 0; jj < span; ++jj) {
          std::size_t i = k + 1 + static_cast<std::size_t>(ii);
          std::size_t j = k + 1 + static_cast<std::size_t>(jj);
          try {
            // Task (i, j) reads row k, column k and (i, j); it writes only (i, j).
            m[i][j] = bareiss_entry(m, k, i, j, prev, divide);
          } catch (...) {
            std::lock_guard lock(guard);
            if (!failure) failure = std::current_exception();
          }
        }
      }
      if (failure) std::rethrow_exception(failure);
    } else {
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j) m[i][j] = bareiss_entry(m, k, i, j, prev, divide);
    }
    for (std::size_t i = k + 1; i < n; ++i) m[i][k] = zero_like(m);
    prev = m[k][k];
  }
  MPoly det = std::move(m[n - 1][n - 1]);
  if (sign < 0) det = -det;
  return det;
}

MPoly resultant(const MPoly& f_in, const MPoly& g_in, std::string_view var, bool parallel) {
  MPoly::VarList vars = union_vars({&f_in, &g_in});
  MPoly f = f_in.with_vars(vars);
  MPoly g = g_in.with_vars(vars);
  if (f.is_zero() || g.is_zero()) return MPoly(vars);
  std::size_t m = degree_of(f, var);
  std::size_t k = degree_of(g, var);
  if (m == 0 && k == 0) throw Error(ErrorKind::BothConstantInV, "both polynomials are constant in " + std::string(var));
  if (k == 0) return pow(g, static_cast<unsigned>(m));
  if (m == 0) return pow(f, static_cast<unsigned>(k));
  // Res(cf f~, cg g~) = cf^k cg^m Res(f~, g~); integer entries keep Bareiss cheap.
  auto [cf, pf] = content_and_primitive(f);
  auto [cg, pg] = content_and_primitive(g);
  MPoly det = bareiss(sylvester_matrix(pf, pg, var), parallel);
  Rational scale = 1;
  for (std::size_t i = 0; i < k; ++i) scale *= cf;
  for (std::size_t i = 0; i < m; ++i) scale *= cg;
  return det * scale;
}

}  // namespace

PolyMatrix sylvester_matrix(const MPoly& f_in, const MPoly& g_in, std::string_view var) {
  MPoly::VarList vars = union_vars({&f_in, &g_in});
  MPoly f = f_in.with_vars(vars);
  MPoly g = g_in.with_vars(vars);
  std::size_t m = degree_of(f, var);
  std::size_t k = degree_of(g, var);
  if (m == 0 && k == 0) throw Error(ErrorKind::BothConstantInV, "both polynomials are constant in " + std::string(var));
  auto cf = coefficients_in(f, var);
  auto cg = coefficients_in(g, var);
  const std::size_t n = m + k;
  MPoly zero(vars);
  PolyMatrix s(n, std::vector<MPoly>(n, zero));
  for (std::size_t row = 0; row < k; ++row)
    for (std::size_t i = 0; i <= m; ++i) s[row][row + i] = cf[m - i];
  for (std::size_t row = 0; row < m; ++row)
    for (std::size_t i = 0; i <= k; ++i) s[k + row][row + i] = cg[k - i];
  return s;
}

MPoly bareiss_determinant(PolyMatrix m) { return bareiss(std::move(m), true); }
MPoly bareiss_determinant_serial(PolyMatrix m) { return bareiss(std::move(m), false); }

MPoly sylvester_resultant(const MPoly& f, const MPoly& g, std::string_view var) {
  return resultant(f, g, var, true);
}

MPoly sylvester_resultant_serial(const MPoly& f, const MPoly& g, std::string_view var) {
  return resultant(f, g, var, false);
}

MPoly eliminate_two(const MPoly& f, const MPoly& g, const MPoly& h, std::string_view u, std::string_view v) {
  auto reduce = [](const MPoly& p, const char* what) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroResultant, std::string(what) + " vanishes identically");
    return primitive(strip_monomial_factor(p));
  };
  MPoly r1 = reduce(sylvester_resultant(f, g, u), "first resultant");
  MPoly r2 = reduce(sylvester_resultant(f, h, u), "second resultant");
  if (!r1.involves(v) && !r2.involves(v)) {
    // Nothing left to eliminate: the system already constrains the rest.
    throw Error(ErrorKind::ZeroResultant, "intermediate resultants do not involve " + std::string(v));
  }
  MPoly r = sylvester_resultant(r1, r2, v);
  if (r.is_zero()) throw Error(ErrorKind::ZeroResultant, "final resultant vanishes identically");
  if (r.is_constant()) throw Error(ErrorKind::ZeroResultant, "final resultant is a nonzero constant");
  return reduce(r, "final resultant");
}

}  // namespace caustica
