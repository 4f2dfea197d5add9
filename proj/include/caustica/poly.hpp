#pragma once

// Sparse multivariate polynomials over Q and the elimination toolkit built on
// them: derivatives, specialization, exact division, Sylvester matrices and
// fraction-free (Bareiss) resultants.
//
// Monomials are packed into a 64-bit word: the top byte holds the total degree
// and byte (6 - i) the exponent of variable i. Comparing packed words as
// integers is then exactly graded lexicographic order with variable 0 largest,
// and monomial multiplication is integer addition. This caps a polynomial at 7
// variables and total degree 255.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "caustica/rational.hpp"

namespace caustica {

using Monomial = std::uint64_t;

inline constexpr std::size_t kMaxVars = 7;
inline constexpr int kMaxDegree = 255;

struct Term {
  Monomial mono;
  Rational coef;
};

class MPoly {
 public:
  using VarList = std::vector<std::string>;

  MPoly();
  explicit MPoly(VarList vars);

  static MPoly constant(const Rational& c, VarList vars = {});
  static MPoly variable(std::string_view name);
  /// Builds from (exponent vector, coefficient) pairs; duplicates are summed.
  static MPoly from_terms(VarList vars, const std::vector<std::pair<std::vector<int>, Rational>>& terms);

  const VarList& vars() const { return *vars_; }
  std::size_t num_vars() const { return vars_->size(); }
  std::optional<std::size_t> var_index(std::string_view name) const;

  /// Terms in strictly descending graded-lex order, no zero coefficients.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // 0 for the zero polynomial; throws if nonconstant
  const Term& leading_term() const;

  int total_degree() const;  // -1 for zero
  int degree_in(std::string_view var) const;  // -1 for zero, 0 if absent
  bool involves(std::string_view var) const { return degree_in(var) > 0; }
  int exponent(const Term& t, std::size_t var) const;
  std::vector<int> exponents(const Term& t) const;
  Rational coefficient(const std::vector<int>& exps) const;

  /// Same polynomial over a superset variable list (any order).
  MPoly with_vars(const VarList& target) const;

  double eval(std::span<const double> values) const;
  Rational eval(std::span<const Rational> values) const;
  /// Sum of |coefficients| as a double.
  double coefficient_norm1() const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Rational& c);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const Rational& c, MPoly a) { return a *= c; }
  friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
  friend MPoly operator-(MPoly a);
  friend bool operator==(const MPoly& a, const MPoly& b);

  // Internal construction from already-canonical terms over `vars`.
  MPoly(std::shared_ptr<const VarList> vars, std::vector<Term> terms);
  const std::shared_ptr<const VarList>& var_list() const { return vars_; }

 private:
  std::shared_ptr<const VarList> vars_;
  std::vector<Term> terms_;
};

MPoly operator+(MPoly a, const Rational& c);
MPoly operator-(MPoly a, const Rational& c);

MPoly pow(const MPoly& p, unsigned e);
MPoly derivative(const MPoly& p, std::string_view var);

/// Substitutes rational values for a subset of the variables. The variable
/// list is kept; substituted variables simply no longer occur.
MPoly evaluate(const MPoly& p, const std::map<std::string, Rational, std::less<>>& assignment);

/// Replaces `var` by the polynomial `value`.
MPoly substitute(const MPoly& p, std::string_view var, const MPoly& value);

/// Renames variables (old name -> new name); names not in the map are kept.
MPoly rename(const MPoly& p, const std::map<std::string, std::string, std::less<>>& names);

/// q with p = d * q, or nullopt when d does not divide p. Throws DivByZero.
std::optional<MPoly> exact_div(const MPoly& p, const MPoly& d);

struct ContentPrimitive {
  Rational content;
  MPoly primitive;  // integer coefficients, gcd 1, positive leading coefficient
};

/// p = content * primitive. Throws ZeroPoly.
ContentPrimitive content_and_primitive(const MPoly& p);
MPoly primitive(const MPoly& p);

/// Divides out the largest monomial dividing every term.
MPoly strip_monomial_factor(const MPoly& p);

/// Coefficients with respect to `var`, indexed by power. The results keep the
/// full variable list but no longer involve `var`.
std::vector<MPoly> coefficients_in(const MPoly& p, std::string_view var);

/// Unifies the variable lists of a set of polynomials (first-seen order).
MPoly::VarList union_vars(std::initializer_list<const MPoly*> polys);

/// True when p and q agree up to a nonzero rational factor.
bool equal_up_to_scalar(const MPoly& p, const MPoly& q);

// ---------------------------------------------------------------------------
// Resultants.

using PolyMatrix = std::vector<std::vector<MPoly>>;

/// Classical Sylvester layout: deg_v(g) shifted rows of f then deg_v(f)
/// shifted rows of g, leading coefficients first.
PolyMatrix sylvester_matrix(const MPoly& f, const MPoly& g, std::string_view var);

/// Fraction-free determinant. Every division is checked to be exact and an
/// inexact one raises Error(Internal). The OpenMP version updates the trailing
/// block of each elimination step in parallel; both return identical results.
MPoly bareiss_determinant(PolyMatrix m);
MPoly bareiss_determinant_serial(PolyMatrix m);

/// Res_v(f, g) = det of the Sylvester matrix. Throws BothConstantInV.
MPoly sylvester_resultant(const MPoly& f, const MPoly& g, std::string_view var);
MPoly sylvester_resultant_serial(const MPoly& f, const MPoly& g, std::string_view var);

/// Res_v(Res_u(f, g), Res_u(f, h)), monomial factors and content removed.
/// Throws ZeroResultant when an intermediate or final resultant vanishes.
MPoly eliminate_two(const MPoly& f, const MPoly& g, const MPoly& h, std::string_view u,
                    std::string_view v);

// ---------------------------------------------------------------------------
// Text and JSON formats.

/// `16384000*x^12 + 351768768*x^10*y^2 - 167215104*x + 11943936`.
/// Non-integer coefficients print as p/q.
std::string to_text(const MPoly& p);

/// Inverse of to_text. Variables are collected in order of first appearance
/// unless `vars` is given. Throws Error(ParseError) with a column number.
MPoly parse_poly(std::string_view text, std::optional<MPoly::VarList> vars = std::nullopt);

/// {"vars":[...],"terms":[{"exp":[...],"coef":"..."},...]} as a string.
std::string to_json_string(const MPoly& p);
MPoly from_json_string(std::string_view json);

}  // namespace caustica
