#include "caustica/poly.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "caustica/error.hpp"
#include "monomial.hpp"

namespace caustica {

namespace {

const std::shared_ptr<const MPoly::VarList>& empty_vars() {
  static const auto empty = std::make_shared<const MPoly::VarList>();
  return empty;
}

// Brings two polynomials onto one variable list. Fast path when they share it.
std::pair<MPoly, MPoly> unify(const MPoly& a, const MPoly& b) {
  if (a.var_list() == b.var_list() || a.vars() == b.vars()) return {a, b};
  MPoly::VarList u = union_vars({&a, &b});
  MPoly ua = a.with_vars(u);
  MPoly ub(ua.var_list(), b.with_vars(u).terms());
  return {std::move(ua), std::move(ub)};
}

bool same_vars(const MPoly& a, const MPoly& b) {
  return a.var_list() == b.var_list() || a.vars() == b.vars();
}

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back(subtract ? Term{b[j].mono, -b[j].coef} : b[j]);
      ++j;
    } else {
      Rational c = subtract ? Rational(a[i].coef - b[j].coef) : Rational(a[i].coef + b[j].coef);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

// Johnson's heap merge of the partial products a_i * b.
std::vector<Term> multiply_terms(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (a.empty() || b.empty()) return {};
  if (mono::total(a.front().mono) + mono::total(b.front().mono) > kMaxDegree)
    throw Error(ErrorKind::Internal, "polynomial total degree exceeds 255");
  const std::vector<Term>& outer = a.size() <= b.size() ? a : b;
  const std::vector<Term>& inner = a.size() <= b.size() ? b : a;

  struct Entry {
    Monomial mono;
    std::uint32_t i, j;
    bool operator<(const Entry& o) const { return mono < o.mono; }
  };
  std::priority_queue<Entry> heap;
  for (std::uint32_t i = 0; i < outer.size(); ++i) heap.push({outer[i].mono + inner[0].mono, i, 0});

  std::vector<Term> out;
  Rational acc, prod;
  Monomial current = 0;
  bool have = false;
  while (!heap.empty()) {
    Entry e = heap.top();
    heap.pop();
    mpq_mul(prod.get_mpq_t(), outer[e.i].coef.get_mpq_t(), inner[e.j].coef.get_mpq_t());
    if (have && e.mono == current) {
      acc += prod;
    } else {
      if (have && acc != 0) out.push_back({current, acc});
      current = e.mono;
      acc = prod;
      have = true;
    }
    if (e.j + 1 < inner.size()) heap.push({outer[e.i].mono + inner[e.j + 1].mono, e.i, e.j + 1});
  }
  if (have && acc != 0) out.push_back({current, acc});
  return out;
}

}  // namespace

MPoly::MPoly() : vars_(empty_vars()) {}

MPoly::MPoly(VarList vars) {
  if (vars.size() > kMaxVars) throw Error(ErrorKind::Internal, "too many polynomial variables");
  vars_ = std::make_shared<const VarList>(std::move(vars));
}

MPoly::MPoly(std::shared_ptr<const VarList> vars, std::vector<Term> terms)
    : vars_(std::move(vars)), terms_(std::move(terms)) {}

MPoly MPoly::constant(const Rational& c, VarList vars) {
  MPoly p(std::move(vars));
  if (c != 0) {
    p.terms_.push_back({0, c});
    p.terms_.back().coef.canonicalize();
  }
  return p;
}

MPoly MPoly::variable(std::string_view name) {
  MPoly p(VarList{std::string(name)});
  p.terms_.push_back({mono::unit(0), Rational(1)});
  return p;
}

MPoly MPoly::from_terms(VarList vars, const std::vector<std::pair<std::vector<int>, Rational>>& terms) {
  MPoly p(std::move(vars));
  std::map<Monomial, Rational, std::greater<>> acc;
  for (const auto& [exps, c] : terms) {
    if (exps.size() != p.num_vars())
      throw Error(ErrorKind::Internal, "exponent vector length does not match variable count");
    Rational q = c;
    q.canonicalize();
    acc[mono::pack(exps)] += q;
  }
  for (auto& [m, c] : acc)
    if (c != 0) p.terms_.push_back({m, c});
  return p;
}

std::optional<std::size_t> MPoly::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_->size(); ++i)
    if ((*vars_)[i] == name) return i;
  return std::nullopt;
}

bool MPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == 0); }

Rational MPoly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw Error(ErrorKind::Internal, "polynomial is not constant");
  return terms_[0].coef;
}

const Term& MPoly::leading_term() const {
  if (terms_.empty()) throw Error(ErrorKind::ZeroPoly, "zero polynomial has no leading term");
  return terms_.front();
}

int MPoly::total_degree() const { return terms_.empty() ? -1 : mono::total(terms_.front().mono); }

int MPoly::degree_in(std::string_view var) const {
  if (terms_.empty()) return -1;
  auto i = var_index(var);
  if (!i) return 0;
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, mono::exp(t.mono, *i));
  return d;
}

int MPoly::exponent(const Term& t, std::size_t var) const { return mono::exp(t.mono, var); }

std::vector<int> MPoly::exponents(const Term& t) const {
  std::vector<int> e(num_vars());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = mono::exp(t.mono, i);
  return e;
}

Rational MPoly::coefficient(const std::vector<int>& exps) const {
  Monomial m = mono::pack(exps);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Monomial key) { return t.mono > key; });
  if (it != terms_.end() && it->mono == m) return it->coef;
  return 0;
}

MPoly MPoly::with_vars(const VarList& target) const {
  if (target == *vars_) return *this;
  std::vector<std::size_t> map(vars_->size());
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    auto it = std::find(target.begin(), target.end(), (*vars_)[i]);
    if (it == target.end()) {
      // Variables that do not occur may be dropped.
      if (degree_in((*vars_)[i]) > 0)
        throw Error(ErrorKind::Internal, "target variable list misses '" + (*vars_)[i] + "'");
      map[i] = kMaxVars;
      continue;
    }
    map[i] = static_cast<std::size_t>(it - target.begin());
  }
  MPoly out(target);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m = t.mono & (Monomial(0xFF) << 56);
    for (std::size_t i = 0; i < map.size(); ++i)
      if (map[i] != kMaxVars) m |= Monomial(mono::exp(t.mono, i)) << mono::shift(map[i]);
    out.terms_.push_back({m, t.coef});
  }
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const Term& a, const Term& b) { return a.mono > b.mono; });
  return out;
}

double MPoly::eval(std::span<const double> values) const {
  if (values.size() != num_vars()) throw Error(ErrorKind::Internal, "eval: wrong number of values");
  int deg = std::max(0, total_degree());
  std::vector<std::vector<double>> powers(num_vars(), std::vector<double>(deg + 1, 1.0));
  for (std::size_t i = 0; i < num_vars(); ++i)
    for (int k = 1; k <= deg; ++k) powers[i][k] = powers[i][k - 1] * values[i];
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coef.get_d();
    for (std::size_t i = 0; i < num_vars(); ++i) v *= powers[i][mono::exp(t.mono, i)];
    sum += v;
  }
  return sum;
}

Rational MPoly::eval(std::span<const Rational> values) const {
  if (values.size() != num_vars()) throw Error(ErrorKind::Internal, "eval: wrong number of values");
  int deg = std::max(0, total_degree());
  std::vector<std::vector<Rational>> powers(num_vars(), std::vector<Rational>(deg + 1, Rational(1)));
  for (std::size_t i = 0; i < num_vars(); ++i)
    for (int k = 1; k <= deg; ++k) powers[i][k] = powers[i][k - 1] * values[i];
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coef;
    for (std::size_t i = 0; i < num_vars(); ++i) v *= powers[i][mono::exp(t.mono, i)];
    sum += v;
  }
  return sum;
}

double MPoly::coefficient_norm1() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coef.get_d());
  return s;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (!same_vars(*this, o)) {
    auto [a, b] = unify(*this, o);
    *this = std::move(a);
    terms_ = merge(terms_, b.terms_, false);
    return *this;
  }
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (!same_vars(*this, o)) {
    auto [a, b] = unify(*this, o);
    *this = std::move(a);
    terms_ = merge(terms_, b.terms_, true);
    return *this;
  }
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly& MPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= c;
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (!same_vars(a, b)) {
    auto [ua, ub] = unify(a, b);
    return MPoly(ua.var_list(), multiply_terms(ua.terms(), ub.terms()));
  }
  return MPoly(a.var_list(), multiply_terms(a.terms(), b.terms()));
}

MPoly operator-(MPoly a) {
  for (auto& t : a.terms_) t.coef = -t.coef;
  return a;
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (!same_vars(a, b)) {
    auto [ua, ub] = unify(a, b);
    return ua == ub;
  }
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) return false;
  return true;
}

MPoly operator+(MPoly a, const Rational& c) { return a += MPoly::constant(c, a.vars()); }
MPoly operator-(MPoly a, const Rational& c) { return a -= MPoly::constant(c, a.vars()); }

MPoly pow(const MPoly& p, unsigned e) {
  MPoly result = MPoly::constant(1, p.vars());
  MPoly base = p;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

MPoly derivative(const MPoly& p, std::string_view var) {
  auto i = p.var_index(var);
  if (!i) return MPoly(p.vars());
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    int e = mono::exp(t.mono, *i);
    if (e == 0) continue;
    // Subtracting the same unit keeps graded-lex order among these terms.
    out.push_back({t.mono - mono::unit(*i), t.coef * e});
  }
  return MPoly(p.var_list(), std::move(out));
}

MPoly evaluate(const MPoly& p, const std::map<std::string, Rational, std::less<>>& assignment) {
  std::vector<std::pair<std::size_t, Rational>> subs;
  for (const auto& [name, value] : assignment)
    if (auto i = p.var_index(name)) subs.emplace_back(*i, value);
  if (subs.empty()) return p;
  std::map<Monomial, Rational, std::greater<>> acc;
  Rational pw;
  for (const auto& t : p.terms()) {
    Monomial m = t.mono;
    Rational c = t.coef;
    for (const auto& [i, value] : subs) {
      int e = mono::exp(m, i);
      if (e == 0) continue;
      mpz_pow_ui(pw.get_num_mpz_t(), value.get_num_mpz_t(), static_cast<unsigned long>(e));
      mpz_pow_ui(pw.get_den_mpz_t(), value.get_den_mpz_t(), static_cast<unsigned long>(e));
      c *= pw;
      m -= static_cast<Monomial>(e) * mono::unit(i);
    }
    if (c != 0) acc[m] += c;
  }
  std::vector<Term> out;
  for (auto& [m, c] : acc)
    if (c != 0) out.push_back({m, c});
  return MPoly(p.var_list(), std::move(out));
}

MPoly substitute(const MPoly& p, std::string_view var, const MPoly& value) {
  auto coeffs = coefficients_in(p, var);
  MPoly result(p.vars());
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    result = result * value + coeffs[k];
  }
  return result;
}

MPoly rename(const MPoly& p, const std::map<std::string, std::string, std::less<>>& names) {
  MPoly::VarList renamed;
  std::vector<std::size_t> target(p.num_vars());
  for (std::size_t i = 0; i < p.num_vars(); ++i) {
    auto it = names.find(p.vars()[i]);
    std::string name = it == names.end() ? p.vars()[i] : it->second;
    auto pos = std::find(renamed.begin(), renamed.end(), name);
    target[i] = static_cast<std::size_t>(pos - renamed.begin());
    if (pos == renamed.end()) renamed.push_back(name);
  }
  std::vector<std::pair<std::vector<int>, Rational>> terms;
  for (const auto& t : p.terms()) {
    std::vector<int> e(renamed.size(), 0);
    for (std::size_t i = 0; i < p.num_vars(); ++i) e[target[i]] += mono::exp(t.mono, i);
    terms.emplace_back(std::move(e), t.coef);
  }
  return MPoly::from_terms(renamed, terms);
}

std::optional<MPoly> exact_div(const MPoly& p_in, const MPoly& d_in) {
  if (d_in.is_zero()) throw Error(ErrorKind::DivByZero, "division by the zero polynomial");
  auto [p, d] = unify(p_in, d_in);
  if (p.is_zero()) return MPoly(p.var_list(), {});
  const std::size_t nv = p.num_vars();
  const Term& lead = d.terms().front();

  if (d.size() == 1) {
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
      if (!mono::divides(lead.mono, t.mono, nv)) return std::nullopt;
      out.push_back({t.mono - lead.mono, t.coef / lead.coef});
    }
    return MPoly(p.var_list(), std::move(out));
  }

  Rational inv_lead = 1 / lead.coef;
  std::map<Monomial, Rational, std::greater<>> rem;
  for (const auto& t : p.terms()) rem.emplace_hint(rem.end(), t.mono, t.coef);
  std::vector<Term> quotient;
  Rational prod;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!mono::divides(lead.mono, top->first, nv)) return std::nullopt;
    Monomial qm = top->first - lead.mono;
    Rational qc = top->second * inv_lead;
    rem.erase(top);
    for (std::size_t k = 1; k < d.size(); ++k) {
      const Term& t = d.terms()[k];
      mpq_mul(prod.get_mpq_t(), qc.get_mpq_t(), t.coef.get_mpq_t());
      auto [it, inserted] = rem.try_emplace(t.mono + qm);
      it->second -= prod;
      if (it->second == 0) rem.erase(it);
    }
    quotient.push_back({qm, std::move(qc)});
  }
  return MPoly(p.var_list(), std::move(quotient));
}

ContentPrimitive content_and_primitive(const MPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPoly, "content of the zero polynomial");
  Integer lcm_den = 1, gcd_num = 0;
  for (const auto& t : p.terms()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), t.coef.get_den_mpz_t());
  for (const auto& t : p.terms()) {
    Integer scaled = t.coef.get_num() * (lcm_den / t.coef.get_den());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational content(gcd_num, lcm_den);
  content.canonicalize();
  if (p.terms().front().coef < 0) content = -content;
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.mono, t.coef / content});
  return {content, MPoly(p.var_list(), std::move(out))};
}

MPoly primitive(const MPoly& p) { return content_and_primitive(p).primitive; }

MPoly strip_monomial_factor(const MPoly& p) {
  if (p.is_zero()) return p;
  std::vector<int> low(p.num_vars(), kMaxDegree);
  for (const auto& t : p.terms())
    for (std::size_t i = 0; i < p.num_vars(); ++i) low[i] = std::min(low[i], mono::exp(t.mono, i));
  Monomial m = mono::pack(low);
  if (m == 0) return p;
  std::vector<Term> out;
  for (const auto& t : p.terms()) out.push_back({t.mono - m, t.coef});
  return MPoly(p.var_list(), std::move(out));
}

std::vector<MPoly> coefficients_in(const MPoly& p, std::string_view var) {
  auto i = p.var_index(var);
  if (!i || p.is_zero()) return {p};
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(p.degree_in(var)) + 1);
  for (const auto& t : p.terms()) {
    int e = mono::exp(t.mono, *i);
    buckets[static_cast<std::size_t>(e)].push_back({t.mono - static_cast<Monomial>(e) * mono::unit(*i), t.coef});
  }
  std::vector<MPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.emplace_back(p.var_list(), std::move(b));
  return out;
}

MPoly::VarList union_vars(std::initializer_list<const MPoly*> polys) {
  MPoly::VarList u;
  for (const MPoly* p : polys)
    for (const auto& v : p->vars())
      if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
  if (u.size() > kMaxVars) throw Error(ErrorKind::Internal, "too many polynomial variables");
  return u;
}

bool equal_up_to_scalar(const MPoly& p, const MPoly& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  return primitive(p) == primitive(q);
}

}  // namespace caustica
