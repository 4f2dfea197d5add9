#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include <json.hpp>

#include "caustica/error.hpp"
#include "caustica/poly.hpp"

namespace caustica {

namespace {

std::string monomial_text(const MPoly& p, const Term& t) {
  std::string out;
  for (std::size_t i = 0; i < p.num_vars(); ++i) {
    int e = p.exponent(t, i);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += p.vars()[i];
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

// Grammar (a superset of to_text's output):
//   expr   := [+|-] term {(+|-) term}
//   term   := factor {* factor}
//   factor := atom [^ digits]
//   atom   := digits [/ digits] | name | ( expr )
class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  MPoly parse(const std::optional<MPoly::VarList>& fixed) {
    if (fixed) vars_ = *fixed;
    MPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail(peek(')') ? "unbalanced ')'" : "expected '+' or '-'");
    return p.with_vars(vars_);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  MPoly::VarList vars_;
  int depth_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, "column " + std::to_string(pos_ + 1) + ": " + what);
  }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  MPoly expr() {
    skip();
    bool negative = false;
    if (peek('-') || peek('+')) {
      negative = s_[pos_] == '-';
      ++pos_;
    }
    MPoly acc = term();
    if (negative) acc = -acc;
    while (true) {
      skip();
      if (!peek('+') && !peek('-')) return acc;
      bool minus = s_[pos_] == '-';
      ++pos_;
      MPoly t = term();
      if (minus)
        acc -= t;
      else
        acc += t;
    }
  }

  MPoly term() {
    MPoly acc = factor();
    while (true) {
      skip();
      if (!peek('*')) return acc;
      ++pos_;
      acc *= factor();
    }
  }

  MPoly factor() {
    MPoly base = atom();
    skip();
    if (!peek('^')) return base;
    ++pos_;
    skip();
    std::string d = digits();
    if (d.size() > 3 || std::stoi(d) > kMaxDegree) fail("exponent too large");
    return pow(base, static_cast<unsigned>(std::stoi(d)));
  }

  MPoly atom() {
    skip();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      Integer num(digits(), 10);
      Integer den = 1;
      if (peek('/')) {
        ++pos_;
        den = Integer(digits(), 10);
        if (den == 0) fail("zero denominator");
      }
      Rational q(num, den);
      q.canonicalize();
      return MPoly::constant(q);
    }
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (std::find(vars_.begin(), vars_.end(), name) == vars_.end()) {
        if (vars_.size() == kMaxVars) fail("too many variables");
        vars_.push_back(name);
      }
      return MPoly::variable(name);
    }
    if (peek('(')) {
      if (++depth_ > 200) fail("nesting too deep");
      ++pos_;
      MPoly inner = expr();
      skip();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      --depth_;
      return inner;
    }
    fail(pos_ == s_.size() ? "unexpected end of input" : "unexpected character");
  }
};

}  // namespace

std::string to_text(const MPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool negative = t.coef < 0;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    Rational mag = abs(t.coef);
    std::string mono = monomial_text(p, t);
    if (mono.empty())
      out += to_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += to_string(mag) + "*" + mono;
  }
  return out;
}

MPoly parse_poly(std::string_view text, std::optional<MPoly::VarList> vars) {
  return Parser(text).parse(vars);
}

std::string to_json_string(const MPoly& p) {
  nlohmann::ordered_json j;
  j["vars"] = p.vars();
  auto terms = nlohmann::ordered_json::array();
  for (const auto& t : p.terms()) {
    nlohmann::ordered_json term;
    term["exp"] = p.exponents(t);
    term["coef"] = to_string(t.coef);
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j.dump();
}

MPoly from_json_string(std::string_view text) {
  try {
    auto j = nlohmann::json::parse(text);
    auto vars = j.at("vars").get<MPoly::VarList>();
    std::vector<std::pair<std::vector<int>, Rational>> terms;
    for (const auto& t : j.at("terms")) terms.emplace_back(t.at("exp").get<std::vector<int>>(), parse_rational(t.at("coef").get<std::string>()));
    return MPoly::from_terms(std::move(vars), terms);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("polynomial JSON: ") + e.what());
  }
}

}  // namespace caustica
