#include "caustica/rational.hpp"

#include <cctype>

#include "caustica/error.hpp"

namespace caustica {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidScene: return "InvalidScene";
    case ErrorKind::RadiantOnMirror: return "RadiantOnMirror";
    case ErrorKind::TotalInternalReflection: return "TotalInternalReflection";
    case ErrorKind::DegenerateConic: return "DegenerateConic";
    case ErrorKind::AOnCircleOrCenter: return "AOnCircleOrCenter";
    case ErrorKind::RNotOffAxis: return "RNotOffAxis";
    case ErrorKind::DenominatorZero: return "DenominatorZero";
    case ErrorKind::AEqualsO: return "AEqualsO";
    case ErrorKind::MNotOnOval: return "MNotOnOval";
    case ErrorKind::MAtFocus: return "MAtFocus";
    case ErrorKind::NoConsistentScene: return "NoConsistentScene";
    case ErrorKind::AbsNEqualsOne: return "AbsNEqualsOne";
    case ErrorKind::AOnLine: return "AOnLine";
    case ErrorKind::IrrationalResult: return "IrrationalResult";
    case ErrorKind::DivByZero: return "DivByZero";
    case ErrorKind::ZeroPoly: return "ZeroPoly";
    case ErrorKind::BothConstantInV: return "BothConstantInV";
    case ErrorKind::ZeroResultant: return "ZeroResultant";
    case ErrorKind::EliminationCollapse: return "EliminationCollapse";
    case ErrorKind::PipelineMismatch: return "PipelineMismatch";
    case ErrorKind::UnsupportedMirror: return "UnsupportedMirror";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad(std::string_view text, std::string_view why) {
  throw Error(ErrorKind::ParseError,
              "invalid rational '" + std::string(text) + "': " + std::string(why));
}

Rational pow10(long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad(text, "empty");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text, "expected p/q with integer p, q");
    Integer d{std::string(den), 10};
    if (d == 0) bad(text, "zero denominator");
    value = Rational(Integer(std::string(num), 10), d);
    value.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) bad(text, "bad exponent");
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      auto whole = s.substr(0, dot);
      auto frac = s.substr(dot + 1);
      if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
          (whole.empty() && frac.empty()))
        bad(text, "bad decimal");
      digits = std::string(whole) + std::string(frac);
      exponent -= static_cast<long>(frac.size());
    } else {
      if (!all_digits(s)) bad(text, "not a number");
      digits = std::string(s);
    }
    value = Rational(Integer(digits, 10)) * pow10(exponent);
    value.canonicalize();
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
    return std::nullopt;
  Integer num, den;
  mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
  return Rational(num, den);
}

Rational require_sqrt(const Rational& q, std::string_view what) {
  if (auto r = exact_sqrt(q)) return *r;
  throw Error(ErrorKind::IrrationalResult,
              std::string(what) + " = sqrt(" + q.get_str() + ") is not rational");
}

}  // namespace caustica
