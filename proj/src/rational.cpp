#include "halllab/rational.hpp"

#include "halllab/errors.hpp"

#include <cctype>
#include <string>

namespace halllab {

Rational make_rational(long num, long den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw PreconditionError("empty rational literal");
  auto dot = s.find('.');
  auto slash = s.find('/');
  try {
    if (dot != std::string::npos && slash == std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t scale = s.size() - dot - 1;
      if (scale == 0 || digits.empty() || digits == "-" || digits == "+")
        throw PreconditionError("malformed decimal '" + s + "'");
      for (std::size_t i = (digits[0] == '-' || digits[0] == '+') ? 1 : 0; i < digits.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(digits[i])))
          throw PreconditionError("malformed decimal '" + s + "'");
      if (digits[0] == '+') digits.erase(0, 1);
      Integer num(digits, 10);
      Integer den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    Rational r(s, 10);
    if (r.get_den() == 0) throw PreconditionError("rational with zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw PreconditionError("malformed rational '" + s + "'");
  }
}

std::string to_string(const Rational& r) { return r.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }
double to_double(const Rational& r) { return r.get_d(); }

}  // namespace halllab
