#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace nswvc {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts "p/q" or a plain integer string, base 10. Anything else is rejected,
// including whitespace, signs inside the denominator, and composite
// expressions like "4096/1 * (101/100)^7".
inline mpq_class parse_fraction(const std::string& text) {
  auto is_digits = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string num = (slash == std::string::npos) ? text : text.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "1" : text.substr(slash + 1);
  if (!is_digits(num) || !is_digits(den))
    throw FormatError("not a fraction: \"" + text + "\"");
  mpq_class q{mpz_class(num), mpz_class(den)};
  if (q.get_den() == 0) throw FormatError("zero denominator: \"" + text + "\"");
  q.canonicalize();
  return q;
}

// Always "p/q", fully reduced, denominator included even when 1.
inline std::string format_fraction(const mpq_class& q) {
  mpq_class r = q;
  r.canonicalize();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double log2_mpz(const mpz_class& z) {
  long exp = 0;
  double d = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log2(d) + static_cast<double>(exp);
}

// log2 of a positive rational, safe for values far outside double range.
inline double log2_mpq(const mpq_class& q) {
  return log2_mpz(mpz_class(q.get_num())) - log2_mpz(mpz_class(q.get_den()));
}

inline mpz_class pow_mpz(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline mpq_class pow_mpq(const mpq_class& base, unsigned long e) {
  return mpq_class(pow_mpz(base.get_num(), e), pow_mpz(base.get_den(), e));
}

}  // namespace nswvc
