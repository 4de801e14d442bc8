#include "decmatch/rational.hpp"

#include <cctype>

namespace decmatch {

namespace {

bool all_digits(const std::string& s, std::size_t from = 0) {
  if (from >= s.size()) return false;
  for (std::size_t i = from; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  Rational out;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + text + "'");
    mpz_class d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    out = Rational(mpz_class(num, 10), d);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || !all_digits(frac))
      throw std::invalid_argument("malformed decimal '" + text + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    out = Rational(mpz_class(whole + frac, 10), scale);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("malformed number '" + text + "'");
    out = Rational(mpz_class(s, 10));
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Rational floor(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

Rational ceil(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Epsilon::Epsilon(std::uint32_t k) : k_(k) {
  if (k < 2) throw std::invalid_argument("epsilon must be 1/k with k >= 2");
}

Epsilon Epsilon::parse(const std::string& text) {
  Rational q = parse_rational(text);
  if (q <= 0 || q.get_num() != 1 || !q.get_den().fits_uint_p())
    throw std::invalid_argument("epsilon '" + text + "' is not of the form 1/k");
  return Epsilon(static_cast<std::uint32_t>(q.get_den().get_ui()));
}

}  // namespace decmatch
