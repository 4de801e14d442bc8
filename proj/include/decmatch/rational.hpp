#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace decmatch {

using Rational = mpq_class;

// gmpxx leaves p/q unreduced; every construction from a pair goes through here.
inline Rational make_rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Accepts "p/q", an integer, or a terminating decimal such as "0.125".
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

// Smallest integer >= q.
Rational ceil(const Rational& q);
Rational floor(const Rational& q);

bool is_integer(const Rational& q);

// Accuracy parameter restricted to eps = 1/k, k >= 2.
class Epsilon {
 public:
  explicit Epsilon(std::uint32_t k);
  static Epsilon parse(const std::string& text);

  std::uint32_t inverse() const { return k_; }
  Rational value() const { return make_rational(1, static_cast<long>(k_)); }

 private:
  std::uint32_t k_;
};

}  // namespace decmatch
