#include "decmatch/rng.hpp"

#include <stdexcept>

namespace decmatch {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

Rng Rng::split(std::uint64_t tag) const {
  return Rng(mix64(state_ ^ mix64(tag + 0x632be59bd9b4e019ULL)));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below with empty range");
  // Rejection sampling keeps the draw unbiased.
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t r;
  do {
    r = next();
  } while (r >= limit);
  return r % bound;
}

bool Rng::bernoulli(const Rational& p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  // u / 2^64 < p  <=>  u * den < p.num * 2^64
  static_assert(sizeof(unsigned long) == 8);
  mpz_class u(static_cast<unsigned long>(next()));
  mpz_class lhs = u * p.get_den();
  mpz_class rhs = p.get_num();
  rhs <<= 64;
  return lhs < rhs;
}

}  // namespace decmatch
