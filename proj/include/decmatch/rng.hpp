#pragma once

#include <cstdint>
#include <vector>

#include "decmatch/rational.hpp"

namespace decmatch {

// SplitMix64 stream. Streams are split by tag, so derived randomness does not
// depend on how many values a sibling stream consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  Rng split(std::uint64_t tag) const;

  // Uniform in [0, bound). bound > 0.
  std::uint64_t below(std::uint64_t bound);

  // True with probability p, p in [0, 1]. The comparison against p is exact.
  bool bernoulli(const Rational& p);

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace decmatch
