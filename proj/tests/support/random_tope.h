#pragma once

#include <random>
#include <string>
#include <vector>

#include "sstt/tope/tope.h"

namespace sstt::testing {

// Random topes over a fixed variable list; depth counts connective levels.
class RandomTopes {
 public:
  RandomTopes(std::vector<std::string> vars, std::uint64_t seed)
      : vars_(std::move(vars)), rng_(seed) {}

  tope::IntervalTerm term() {
    std::uniform_int_distribution<std::size_t> pick(0, vars_.size() + 1);
    std::size_t k = pick(rng_);
    if (k == vars_.size()) return tope::IntervalTerm::zero();
    if (k == vars_.size() + 1) return tope::IntervalTerm::one();
    return tope::IntervalTerm::var(vars_[k]);
  }

  tope::Tope atom() {
    std::uniform_int_distribution<int> pick(0, 19);
    int k = pick(rng_);
    if (k == 0) return tope::Tope::top();
    if (k == 1) return tope::Tope::bot();
    if (k < 11) return tope::Tope::le(term(), term());
    return tope::Tope::eq(term(), term());
  }

  tope::Tope tope(int depth) {
    std::uniform_int_distribution<int> pick(0, 2);
    if (depth == 0 || pick(rng_) == 0) return atom();
    tope::Tope a = tope(depth - 1);
    tope::Tope b = tope(depth - 1);
    return pick(rng_) == 0 ? tope::Tope::make_and(a, b) : tope::Tope::make_or(a, b);
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::vector<std::string> vars_;
  std::mt19937_64 rng_;
};

}  // namespace sstt::testing
