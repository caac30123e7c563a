#pragma once

#include <map>

#include "remy/rational.hpp"
#include "remy/tree.hpp"

namespace remy {

// Exact finite distribution over trees (or labeled trees).
template <typename T>
using Law = std::map<T, Rational>;

using TreeLaw = Law<BinaryTree>;
using LabeledLaw = Law<LabeledBinaryTree>;

template <typename T>
Rational total_mass(const Law<T>& law) {
  Rational s = 0;
  for (const auto& [_, p] : law) s += p;
  return s;
}

// Uniform law on the given support (duplicates add up).
template <typename Range>
auto uniform_law(const Range& outcomes) {
  Law<typename Range::value_type> law;
  const Rational w(1, static_cast<long>(outcomes.size()));
  for (const auto& o : outcomes) law[o] += w;
  return law;
}

}  // namespace remy
