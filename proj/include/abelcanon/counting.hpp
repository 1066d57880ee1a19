#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "abelcanon/group_model.hpp"
#include "abelcanon/integer.hpp"
#include "abelcanon/reduction.hpp"

namespace abelcanon {

/// Smallest repeat-free exponent and the successive differences n_i.
struct GapVector {
  unsigned r1 = 1;
  std::vector<unsigned> gaps;

  std::size_t layer_count() const { return gaps.size() + 1; }
  /// Recovers r_1 < r_2 < ... from the gaps.
  std::vector<unsigned> exponents() const;
  bool operator==(const GapVector&) const = default;
};

GapVector gaps(const PrimaryComponent& component);
GapVector gaps_of_exponents(const std::vector<unsigned>& exponents);

/// (r1 + 1)(n_1 + 1)...(n_{k-1} + 1)
Integer count_classes_rf(const GapVector& g);

struct PrimeCount {
  Integer p;
  GapVector gaps;
  Integer count;
};

struct ClassCount {
  Integer total;
  std::vector<PrimeCount> per_prime;
};

/// Throws InfiniteClasses when the group has a free factor.
ClassCount count_classes(const PrimarySchema& schema);

/// Number of representatives whose last nonzero entry sits at 1-based
/// layer `j`, 2 <= j <= layer count. Throws std::out_of_range otherwise.
Integer count_last_nonzero(const GapVector& g, std::size_t j);

/// Entry t is the number of representatives with exactly t nonzero terms.
std::vector<Integer> nonzero_term_histogram(const GapVector& g);

/// Representatives of one repeat-free p-group, ordered by support set then
/// exponent tuple.
std::vector<RepeatFreeVector> enumerate_repeat_free(const Integer& p, const std::vector<unsigned>& exponents);

/// All representative elements of a finite group, cross product over primes
/// with the smallest prime most significant. Throws InfiniteClasses when the
/// group has a free factor.
std::vector<CanonicalElement> enumerate_representatives(const PrimarySchema& schema);

}  // namespace abelcanon
