// Randomized invariants over groups beyond the hand-picked examples.

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "abelcanon/counting.hpp"
#include "abelcanon/oracle.hpp"
#include "abelcanon/reduction.hpp"

using namespace abelcanon;

namespace {

using Rng = std::mt19937_64;

std::uint64_t below(Rng& rng, std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng); }

PrimarySchema random_schema(Rng& rng, std::size_t free_rank, unsigned max_exponent = 4) {
  static const long primes[] = {2, 3, 5, 7};
  PrimarySchema s;
  for (const long p : primes) {
    if (below(rng, 2) == 0) continue;
    PrimaryComponent c{p, {}};
    for (unsigned r = 1; r <= max_exponent; ++r)
      if (below(rng, 3) == 0) c.layers.push_back({r, static_cast<unsigned>(1 + below(rng, 3))});
    if (!c.layers.empty()) s.primes.push_back(std::move(c));
  }
  s.free_rank = free_rank;
  return s;
}

/// Component orders must fit the oracle's machine-integer shapes.
PrimarySchema random_small_schema(Rng& rng, std::size_t free_rank) {
  for (;;) {
    auto s = random_schema(rng, free_rank);
    if (std::all_of(s.primes.begin(), s.primes.end(),
                    [](const PrimaryComponent& c) { return c.order() < (Integer(1) << 31); }))
      return s;
  }
}

Element random_element(Rng& rng, const PrimarySchema& s, long free_bound = 40) {
  Element e = zero_element(s);
  for (std::size_t c = 0; c < s.primes.size(); ++c) {
    const auto exps = s.primes[c].slot_exponents();
    for (std::size_t i = 0; i < exps.size(); ++i) {
      const Integer m = power(s.primes[c].p, exps[i]);
      // Bias toward elements of small order so every layer valuation shows up.
      const unsigned shift = static_cast<unsigned>(below(rng, exps[i] + 1));
      e.torsion[c][i] = reduce(Integer(static_cast<unsigned long>(rng())) * power(s.primes[c].p, shift), m);
    }
  }
  for (auto& z : e.free) z = static_cast<long>(below(rng, 2 * free_bound + 1)) - free_bound;
  return e;
}

std::vector<std::int64_t> as_codes(const std::vector<Integer>& xs) {
  std::vector<std::int64_t> out;
  for (const auto& x : xs) out.push_back(x.get_si());
  return out;
}

/// Applies a random word in the elementary generators to every component.
Element random_torsion_automorphism(Rng& rng, const Element& e, const PrimarySchema& s) {
  Element out = e;
  for (std::size_t c = 0; c < s.primes.size(); ++c) {
    const auto shape = oracle::TorsionShape::of(s.primes[c]);
    const auto gens = oracle::elementary_generators(shape);
    auto t = as_codes(out.torsion[c]);
    for (int step = 0; step < 12 && !gens.empty(); ++step) t = oracle::apply(gens[below(rng, gens.size())], t);
    for (std::size_t i = 0; i < t.size(); ++i) out.torsion[c][i] = t[i];
  }
  return out;
}

RepeatFreeVector random_repeat_free(Rng& rng, const std::vector<unsigned>& exps) {
  RepeatFreeVector v{2 + static_cast<long>(below(rng, 2)), exps, {}};
  for (const auto r : exps) v.terms.push_back(below(rng, 3) == 0 ? Term() : Term(static_cast<unsigned>(below(rng, r))));
  return v;
}

std::vector<unsigned> random_exponents(Rng& rng, std::size_t max_layers, unsigned max_exponent) {
  std::vector<unsigned> out;
  for (unsigned r = 1; r <= max_exponent; ++r)
    if (below(rng, 2) == 0) out.push_back(r);
  if (out.empty()) out.push_back(1 + static_cast<unsigned>(below(rng, max_exponent)));
  while (out.size() > max_layers) out.erase(out.begin() + static_cast<long>(below(rng, out.size())));
  return out;
}

}  // namespace

TEST(Properties, CanonicalFormInvariantUnderTorsionAutomorphisms) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_small_schema(rng, below(rng, 3));
    const auto e = random_element(rng, s);
    const auto image = random_torsion_automorphism(rng, e, s);
    ASSERT_EQ(canonicalize(image, s), canonicalize(e, s)) << describe(s);
  }
}

TEST(Properties, CanonicalFormInvariantUnderMixing) {
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_schema(rng, 1);
    const auto e = random_element(rng, s);
    // (t, z) -> (t + z c, -z) for a random torsion c.
    Element image = e;
    const auto c = random_element(rng, s);
    for (std::size_t k = 0; k < s.primes.size(); ++k) {
      const auto exps = s.primes[k].slot_exponents();
      for (std::size_t i = 0; i < exps.size(); ++i)
        image.torsion[k][i] = reduce(e.torsion[k][i] + e.free[0] * c.torsion[k][i], power(s.primes[k].p, exps[i]));
    }
    image.free[0] = -e.free[0];
    ASSERT_EQ(canonicalize(image, s), canonicalize(e, s)) << describe(s);
  }
}

TEST(Properties, FreeUnimodularChangeIsInvisible) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_schema(rng, 2);
    const auto e = random_element(rng, s);
    Element image = e;
    const long k = static_cast<long>(below(rng, 11)) - 5;
    image.free[0] += k * e.free[1];
    std::swap(image.free[0], image.free[1]);
    ASSERT_EQ(canonicalize(image, s), canonicalize(e, s));
  }
}

TEST(Properties, IdempotentAndOrderPreserving) {
  Rng rng(14);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = random_schema(rng, below(rng, 3), 6);
    const auto e = random_element(rng, s, 1000);
    ReductionTrace trace;
    const auto c = canonicalize(e, s, &trace);
    const auto embedded = c.embed(s);
    ASSERT_EQ(canonicalize(embedded, s), c);
    ASSERT_EQ(element_order(embedded, s), element_order(e, s));
    ASSERT_EQ(replay(e, s, trace), c);
    if (s.is_finite()) {
      ASSERT_TRUE(c.conforming);
    }
  }
}

TEST(Properties, LargeModuliStayExact) {
  // Residues far beyond 64 bits.
  const Integer p("1000000000000000000000007");
  ASSERT_TRUE(is_probable_prime(p));
  const PrimarySchema s{{PrimaryComponent{p, {{1, 2}, {3, 1}}}}, 1};
  const Integer top = power(p, 3);
  const Element e{{{p - 1, 5, p * 17 + 3}}, {Integer("123456789012345678901234567890")}};
  const auto c = canonicalize(e, s);
  EXPECT_EQ(canonicalize(c.embed(s), s), c);
  EXPECT_EQ(element_order(c.embed(s), s), element_order(e, s));
  const Element small{{{0, 0, p * p}}, {}};
  PrimarySchema finite = s;
  finite.free_rank = 0;
  EXPECT_EQ(canonicalize(small, finite).components[0].values(), (std::vector<Integer>{0, p * p}));
  EXPECT_LT(p * p, top);
}

TEST(Properties, ReducedIffRepresentative) {
  Rng rng(15);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto v = random_repeat_free(rng, random_exponents(rng, 5, 8));
    ASSERT_EQ(is_reduced(v), is_representative(v));
  }
}

TEST(Properties, BasicReductionsConfluent) {
  Rng rng(16);
  for (int trial = 0; trial < 500; ++trial) {
    const auto start = random_repeat_free(rng, random_exponents(rng, 5, 8));
    PrimarySchema s{{PrimaryComponent{start.p, {}}}, 0};
    for (const auto r : start.exponents) s.primes[0].layers.push_back({r, 1});
    Element e = zero_element(s);
    e.torsion[0] = start.values();
    const auto expected = canonicalize(e, s).components[0];
    for (int order = 0; order < 20; ++order) {
      auto v = start;
      for (;;) {
        std::vector<std::size_t> live;
        for (std::size_t i = 0; i < v.size(); ++i)
          if (v.terms[i] && !basic_reduction_targets(v, i).empty()) live.push_back(i);
        if (live.empty()) break;
        v = basic_reduction(v, live[below(rng, live.size())]);
      }
      ASSERT_EQ(v, expected);
    }
  }
}

TEST(Properties, EnumerationCountsMatchFormula) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto exps = random_exponents(rng, 5, 9);
    EXPECT_EQ(Integer(static_cast<unsigned long>(enumerate_repeat_free(3, exps).size())),
              count_classes_rf(gaps_of_exponents(exps)));
  }
}
