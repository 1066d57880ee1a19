#include <gtest/gtest.h>

#include <cstdlib>
#include <map>
#include <set>

#include "abelcanon/counting.hpp"
#include "abelcanon/errors.hpp"
#include "abelcanon/oracle.hpp"

using namespace abelcanon;
using namespace abelcanon::oracle;

namespace {

PrimarySchema schema_of(const char* text) { return to_primary(parse_group_spec(text)); }

std::set<Integer> first_coordinates(const std::vector<Element>& orbit, const Integer& z) {
  std::set<Integer> out;
  for (const auto& e : orbit)
    if (e.free[0] == z) out.insert(e.torsion[0][0]);
  return out;
}

/// The action of `m` on every element, indexed by code.
std::vector<std::int64_t> action(const HomMatrix& m, const TorsionShape& shape) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(shape.order));
  for (std::int64_t code = 0; code < shape.order; ++code) out[code] = shape.encode(oracle::apply(m, shape.decode(code)));
  return out;
}

}  // namespace

TEST(TorsionShape, EncodeIsLexicographic) {
  const auto shape = TorsionShape::of(2, {1, 3});
  EXPECT_EQ(shape.order, 16);
  EXPECT_EQ(shape.encode(std::vector<std::int64_t>{1, 2}), 10);
  EXPECT_EQ(shape.decode(10), (std::vector<std::int64_t>{1, 2}));
}

TEST(IsAutomorphism, Examples) {
  EXPECT_TRUE(is_automorphism(HomMatrix::identity(3, {1, 2, 2, 4})));
  EXPECT_FALSE(is_automorphism(HomMatrix{2, {2}, {2}}));
  EXPECT_TRUE(is_automorphism(HomMatrix{2, {2}, {3}}));
}

TEST(IsAutomorphism, RejectsMalformedMatrix) {
  // Entry (1,0) of Z2 + Z8 must be divisible by 4.
  EXPECT_THROW(is_automorphism(HomMatrix{2, {1, 3}, {1, 0, 2, 1}}), std::invalid_argument);
  EXPECT_THROW(is_automorphism(HomMatrix{2, {2}, {4}}), std::invalid_argument);
}

TEST(Apply, Examples) {
  const std::vector<std::int64_t> t{6, 4};
  EXPECT_EQ(oracle::apply(HomMatrix::identity(2, {3, 3}), t), t);
  EXPECT_EQ(oracle::apply(HomMatrix{2, {3}, {3}}, std::vector<std::int64_t>{2}), (std::vector<std::int64_t>{6}));
  EXPECT_EQ(oracle::apply(HomMatrix{2, {1, 3}, {1, 1, 4, 1}}, std::vector<std::int64_t>{1, 2}),
            (std::vector<std::int64_t>{1, 6}));
}

TEST(EnumerateAutomorphisms, Counts) {
  EXPECT_EQ(enumerate_automorphisms(schema_of("Z2").primes[0]).size(), 1u);
  EXPECT_EQ(enumerate_automorphisms(schema_of("Z4").primes[0]).size(), 2u);
  EXPECT_EQ(enumerate_automorphisms(schema_of("Z2 x Z4").primes[0]).size(), 8u);
  EXPECT_EQ(enumerate_automorphisms(schema_of("Z2^2").primes[0]).size(), 6u);
  EXPECT_EQ(enumerate_automorphisms(schema_of("Z3^2").primes[0]).size(), 48u);
}

TEST(EnumerateAutomorphisms, EndomorphismCountAndCap) {
  EXPECT_EQ(endomorphism_count(schema_of("Z2 x Z4").primes[0]), 32);
  EXPECT_EQ(endomorphism_count(schema_of("Z8^3").primes[0]), Integer(1) << 27);
  try {
    enumerate_automorphisms(schema_of("Z8^3").primes[0]);
    FAIL() << "cap not enforced";
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.required(), Integer(1) << 27);
    EXPECT_EQ(e.cap(), Integer(1) << 24);
  }
}

TEST(EnumerateAutomorphisms, EachIsABijection) {
  const auto component = schema_of("Z2 x Z4 x Z8").primes[0];
  const auto shape = TorsionShape::of(component);
  for (const auto& m : enumerate_automorphisms(component)) {
    const auto image = action(m, shape);
    EXPECT_EQ(std::set<std::int64_t>(image.begin(), image.end()).size(), image.size());
  }
}

TEST(EnumerateAutomorphisms, CompositionClosure) {
  const auto component = schema_of("Z2 x Z4").primes[0];
  const auto shape = TorsionShape::of(component);
  const auto auts = enumerate_automorphisms(component);
  std::set<std::vector<std::int64_t>> actions;
  for (const auto& m : auts) actions.insert(action(m, shape));
  for (const auto& a : auts)
    for (const auto& b : auts) {
      const auto fa = action(a, shape), fb = action(b, shape);
      std::vector<std::int64_t> composed(fa.size());
      for (std::size_t x = 0; x < fa.size(); ++x) composed[x] = fa[static_cast<std::size_t>(fb[x])];
      EXPECT_TRUE(actions.count(composed));
    }
}

TEST(ElementaryGenerators, AreAutomorphisms) {
  for (const auto& shape : {TorsionShape::of(2, {1, 3, 3}), TorsionShape::of(3, {2, 2, 2}), TorsionShape::of(5, {1, 2})})
    for (const auto& g : elementary_generators(shape)) EXPECT_TRUE(is_automorphism(g));
}

TEST(PrimeOrbits, GeneratorsMatchExhaustive) {
  for (const char* g : {"Z2 x Z8^2", "Z4^2 x Z8", "Z9^2", "Z3 x Z9 x Z27", "Z2^3 x Z4", "Z5^2"}) {
    const auto component = schema_of(g).primes[0];
    Limits roomy;
    roomy.exhaustive_orbit_budget = roomy.max_endomorphisms;
    const auto exhaustive = prime_orbits(component, roomy);
    Limits tight;
    tight.exhaustive_orbit_budget = 0;
    const auto generated = prime_orbits(component, tight);
    ASSERT_EQ(exhaustive.method, OrbitMethod::Exhaustive) << g;
    ASSERT_EQ(generated.method, OrbitMethod::Generators) << g;
    EXPECT_EQ(exhaustive.orbit_of, generated.orbit_of) << g;
    EXPECT_EQ(exhaustive.representatives, generated.representatives) << g;
  }
}

TEST(AllOrbits, Examples) {
  EXPECT_EQ(all_orbits(schema_of("Z2 x Z8")).orbit_count(), 6u);
  EXPECT_EQ(all_orbits(schema_of("Z12")).orbit_count(), 6u);
  EXPECT_EQ(all_orbits(schema_of("Z8^3")).orbit_count(), 4u);
  EXPECT_EQ(all_orbits(schema_of("Z2 x Z4 x Z16")).orbit_count(), 12u);

  const auto z4 = all_orbits(schema_of("Z4"));
  ASSERT_EQ(z4.orbit_count(), 3u);
  EXPECT_EQ(z4.representatives, (std::vector<std::int64_t>{0, 1, 2}));
  EXPECT_EQ(z4.orbit_of[1], z4.orbit_of[3]);
  EXPECT_NE(z4.orbit_of[0], z4.orbit_of[2]);
}

TEST(AllOrbits, KnownMemberships) {
  const auto z8 = all_orbits(schema_of("Z8^2"));
  EXPECT_EQ(z8.orbit_of[6 * 8 + 4], z8.orbit_of[2 * 8 + 0]);

  const auto z9 = all_orbits(schema_of("Z9"));
  std::set<int> orbit_of_six;
  for (int x = 0; x < 9; ++x)
    if (z9.orbit_of[x] == z9.orbit_of[6]) orbit_of_six.insert(x);
  EXPECT_EQ(orbit_of_six, (std::set<int>{3, 6}));

  const auto z28 = all_orbits(schema_of("Z2 x Z8"));
  EXPECT_EQ(z28.orbit_of[1 * 8 + 4], z28.orbit_of[1 * 8 + 0]);
  EXPECT_NE(z28.orbit_of[1 * 8 + 2], z28.orbit_of[1 * 8 + 0]);
  std::vector<std::vector<Integer>> reps;
  for (const auto code : z28.representatives) reps.push_back(z28.element(code).torsion[0]);
  EXPECT_EQ(reps, (std::vector<std::vector<Integer>>{{0, 0}, {0, 1}, {0, 2}, {0, 4}, {1, 0}, {1, 2}}));
}

TEST(AllOrbits, Errors) {
  EXPECT_THROW(all_orbits(schema_of("Z4 x Z")), InfiniteGroup);
  EXPECT_THROW(all_orbits(schema_of("Z27^3")), CapExceeded);
  Limits roomy;
  roomy.max_order = 20000;
  EXPECT_EQ(all_orbits(schema_of("Z27^3"), roomy).orbit_count(), 4u);
}

TEST(AllOrbits, MultiplicityInvariant) {
  for (const auto& [a, b] : std::vector<std::pair<const char*, const char*>>{
           {"Z2 x Z8", "Z2^2 x Z8^2"}, {"Z3 x Z9", "Z3^3 x Z9"}, {"Z4", "Z4^4"}}) {
    EXPECT_EQ(all_orbits(schema_of(a)).orbit_count(), all_orbits(schema_of(b)).orbit_count()) << a;
  }
}

TEST(LimitsFromEnvironment, ReadsMaxOrder) {
  ::setenv("ABELCANON_MAX_ORDER", "77", 1);
  EXPECT_EQ(limits_from_environment().max_order, 77);
  ::unsetenv("ABELCANON_MAX_ORDER");
  EXPECT_EQ(limits_from_environment().max_order, 4096);
}

TEST(MixedOrbit, Examples) {
  const auto s = schema_of("Z4 x Z");
  EXPECT_EQ(first_coordinates(mixed_orbit(Element{{{2}}, {2}}, s), 2), (std::set<Integer>{0, 2}));
  EXPECT_EQ(first_coordinates(mixed_orbit(Element{{{2}}, {4}}, s), 4), (std::set<Integer>{2}));
}

TEST(MixedOrbit, ZeroFreePartIsTorsionOrbit) {
  const auto s = schema_of("Z2 x Z8 x Z");
  PrimarySchema torsion = s;
  torsion.free_rank = 0;
  const auto partition = all_orbits(torsion);
  for (std::int64_t code = 0; code < partition.group_order(); ++code) {
    Element e = partition.element(code);
    e.free = {0};
    std::set<std::int64_t> mixed;
    for (const auto& x : mixed_orbit(e, s)) {
      EXPECT_EQ(x.free[0], 0);
      mixed.insert(x.torsion[0][0].get_si() * 8 + x.torsion[0][1].get_si());
    }
    std::set<std::int64_t> pure;
    for (std::int64_t other = 0; other < partition.group_order(); ++other)
      if (partition.orbit_of[other] == partition.orbit_of[code]) pure.insert(other);
    EXPECT_EQ(mixed, pure);
  }
}

TEST(MixedOrbit, SignSymmetry) {
  const auto s = schema_of("Z8 x Z");
  const MixedOracle oracle(s);
  for (long z = 1; z <= 12; ++z)
    for (long t = 0; t < 8; ++t) {
      const auto plus = oracle.orbit(Element{{{t}}, {z}});
      const auto minus = oracle.orbit(Element{{{t}}, {-z}});
      EXPECT_EQ(first_coordinates(plus, z), first_coordinates(minus, -z));
      EXPECT_EQ(plus, minus);
    }
}

TEST(MixedOrbit, Errors) {
  EXPECT_THROW(MixedOracle(schema_of("Z4")), std::invalid_argument);
  EXPECT_THROW(MixedOracle(schema_of("Z4 x Z^2")), std::invalid_argument);
  EXPECT_THROW(MixedOracle(schema_of("Z27^3 x Z")), CapExceeded);
}

TEST(VerifySchema, Examples) {
  for (const auto& [g, orbits] : std::vector<std::pair<const char*, std::size_t>>{
           {"Z2 x Z8", 6}, {"Z8^3", 4}, {"Z2 x Z4 x Z16", 12}, {"Z12 x Z9", 12}}) {
    const auto report = verify_schema(schema_of(g));
    EXPECT_TRUE(report.passed()) << g;
    EXPECT_EQ(report.orbit_count, orbits) << g;
    EXPECT_EQ(report.class_count, Integer(static_cast<unsigned long>(orbits))) << g;
    ASSERT_EQ(report.checks.size(), 5u);
    EXPECT_EQ(report.checks[0].name, "canonical_constant_on_orbits");
    for (const auto& c : report.checks) EXPECT_TRUE(c.witness.empty()) << c.name;
  }
}

TEST(VerifySchema, Errors) {
  EXPECT_THROW(verify_schema(schema_of("Z4 x Z")), InfiniteGroup);
  EXPECT_THROW(verify_schema(schema_of("Z2^13")), CapExceeded);
}
