#include <gtest/gtest.h>
#include <omp.h>

#include "abelcanon/kernels.hpp"

using namespace abelcanon;
using namespace abelcanon::kernels;

namespace {

const std::vector<TorsionShape>& shapes() {
  static const std::vector<TorsionShape> all{
      TorsionShape::of(2, {1, 2}),    TorsionShape::of(2, {1, 1, 3}), TorsionShape::of(3, {1, 2}),
      TorsionShape::of(2, {1, 2, 2}), TorsionShape::of(5, {1, 1}),    TorsionShape::of(3, {1, 1, 2})};
  return all;
}

class ThreadCounts : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(GetParam());
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

}  // namespace

TEST(EndomorphismSpace, SizeMatchesCount) {
  const auto component = to_primary(parse_group_spec("Z2 x Z4^2")).primes[0];
  EXPECT_EQ(Integer(static_cast<unsigned long>(EndomorphismSpace(TorsionShape::of(component)).size())),
            oracle::endomorphism_count(component));
}

TEST(EndomorphismSpace, DecodesOnlyValidMatrices) {
  const auto shape = TorsionShape::of(2, {1, 3});
  const EndomorphismSpace space(shape);
  HomMatrix m = HomMatrix::identity(2, shape.exponents);
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    space.decode(i, m);
    EXPECT_NO_THROW(oracle::check_constraints(m));
  }
}

TEST(IsBijective, AgreesWithDirectCheck) {
  const auto shape = TorsionShape::of(2, {1, 2});
  std::vector<std::uint8_t> scratch;
  EXPECT_TRUE(is_bijective(HomMatrix::identity(2, {1, 2}), shape, scratch));
  EXPECT_FALSE(is_bijective(HomMatrix{2, {1, 2}, {1, 0, 0, 2}}, shape, scratch));
  EXPECT_TRUE(is_bijective(HomMatrix{2, {1, 2}, {1, 1, 2, 3}}, shape, scratch));
}

TEST_P(ThreadCounts, AutomorphismsMatchSerial) {
  for (const auto& shape : shapes()) EXPECT_EQ(automorphisms_parallel(shape), automorphisms_serial(shape));
}

TEST_P(ThreadCounts, ModPSweepMatchesSerial) {
  for (const auto& shape : shapes()) {
    const auto parallel = modp_sweep_parallel(shape);
    EXPECT_EQ(parallel, modp_sweep_serial(shape));
    EXPECT_EQ(parallel.disagreements, 0u);
    EXPECT_EQ(parallel.passes_mod_p, parallel.bijective);
  }
}

TEST_P(ThreadCounts, OrbitRootsMatchSerial) {
  for (const auto& shape : shapes()) {
    const auto gens = oracle::elementary_generators(shape);
    EXPECT_EQ(orbit_roots_parallel(shape, gens), orbit_roots_serial(shape, gens));
    const auto auts = automorphisms_serial(shape);
    EXPECT_EQ(orbit_roots_parallel(shape, auts), orbit_roots_serial(shape, gens));
  }
}

TEST_P(ThreadCounts, CanonicalizeAllMatchesSerial) {
  for (const char* g : {"Z2 x Z8 x Z9", "Z4^2 x Z8 x Z3", "Z5 x Z25 x Z2"}) {
    const auto schema = to_primary(parse_group_spec(g));
    const auto partition = oracle::all_orbits(schema);
    EXPECT_EQ(canonicalize_all_parallel(partition, schema), canonicalize_all_serial(partition, schema)) << g;
  }
}

INSTANTIATE_TEST_SUITE_P(Kernels, ThreadCounts, ::testing::Values(1, 2, 4));
