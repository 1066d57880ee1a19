#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abelcanon/group_model.hpp"
#include "abelcanon/integer.hpp"

namespace abelcanon::oracle {

/// Brute-force ground truth for small groups. Residues are machine integers;
/// every modulus must stay below 2^31.

struct Limits {
  /// Largest group (torsion) order the oracle will walk.
  Integer max_order = 4096;
  /// Largest endomorphism-matrix count enumerate_automorphisms will scan.
  Integer max_endomorphisms = Integer(1) << 24;
  /// Orbits of a prime component are taken under the full automorphism
  /// list when its endomorphism count is at most this; otherwise under
  /// closure of an elementary generating set.
  Integer exhaustive_orbit_budget = Integer(1) << 16;
};

/// Reads ABELCANON_MAX_ORDER when set.
Limits limits_from_environment();

/// One p-primary part with slot coordinates packed into a single code:
/// slot 0 is the most significant digit, so code order is lexicographic.
struct TorsionShape {
  std::int64_t p = 2;
  std::vector<unsigned> exponents;
  std::vector<std::int64_t> moduli;
  std::int64_t order = 1;

  static TorsionShape of(const PrimaryComponent& component);
  static TorsionShape of(std::int64_t p, std::vector<unsigned> exponents);

  std::size_t slots() const { return exponents.size(); }
  std::int64_t encode(std::span<const std::int64_t> coordinates) const;
  void decode(std::int64_t code, std::span<std::int64_t> coordinates) const;
  std::vector<std::int64_t> decode(std::int64_t code) const;
};

/// Endomorphism of a p-group as a matrix acting on column vectors. Entry
/// (i, j) is a residue mod p^{r_i} divisible by p^{max(0, r_i - r_j)}.
struct HomMatrix {
  std::int64_t p = 2;
  std::vector<unsigned> exponents;
  std::vector<std::int64_t> entries;  // row-major

  static HomMatrix identity(std::int64_t p, std::vector<unsigned> exponents);

  std::size_t size() const { return exponents.size(); }
  std::int64_t at(std::size_t i, std::size_t j) const { return entries[i * size() + j]; }
  std::int64_t& at(std::size_t i, std::size_t j) { return entries[i * size() + j]; }
  bool operator==(const HomMatrix&) const = default;
};

/// Throws std::invalid_argument when an entry is out of range or violates
/// the divisibility constraint.
void check_constraints(const HomMatrix& m);

/// Automorphism test: the matrix reduced mod p is invertible over F_p.
bool is_automorphism(const HomMatrix& m);

/// Row i of the product is reduced mod p^{r_i}.
std::vector<std::int64_t> apply(const HomMatrix& m, std::span<const std::int64_t> t);

/// Number of constraint-respecting matrices: product of p^{min(r_i, r_j)}.
Integer endomorphism_count(const PrimaryComponent& component);

/// All automorphisms, in endomorphism-index order. Throws CapExceeded when
/// the endomorphism count exceeds `cap`.
std::vector<HomMatrix> enumerate_automorphisms(const PrimaryComponent& component,
                                               const Integer& cap = Limits{}.max_endomorphisms);

/// Unit scalings on each slot plus one elementary transvection per ordered
/// slot pair; every member passes is_automorphism.
std::vector<HomMatrix> elementary_generators(const TorsionShape& shape);

enum class OrbitMethod { Exhaustive, Generators };

struct PrimeOrbits {
  TorsionShape shape;
  OrbitMethod method = OrbitMethod::Exhaustive;
  std::vector<std::uint32_t> orbit_of;          // by element code
  std::vector<std::int64_t> representatives;    // least code of each orbit, ascending
};

PrimeOrbits prime_orbits(const PrimaryComponent& component, const Limits& limits = {});

/// Orbit partition of a finite group. Element codes are mixed-radix over
/// the primes, smallest prime most significant.
struct OrbitPartition {
  std::vector<PrimeOrbits> primes;
  std::vector<std::uint32_t> orbit_of;
  std::vector<std::int64_t> representatives;

  std::size_t orbit_count() const { return representatives.size(); }
  std::int64_t group_order() const { return static_cast<std::int64_t>(orbit_of.size()); }
  Element element(std::int64_t code) const;
};

/// Throws InfiniteGroup for a free factor and CapExceeded when the group
/// order exceeds limits.max_order.
OrbitPartition all_orbits(const PrimarySchema& schema, const Limits& limits = {});

/// Orbits of torsion + Z under the mixed automorphisms
/// (t, z) -> (A t + z c, ±z). Torsion automorphism tables are built once.
class MixedOracle {
 public:
  /// `schema` must have free rank 1; throws CapExceeded past limits.max_order.
  explicit MixedOracle(const PrimarySchema& schema, const Limits& limits = {});

  /// Breadth-first closure of `start`, sorted by (z, torsion code).
  std::vector<Element> orbit(const Element& start) const;

  std::int64_t torsion_order() const { return order_; }
  /// Torsion element for a code, with free part z.
  Element element(std::int64_t code, const Integer& z) const;

 private:
  struct Part {
    TorsionShape shape;
    std::vector<std::vector<std::int64_t>> images;  // per map, by element code
  };

  PrimarySchema schema_;
  std::vector<Part> parts_;
  std::int64_t order_ = 1;
};

/// One-shot MixedOracle(schema, limits).orbit(start).
std::vector<Element> mixed_orbit(const Element& start, const PrimarySchema& schema, const Limits& limits = {});

struct Check {
  std::string name;
  bool pass = true;
  std::vector<Element> witness;
};

struct VerificationReport {
  PrimarySchema schema;
  std::vector<Check> checks;
  std::size_t orbit_count = 0;
  Integer class_count;

  bool passed() const;
};

/// Cross-checks canonical forms and class counts against the orbit oracle.
VerificationReport verify_schema(const PrimarySchema& schema, const Limits& limits = {});

}  // namespace abelcanon::oracle
