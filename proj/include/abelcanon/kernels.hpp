#pragma once

// Data-parallel oracle kernels. Each *_parallel kernel has a *_serial
// reference producing identical output regardless of thread count.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "abelcanon/oracle.hpp"
#include "abelcanon/reduction.hpp"

namespace abelcanon::kernels {

using oracle::HomMatrix;
using oracle::TorsionShape;

/// Index-space walk over constrained endomorphisms.
struct EndomorphismSpace {
  explicit EndomorphismSpace(const TorsionShape& shape);

  std::uint64_t size() const { return size_; }
  void decode(std::uint64_t index, HomMatrix& out) const;

 private:
  TorsionShape shape_;
  std::vector<std::int64_t> radix_;  // free residues per entry
  std::vector<std::int64_t> step_;   // p^{max(0, r_i - r_j)}
  std::uint64_t size_ = 1;
};

std::vector<HomMatrix> automorphisms_serial(const TorsionShape& shape);
std::vector<HomMatrix> automorphisms_parallel(const TorsionShape& shape);

/// True iff the map is injective on the whole group (hence bijective).
bool is_bijective(const HomMatrix& m, const TorsionShape& shape, std::vector<std::uint8_t>& scratch);

struct ModPTally {
  std::uint64_t endomorphisms = 0;
  std::uint64_t passes_mod_p = 0;
  std::uint64_t bijective = 0;
  std::uint64_t disagreements = 0;
  std::optional<HomMatrix> witness;  // first disagreement by index

  bool operator==(const ModPTally&) const = default;
};

/// Compares the mod-p test with bijectivity on every constrained endomorphism.
ModPTally modp_sweep_serial(const TorsionShape& shape);
ModPTally modp_sweep_parallel(const TorsionShape& shape);

/// Orbit labels (least-code root per element) under the group generated by
/// `maps`.
std::vector<std::int64_t> orbit_roots_serial(const TorsionShape& shape, std::span<const HomMatrix> maps);
std::vector<std::int64_t> orbit_roots_parallel(const TorsionShape& shape, std::span<const HomMatrix> maps);

/// Canonical form of every element of a finite group, by element code.
std::vector<CanonicalElement> canonicalize_all_serial(const oracle::OrbitPartition& partition,
                                                      const PrimarySchema& schema);
std::vector<CanonicalElement> canonicalize_all_parallel(const oracle::OrbitPartition& partition,
                                                        const PrimarySchema& schema);

}  // namespace abelcanon::kernels
