#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abelcanon/group_model.hpp"
#include "abelcanon/integer.hpp"

namespace abelcanon {

/// Entry of a repeat-free vector: zero, or p^l stored as the exponent l.
using Term = std::optional<unsigned>;

/// One prime's coordinates in the repeat-free subgroup
/// Z_{p^{r_1}} + ... + Z_{p^{r_n}}, r ascending, each entry 0 or p^l with l < r.
struct RepeatFreeVector {
  Integer p;
  std::vector<unsigned> exponents;
  std::vector<Term> terms;

  std::size_t size() const { return terms.size(); }
  Integer value(std::size_t i) const;
  /// log_p of the order of entry i, i.e. r_i - l_i (0 for a zero entry).
  unsigned order_log(std::size_t i) const;
  std::size_t nonzero_count() const;
  std::vector<Integer> values() const;

  bool operator==(const RepeatFreeVector&) const = default;
};

/// Throws std::invalid_argument unless every term satisfies l < r and the
/// exponents strictly ascend.
void validate(const RepeatFreeVector& v);

struct BlockReduction {
  Term term;
  /// The block after reduction: (p^l, 0, ..., 0), or all zeros.
  std::vector<Integer> after;
};

/// Reduces a block in Z_{p^r}^k to (p^l, 0, ..., 0) where p^{r-l} is the
/// block's order.
BlockReduction block_reduce(const Integer& p, unsigned r, std::span<const Integer> block);

/// Automorphism of Z_{p^r}^k (row-major k*k, residues mod p^r) taking
/// `block` to `block_reduce(...).after`: unit scaling of the pivot composed
/// with clearing of the other coordinates.
std::vector<Integer> block_reduction_matrix(const Integer& p, unsigned r, std::span<const Integer> block);

/// gcd of the free coordinates, nonnegative; 0 for the zero vector.
Integer free_reduce(std::span<const Integer> free);

/// Positions a basic reduction about `pivot` would zero. Throws
/// std::invalid_argument when the pivot entry is zero.
std::vector<std::size_t> basic_reduction_targets(const RepeatFreeVector& v, std::size_t pivot);

/// Basic reduction about `pivot` (0-based): every other nonzero entry with
/// value >= and order <= those of the pivot entry becomes zero.
RepeatFreeVector basic_reduction(const RepeatFreeVector& v, std::size_t pivot);

/// No non-trivial basic reduction applies.
bool is_reduced(const RepeatFreeVector& v);

/// Representative-element predicate. Over each pair of nonzero entries
/// i < j both value and order must strictly increase; when d != 0 every
/// nonzero entry must also be coprime to d.
bool is_representative(const RepeatFreeVector& v, const Integer& d = 0);
bool is_representative(std::span<const RepeatFreeVector> components, const Integer& d = 0);

struct CanonicalElement {
  std::vector<RepeatFreeVector> components;
  /// Free part after gcd reduction; 0 when the group is finite.
  Integer d;
  bool conforming = true;

  /// The canonical element as a group element: each layer's first slot
  /// carries the term, the first free coordinate carries d.
  Element embed(const PrimarySchema& schema) const;

  bool operator==(const CanonicalElement&) const = default;
};

enum class StepKind { BlockReduce, BasicReduction, FreeReduce, ClearByFree };

std::string to_string(StepKind kind);

/// One rewriting step. `before`/`after` hold the layer block for
/// BlockReduce, the free vector for FreeReduce, and the prime's repeat-free
/// values otherwise.
struct ReductionStep {
  StepKind kind;
  std::optional<Integer> prime;
  std::optional<std::size_t> position;
  std::vector<std::size_t> cleared_positions;
  std::vector<Integer> before;
  std::vector<Integer> after;

  bool operator==(const ReductionStep&) const = default;
};

using ReductionTrace = std::vector<ReductionStep>;

/// Unique representative of the automorphism class of `e`. Steps taken are
/// appended to `trace` when given.
CanonicalElement canonicalize(const Element& e, const PrimarySchema& schema, ReductionTrace* trace = nullptr);

/// Re-applies `trace` to `e`, validating each step, and returns the
/// resulting canonical element. Throws std::logic_error on an invalid step.
CanonicalElement replay(const Element& e, const PrimarySchema& schema, const ReductionTrace& trace);

struct Equivalence {
  bool equivalent;
  /// Set when a free factor is present and either form is non-conforming:
  /// equality of forms is then not known to decide orbit membership.
  bool caveat;
  CanonicalElement first;
  CanonicalElement second;
};

Equivalence are_equivalent(const Element& a, const Element& b, const PrimarySchema& schema);

}  // namespace abelcanon
