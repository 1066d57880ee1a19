#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "abelcanon/integer.hpp"

namespace abelcanon {

struct FiniteFactor {
  Integer modulus;
  unsigned multiplicity = 1;
  bool operator==(const FiniteFactor&) const = default;
};

struct FreeFactor {
  unsigned multiplicity = 1;
  bool operator==(const FreeFactor&) const = default;
};

using Factor = std::variant<FiniteFactor, FreeFactor>;

/// A group exactly as the user wrote it, trivial `Z1` factors dropped.
struct GroupSpec {
  std::vector<Factor> factors;

  /// Number of coordinates an element literal must carry.
  std::size_t arity() const;
  bool operator==(const GroupSpec&) const = default;
};

struct Layer {
  unsigned exponent;
  unsigned multiplicity;
  bool operator==(const Layer&) const = default;
};

/// One p-primary part: Z_{p^{r_1}}^{k_1} + ... + Z_{p^{r_n}}^{k_n}, r ascending.
struct PrimaryComponent {
  Integer p;
  std::vector<Layer> layers;

  std::size_t slot_count() const;
  /// Exponent of every slot, layers expanded by multiplicity.
  std::vector<unsigned> slot_exponents() const;
  /// First slot of each layer.
  std::vector<std::size_t> layer_offsets() const;
  /// Exponents of the repeat-free subgroup (one per layer).
  std::vector<unsigned> repeat_free_exponents() const;
  Integer order() const;
  bool operator==(const PrimaryComponent&) const = default;
};

struct PrimarySchema {
  std::vector<PrimaryComponent> primes;
  std::size_t free_rank = 0;

  bool is_finite() const { return free_rank == 0; }
  /// Order of the torsion part.
  Integer torsion_order() const;
  bool operator==(const PrimarySchema&) const = default;
};

/// Group element in primary coordinates. `torsion[c]` has one residue per
/// slot of component c, layers in ascending exponent order.
struct Element {
  std::vector<std::vector<Integer>> torsion;
  std::vector<Integer> free;
  bool operator==(const Element&) const = default;
};

/// Least n ≥ 1 with n·e = 0; empty when the element has infinite order.
struct ElementOrder {
  std::optional<Integer> value;

  static ElementOrder infinite() { return {}; }
  bool is_infinite() const { return !value.has_value(); }
  bool operator==(const ElementOrder&) const = default;
};

GroupSpec parse_group_spec(std::string_view text);
PrimarySchema to_primary(const GroupSpec& spec);
Element parse_element(std::string_view text, const GroupSpec& spec);
ElementOrder element_order(const Element& e, const PrimarySchema& schema);

/// Zero element shaped for `schema`.
Element zero_element(const PrimarySchema& schema);
/// n·e with residues reduced.
Element scale(const Element& e, const Integer& n, const PrimarySchema& schema);
/// Throws std::invalid_argument when `e` does not fit `schema`.
void check_conforms(const Element& e, const PrimarySchema& schema);

/// Maps between the user's written coordinates and primary slots.
class Group {
 public:
  explicit Group(GroupSpec spec);
  static Group parse(std::string_view text) { return Group(parse_group_spec(text)); }

  const GroupSpec& spec() const { return spec_; }
  const PrimarySchema& schema() const { return schema_; }
  std::size_t arity() const { return coordinates_.size(); }

  /// CRT-projects user coordinates into primary slots.
  Element from_user(std::span<const Integer> coordinates) const;
  /// Reassembles user coordinates from primary slots.
  std::vector<Integer> to_user(const Element& e) const;

 private:
  struct SlotRef {
    std::size_t component;
    std::size_t slot;
  };
  struct Coordinate {
    Integer modulus;              // 0 for a free coordinate
    std::vector<SlotRef> parts;   // one per prime dividing the modulus
    std::size_t free_index = 0;
  };

  GroupSpec spec_;
  PrimarySchema schema_;
  std::vector<Coordinate> coordinates_;
};

/// Parses a comma-separated list of signed decimal integers.
std::vector<Integer> parse_integer_list(std::string_view text);

std::string describe(const PrimarySchema& schema);

}  // namespace abelcanon
