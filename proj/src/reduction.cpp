#include "abelcanon/reduction.hpp"

#include <algorithm>
#include <stdexcept>

namespace abelcanon {

Integer RepeatFreeVector::value(std::size_t i) const { return terms[i] ? power(p, *terms[i]) : Integer(0); }

unsigned RepeatFreeVector::order_log(std::size_t i) const { return terms[i] ? exponents[i] - *terms[i] : 0; }

std::size_t RepeatFreeVector::nonzero_count() const {
  return static_cast<std::size_t>(std::count_if(terms.begin(), terms.end(), [](const Term& t) { return t.has_value(); }));
}

std::vector<Integer> RepeatFreeVector::values() const {
  std::vector<Integer> out;
  out.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) out.push_back(value(i));
  return out;
}

void validate(const RepeatFreeVector& v) {
  if (v.exponents.size() != v.terms.size()) throw std::invalid_argument("term count differs from layer count");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.exponents[i] == 0 || (i > 0 && v.exponents[i] <= v.exponents[i - 1]))
      throw std::invalid_argument("repeat-free exponents must be positive and strictly ascending");
    if (v.terms[i] && *v.terms[i] >= v.exponents[i])
      throw std::invalid_argument("term p^l needs l < r");
  }
}

// ---------------------------------------------------------------------------

BlockReduction block_reduce(const Integer& p, unsigned r, std::span<const Integer> block) {
  BlockReduction out{std::nullopt, std::vector<Integer>(block.size(), Integer(0))};
  for (const auto& x : block) {
    if (x == 0) continue;
    const unsigned l = valuation(x, p);
    if (!out.term || l < *out.term) out.term = l;
  }
  if (out.term && !block.empty()) {
    if (*out.term >= r) throw std::invalid_argument("block residue out of range");
    out.after[0] = power(p, *out.term);
  }
  return out;
}

std::vector<Integer> block_reduction_matrix(const Integer& p, unsigned r, std::span<const Integer> block) {
  const std::size_t k = block.size();
  const Integer modulus = power(p, r);
  std::vector<Integer> m(k * k, Integer(0));
  const auto reduced = block_reduce(p, r, block);
  if (!reduced.term) {
    for (std::size_t i = 0; i < k; ++i) m[i * k + i] = 1;
    return m;
  }
  const unsigned l = *reduced.term;
  const Integer scale_p = power(p, l);
  std::size_t pivot = 0;
  while (block[pivot] == 0 || valuation(block[pivot], p) != l) ++pivot;
  const Integer unit_inverse = inverse_mod(Integer(block[pivot] / scale_p), modulus);

  m[pivot] = unit_inverse;
  std::size_t row = 1;
  for (std::size_t j = 0; j < k; ++j) {
    if (j == pivot) continue;
    m[row * k + j] = 1;
    // block[j] = (block[j]/p^l) * p^l, and row 0 already sends the pivot to p^l.
    m[row * k + pivot] = reduce(-Integer(block[j] / scale_p) * unit_inverse, modulus);
    ++row;
  }
  return m;
}

Integer free_reduce(std::span<const Integer> free) {
  Integer d = 0;
  for (const auto& z : free) d = gcd(d, z);
  return d;
}

std::vector<std::size_t> basic_reduction_targets(const RepeatFreeVector& v, std::size_t pivot) {
  if (pivot >= v.size() || !v.terms[pivot]) throw std::invalid_argument("basic reduction about a zero entry");
  const unsigned l = *v.terms[pivot];
  const unsigned order = v.order_log(pivot);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j == pivot || !v.terms[j]) continue;
    if (*v.terms[j] >= l && v.order_log(j) <= order) out.push_back(j);
  }
  return out;
}

RepeatFreeVector basic_reduction(const RepeatFreeVector& v, std::size_t pivot) {
  RepeatFreeVector out = v;
  for (const auto j : basic_reduction_targets(v, pivot)) out.terms[j].reset();
  return out;
}

bool is_reduced(const RepeatFreeVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v.terms[i] && !basic_reduction_targets(v, i).empty()) return false;
  return true;
}

bool is_representative(const RepeatFreeVector& v, const Integer& d) {
  std::optional<std::size_t> previous;
  const bool p_divides_d = d != 0 && mpz_divisible_p(d.get_mpz_t(), v.p.get_mpz_t()) != 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!v.terms[j]) continue;
    if (*v.terms[j] >= v.exponents[j]) return false;
    if (p_divides_d && *v.terms[j] > 0) return false;
    // Both sequences strictly increasing over nonzero entries iff each
    // consecutive nonzero pair increases.
    if (previous) {
      const std::size_t i = *previous;
      if (!(*v.terms[i] < *v.terms[j]) || !(v.order_log(i) < v.order_log(j))) return false;
    }
    previous = j;
  }
  return true;
}

bool is_representative(std::span<const RepeatFreeVector> components, const Integer& d) {
  return std::all_of(components.begin(), components.end(),
                     [&](const RepeatFreeVector& v) { return is_representative(v, d); });
}

Element CanonicalElement::embed(const PrimarySchema& schema) const {
  Element e = zero_element(schema);
  for (std::size_t c = 0; c < schema.primes.size(); ++c) {
    const auto offsets = schema.primes[c].layer_offsets();
    for (std::size_t i = 0; i < offsets.size(); ++i) e.torsion[c][offsets[i]] = components[c].value(i);
  }
  if (!e.free.empty()) e.free[0] = d;
  return e;
}

std::string to_string(StepKind kind) {
  switch (kind) {
    case StepKind::BlockReduce: return "block_reduce";
    case StepKind::BasicReduction: return "basic_reduction";
    case StepKind::FreeReduce: return "free_reduce";
    case StepKind::ClearByFree: return "clear_by_free";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

namespace {

void reduce_to_fixpoint(RepeatFreeVector& v, ReductionTrace* trace) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v.terms[i]) continue;
      auto cleared = basic_reduction_targets(v, i);
      if (cleared.empty()) continue;
      RepeatFreeVector next = v;
      for (const auto j : cleared) next.terms[j].reset();
      if (trace)
        trace->push_back({StepKind::BasicReduction, v.p, i, std::move(cleared), v.values(), next.values()});
      v = std::move(next);
      changed = true;
    }
  }
}

/// Zeroes entries p^l with l >= v_p(d): c*d = -p^l (mod p^r) is solvable
/// exactly for those, so adding c times the free generator clears them.
bool clear_by_free(RepeatFreeVector& v, const Integer& d, ReductionTrace* trace) {
  const unsigned dv = valuation(d, v.p);
  RepeatFreeVector next = v;
  std::vector<std::size_t> cleared;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.terms[i] && *v.terms[i] >= dv) {
      next.terms[i].reset();
      cleared.push_back(i);
    }
  }
  if (cleared.empty()) return false;
  if (trace) trace->push_back({StepKind::ClearByFree, v.p, std::nullopt, std::move(cleared), v.values(), next.values()});
  v = std::move(next);
  return true;
}

std::vector<Integer> free_after(std::span<const Integer> free, const Integer& d) {
  std::vector<Integer> out(free.size(), Integer(0));
  if (!out.empty()) out[0] = d;
  return out;
}

}  // namespace

CanonicalElement canonicalize(const Element& e, const PrimarySchema& schema, ReductionTrace* trace) {
  if (e.torsion.size() != schema.primes.size() || e.free.size() != schema.free_rank)
    throw std::invalid_argument("element shape does not match the group");
  CanonicalElement out;
  out.components.reserve(schema.primes.size());
  for (std::size_t c = 0; c < schema.primes.size(); ++c) {
    const auto& comp = schema.primes[c];
    if (e.torsion[c].size() != comp.slot_count()) throw std::invalid_argument("element shape does not match the group");
    RepeatFreeVector v{comp.p, comp.repeat_free_exponents(), {}};
    std::size_t offset = 0;
    for (std::size_t i = 0; i < comp.layers.size(); ++i) {
      const auto block = std::span<const Integer>(e.torsion[c]).subspan(offset, comp.layers[i].multiplicity);
      auto reduced = block_reduce(comp.p, comp.layers[i].exponent, block);
      if (trace && !std::equal(block.begin(), block.end(), reduced.after.begin())) {
        std::vector<std::size_t> cleared;
        for (std::size_t s = 1; s < block.size(); ++s)
          if (block[s] != 0) cleared.push_back(s);
        trace->push_back({StepKind::BlockReduce, comp.p, i, std::move(cleared),
                          std::vector<Integer>(block.begin(), block.end()), reduced.after});
      }
      v.terms.push_back(reduced.term);
      offset += comp.layers[i].multiplicity;
    }
    out.components.push_back(std::move(v));
  }
  for (auto& v : out.components) reduce_to_fixpoint(v, trace);

  out.d = free_reduce(e.free);
  const auto normalized = free_after(e.free, out.d);
  if (trace && normalized != e.free)
    trace->push_back({StepKind::FreeReduce, std::nullopt, std::nullopt, {}, e.free, normalized});

  if (out.d != 0) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& v : out.components) {
        if (clear_by_free(v, out.d, trace)) {
          reduce_to_fixpoint(v, trace);
          changed = true;
        }
      }
    }
  }
  out.conforming = is_representative(out.components, out.d);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("invalid trace step: " + what);
}

}  // namespace

CanonicalElement replay(const Element& e, const PrimarySchema& schema, const ReductionTrace& trace) {
  Element state = e;
  std::vector<RepeatFreeVector> rf;
  Integer d = 0;
  bool blocks_done = false;

  const auto component_of = [&](const std::optional<Integer>& p) {
    require(p.has_value(), "missing prime");
    for (std::size_t c = 0; c < schema.primes.size(); ++c)
      if (schema.primes[c].p == *p) return c;
    require(false, "unknown prime");
    return std::size_t{0};
  };
  const auto finish_blocks = [&] {
    if (blocks_done) return;
    blocks_done = true;
    for (std::size_t c = 0; c < schema.primes.size(); ++c) {
      const auto& comp = schema.primes[c];
      RepeatFreeVector v{comp.p, comp.repeat_free_exponents(), {}};
      std::size_t offset = 0;
      for (const auto& layer : comp.layers) {
        const auto block = std::span<const Integer>(state.torsion[c]).subspan(offset, layer.multiplicity);
        const auto reduced = block_reduce(comp.p, layer.exponent, block);
        require(std::equal(block.begin(), block.end(), reduced.after.begin()), "layer block left unreduced");
        v.terms.push_back(reduced.term);
        offset += layer.multiplicity;
      }
      rf.push_back(std::move(v));
    }
    d = free_reduce(state.free);
  };

  for (const auto& step : trace) {
    switch (step.kind) {
      case StepKind::BlockReduce: {
        require(!blocks_done, "block step after reduction began");
        const std::size_t c = component_of(step.prime);
        const auto& comp = schema.primes[c];
        require(step.position && *step.position < comp.layers.size(), "layer out of range");
        const std::size_t layer = *step.position;
        const std::size_t offset = comp.layer_offsets()[layer];
        auto& slots = state.torsion[c];
        const std::vector<Integer> current(slots.begin() + static_cast<std::ptrdiff_t>(offset),
                                           slots.begin() + static_cast<std::ptrdiff_t>(offset + comp.layers[layer].multiplicity));
        require(current == step.before, "block does not match");
        require(block_reduce(comp.p, comp.layers[layer].exponent, current).after == step.after,
                "block result does not preserve the order");
        std::copy(step.after.begin(), step.after.end(), slots.begin() + static_cast<std::ptrdiff_t>(offset));
        break;
      }
      case StepKind::FreeReduce: {
        require(step.before == state.free, "free vector does not match");
        require(step.after == free_after(step.before, free_reduce(step.before)), "free result is not the gcd");
        state.free = step.after;
        d = free_reduce(state.free);
        break;
      }
      case StepKind::BasicReduction: {
        finish_blocks();
        auto& v = rf[component_of(step.prime)];
        require(v.values() == step.before, "vector does not match");
        require(step.position.has_value(), "missing pivot");
        require(basic_reduction_targets(v, *step.position) == step.cleared_positions, "wrong cleared set");
        v = basic_reduction(v, *step.position);
        require(v.values() == step.after, "result does not match");
        break;
      }
      case StepKind::ClearByFree: {
        finish_blocks();
        auto& v = rf[component_of(step.prime)];
        require(v.values() == step.before, "vector does not match");
        require(d != 0, "no free part to clear with");
        require(state.free == free_after(state.free, d), "free part not reduced yet");
        const unsigned dv = valuation(d, v.p);
        for (const auto i : step.cleared_positions) {
          require(i < v.size() && v.terms[i] && *v.terms[i] >= dv, "entry not clearable");
          v.terms[i].reset();
        }
        require(v.values() == step.after, "result does not match");
        break;
      }
    }
  }
  finish_blocks();
  CanonicalElement out{std::move(rf), d, true};
  out.conforming = is_representative(out.components, out.d);
  return out;
}

Equivalence are_equivalent(const Element& a, const Element& b, const PrimarySchema& schema) {
  Equivalence out{false, false, canonicalize(a, schema), canonicalize(b, schema)};
  out.equivalent = out.first == out.second;
  out.caveat = schema.free_rank > 0 && (!out.first.conforming || !out.second.conforming);
  return out;
}

}  // namespace abelcanon
