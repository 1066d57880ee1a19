#pragma once

#include <json.hpp>

#include "abelcanon/counting.hpp"
#include "abelcanon/group_model.hpp"
#include "abelcanon/oracle.hpp"
#include "abelcanon/reduction.hpp"

namespace abelcanon {

using Json = nlohmann::ordered_json;

/// A JSON number when it fits in 64 bits, a decimal string otherwise.
Json integer_json(const Integer& x);
Json integers_json(std::span<const Integer> xs);

/// {primes: [{p, layers: [{exponent, multiplicity}]}], free_rank}
Json schema_json(const PrimarySchema& schema);

/// [{p, slots: [...]}] plus free coordinates: {torsion, free}
Json element_json(const Element& e, const PrimarySchema& schema);

/// [{p, exponents, entries}] with entries as values (0 or p^l).
Json repeat_free_json(const CanonicalElement& c);

/// Array of {kind, prime, position, cleared_positions, before, after}.
Json trace_json(const ReductionTrace& trace);

/// {schema, checks: [{name, pass, witness?}], orbit_count, class_count}
Json report_json(const oracle::VerificationReport& report);

}  // namespace abelcanon
