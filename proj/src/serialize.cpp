#include "abelcanon/serialize.hpp"

namespace abelcanon {

Json integer_json(const Integer& x) {
  if (fits_int64(x)) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

Json integers_json(std::span<const Integer> xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(integer_json(x));
  return out;
}

Json schema_json(const PrimarySchema& schema) {
  Json primes = Json::array();
  for (const auto& c : schema.primes) {
    Json layers = Json::array();
    for (const auto& layer : c.layers) layers.push_back({{"exponent", layer.exponent}, {"multiplicity", layer.multiplicity}});
    primes.push_back({{"p", integer_json(c.p)}, {"layers", std::move(layers)}});
  }
  return {{"primes", std::move(primes)}, {"free_rank", schema.free_rank}};
}

Json element_json(const Element& e, const PrimarySchema& schema) {
  Json torsion = Json::array();
  for (std::size_t c = 0; c < schema.primes.size(); ++c)
    torsion.push_back({{"p", integer_json(schema.primes[c].p)}, {"slots", integers_json(e.torsion[c])}});
  return {{"torsion", std::move(torsion)}, {"free", integers_json(e.free)}};
}

Json repeat_free_json(const CanonicalElement& c) {
  Json out = Json::array();
  for (const auto& v : c.components) {
    const auto values = v.values();
    out.push_back({{"p", integer_json(v.p)}, {"exponents", v.exponents}, {"entries", integers_json(values)}});
  }
  return out;
}

Json trace_json(const ReductionTrace& trace) {
  Json out = Json::array();
  for (const auto& step : trace) {
    Json s;
    s["kind"] = to_string(step.kind);
    s["prime"] = step.prime ? integer_json(*step.prime) : Json(nullptr);
    s["position"] = step.position ? Json(*step.position) : Json(nullptr);
    s["cleared_positions"] = step.cleared_positions;
    s["before"] = integers_json(step.before);
    s["after"] = integers_json(step.after);
    out.push_back(std::move(s));
  }
  return out;
}

Json report_json(const oracle::VerificationReport& report) {
  Json checks = Json::array();
  for (const auto& check : report.checks) {
    Json c{{"name", check.name}, {"pass", check.pass}};
    if (!check.witness.empty()) {
      Json witness = Json::array();
      for (const auto& e : check.witness) witness.push_back(element_json(e, report.schema));
      c["witness"] = std::move(witness);
    }
    checks.push_back(std::move(c));
  }
  return {{"schema", schema_json(report.schema)},
          {"checks", std::move(checks)},
          {"orbit_count", report.orbit_count},
          {"class_count", integer_json(report.class_count)}};
}

}  // namespace abelcanon
