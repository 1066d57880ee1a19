#include "abelcanon/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#include "abelcanon/counting.hpp"
#include "abelcanon/errors.hpp"
#include "abelcanon/kernels.hpp"
#include "abelcanon/reduction.hpp"

namespace abelcanon::oracle {

namespace {

constexpr std::int64_t kMaxModulus = std::int64_t{1} << 31;

std::int64_t mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

std::int64_t ipow(std::int64_t base, unsigned e) {
  std::int64_t out = 1;
  while (e-- > 0) out *= base;
  return out;
}

}  // namespace

Limits limits_from_environment() {
  Limits limits;
  if (const char* env = std::getenv("ABELCANON_MAX_ORDER"); env != nullptr && *env != '\0') {
    Integer value;
    if (value.set_str(env, 10) != 0 || value < 1)
      throw std::invalid_argument(std::string("ABELCANON_MAX_ORDER is not a positive integer: ") + env);
    limits.max_order = value;
  }
  return limits;
}

// ---------------------------------------------------------------------------
// Shapes and matrices

TorsionShape TorsionShape::of(std::int64_t p, std::vector<unsigned> exponents) {
  TorsionShape s;
  s.p = p;
  s.exponents = std::move(exponents);
  Integer order = 1;
  for (const auto r : s.exponents) {
    const Integer m = power(Integer(p), r);
    if (m >= kMaxModulus) throw CapExceeded("cyclic factor size", m, Integer(kMaxModulus));
    s.moduli.push_back(m.get_si());
    order *= m;
  }
  if (order >= kMaxModulus) throw CapExceeded("group order", order, Integer(kMaxModulus));
  s.order = order.get_si();
  return s;
}

TorsionShape TorsionShape::of(const PrimaryComponent& component) {
  if (component.p >= kMaxModulus) throw CapExceeded("prime size", component.p, Integer(kMaxModulus));
  return of(component.p.get_si(), component.slot_exponents());
}

std::int64_t TorsionShape::encode(std::span<const std::int64_t> coordinates) const {
  std::int64_t code = 0;
  for (std::size_t i = 0; i < slots(); ++i) code = code * moduli[i] + coordinates[i];
  return code;
}

void TorsionShape::decode(std::int64_t code, std::span<std::int64_t> coordinates) const {
  for (std::size_t i = slots(); i-- > 0;) {
    coordinates[i] = code % moduli[i];
    code /= moduli[i];
  }
}

std::vector<std::int64_t> TorsionShape::decode(std::int64_t code) const {
  std::vector<std::int64_t> out(slots());
  decode(code, out);
  return out;
}

HomMatrix HomMatrix::identity(std::int64_t p, std::vector<unsigned> exponents) {
  HomMatrix m{p, std::move(exponents), {}};
  m.entries.assign(m.size() * m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) m.at(i, i) = 1;
  return m;
}

void check_constraints(const HomMatrix& m) {
  const std::size_t n = m.size();
  if (m.entries.size() != n * n) throw std::invalid_argument("matrix is not square over its slots");
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t modulus = ipow(m.p, m.exponents[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t x = m.at(i, j);
      if (x < 0 || x >= modulus) throw std::invalid_argument("matrix entry out of range");
      const unsigned drop = m.exponents[i] > m.exponents[j] ? m.exponents[i] - m.exponents[j] : 0;
      if (x % ipow(m.p, drop) != 0)
        throw std::invalid_argument("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") violates the divisibility constraint");
    }
  }
}

bool is_automorphism(const HomMatrix& m) {
  check_constraints(m);
  const std::size_t n = m.size();
  std::vector<std::int64_t> a(m.entries.size());
  std::transform(m.entries.begin(), m.entries.end(), a.begin(), [&](std::int64_t x) { return x % m.p; });
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot * n + col] == 0) ++pivot;
    if (pivot == n) return false;
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
    // p is prime: Fermat inverse.
    std::int64_t inv = 1, base = a[col * n + col], e = m.p - 2;
    while (e > 0) {
      if (e & 1) inv = inv * base % m.p;
      base = base * base % m.p;
      e >>= 1;
    }
    for (std::size_t row = col + 1; row < n; ++row) {
      const std::int64_t f = a[row * n + col] * inv % m.p;
      if (f == 0) continue;
      for (std::size_t j = col; j < n; ++j) a[row * n + j] = mod(a[row * n + j] - f * a[col * n + j], m.p);
    }
  }
  return true;
}

std::vector<std::int64_t> apply(const HomMatrix& m, std::span<const std::int64_t> t) {
  if (t.size() != m.size()) throw std::invalid_argument("matrix and vector shapes differ");
  std::vector<std::int64_t> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::int64_t modulus = ipow(m.p, m.exponents[i]);
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < m.size(); ++j) acc = (acc + mod(m.at(i, j), modulus) * mod(t[j], modulus)) % modulus;
    out[i] = acc;
  }
  return out;
}

Integer endomorphism_count(const PrimaryComponent& component) {
  const auto r = component.slot_exponents();
  unsigned long total = 0;
  for (const auto ri : r)
    for (const auto rj : r) total += std::min(ri, rj);
  return power(component.p, static_cast<unsigned>(total));
}

std::vector<HomMatrix> enumerate_automorphisms(const PrimaryComponent& component, const Integer& cap) {
  const Integer count = endomorphism_count(component);
  if (count > cap) throw CapExceeded("endomorphism matrices", count, cap);
  return kernels::automorphisms_parallel(TorsionShape::of(component));
}

std::vector<HomMatrix> elementary_generators(const TorsionShape& shape) {
  std::vector<HomMatrix> out;
  const std::size_t n = shape.slots();
  for (std::size_t i = 0; i < n; ++i) {
    // Greedy generating set of the unit group mod p^{r_i}.
    const std::int64_t m = shape.moduli[i];
    std::vector<char> reached(static_cast<std::size_t>(m), 0);
    std::vector<std::int64_t> subgroup{1 % m};
    reached[static_cast<std::size_t>(1 % m)] = 1;
    for (std::int64_t u = 2; u < m; ++u) {
      if (u % shape.p == 0 || reached[static_cast<std::size_t>(u)]) continue;
      auto scaling = HomMatrix::identity(shape.p, shape.exponents);
      scaling.at(i, i) = u;
      out.push_back(std::move(scaling));
      // Abelian: the enlarged subgroup is H * <u>.
      const std::size_t old_size = subgroup.size();
      for (std::int64_t power_of_u = u % m; !reached[static_cast<std::size_t>(power_of_u)];
           power_of_u = power_of_u * u % m) {
        for (std::size_t k = 0; k < old_size; ++k) {
          const std::int64_t next = subgroup[k] * power_of_u % m;
          reached[static_cast<std::size_t>(next)] = 1;
          subgroup.push_back(next);
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      auto transvection = HomMatrix::identity(shape.p, shape.exponents);
      const unsigned drop = shape.exponents[i] > shape.exponents[j] ? shape.exponents[i] - shape.exponents[j] : 0;
      transvection.at(i, j) = ipow(shape.p, drop) % shape.moduli[i];
      out.push_back(std::move(transvection));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orbits

namespace {

struct Maps {
  OrbitMethod method;
  std::vector<HomMatrix> maps;
};

Maps orbit_maps(const PrimaryComponent& component, const TorsionShape& shape, const Limits& limits) {
  const Integer endos = endomorphism_count(component);
  if (endos <= limits.exhaustive_orbit_budget && endos <= limits.max_endomorphisms)
    return {OrbitMethod::Exhaustive, enumerate_automorphisms(component, limits.max_endomorphisms)};
  return {OrbitMethod::Generators, elementary_generators(shape)};
}

/// Orbit of each not-yet-covered element, in code order, as the set of its
/// images under the complete automorphism list.
std::vector<std::int64_t> roots_from_full_list(const TorsionShape& shape, const std::vector<HomMatrix>& auts) {
  std::vector<std::int64_t> root(static_cast<std::size_t>(shape.order), -1);
  std::vector<std::int64_t> x(shape.slots());
  for (std::int64_t code = 0; code < shape.order; ++code) {
    if (root[static_cast<std::size_t>(code)] >= 0) continue;
    shape.decode(code, x);
    for (const auto& a : auts) {
      const auto image = shape.encode(oracle::apply(a, x));
      root[static_cast<std::size_t>(image)] = code;
    }
  }
  return root;
}

}  // namespace

PrimeOrbits prime_orbits(const PrimaryComponent& component, const Limits& limits) {
  const Integer order = component.order();
  if (order > limits.max_order) throw CapExceeded("group order", order, limits.max_order);
  PrimeOrbits out;
  out.shape = TorsionShape::of(component);
  auto [method, maps] = orbit_maps(component, out.shape, limits);
  out.method = method;
  const auto roots = method == OrbitMethod::Exhaustive ? roots_from_full_list(out.shape, maps)
                                                       : kernels::orbit_roots_parallel(out.shape, maps);
  out.orbit_of.resize(roots.size());
  std::map<std::int64_t, std::uint32_t> id_of_root;
  for (std::size_t code = 0; code < roots.size(); ++code) {
    const auto [it, fresh] = id_of_root.try_emplace(roots[code], static_cast<std::uint32_t>(id_of_root.size()));
    if (fresh) out.representatives.push_back(roots[code]);
    out.orbit_of[code] = it->second;
  }
  return out;
}

Element OrbitPartition::element(std::int64_t code) const {
  Element e;
  e.torsion.resize(primes.size());
  for (std::size_t c = primes.size(); c-- > 0;) {
    const auto& shape = primes[c].shape;
    const auto coords = shape.decode(code % shape.order);
    code /= shape.order;
    e.torsion[c].assign(coords.begin(), coords.end());
    std::transform(coords.begin(), coords.end(), e.torsion[c].begin(), [](std::int64_t v) { return Integer(v); });
  }
  return e;
}

OrbitPartition all_orbits(const PrimarySchema& schema, const Limits& limits) {
  if (!schema.is_finite()) throw InfiniteGroup();
  const Integer order = schema.torsion_order();
  if (order > limits.max_order) throw CapExceeded("group order", order, limits.max_order);

  OrbitPartition out;
  for (const auto& c : schema.primes) out.primes.push_back(prime_orbits(c, limits));

  const std::int64_t total = order.get_si();
  out.orbit_of.resize(static_cast<std::size_t>(total));
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t rest = code;
    std::uint64_t id = 0, id_radix = 1;
    for (std::size_t c = out.primes.size(); c-- > 0;) {
      const auto& prime = out.primes[c];
      id += prime.orbit_of[static_cast<std::size_t>(rest % prime.shape.order)] * id_radix;
      id_radix *= prime.representatives.size();
      rest /= prime.shape.order;
    }
    out.orbit_of[static_cast<std::size_t>(code)] = static_cast<std::uint32_t>(id);
  }

  out.representatives = {0};
  for (const auto& prime : out.primes) {
    std::vector<std::int64_t> next;
    for (const auto prefix : out.representatives)
      for (const auto rep : prime.representatives) next.push_back(prefix * prime.shape.order + rep);
    out.representatives = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mixed orbits (free rank 1)

MixedOracle::MixedOracle(const PrimarySchema& schema, const Limits& limits) : schema_(schema) {
  if (schema.free_rank != 1) throw std::invalid_argument("mixed orbit needs free rank exactly 1");
  const Integer order = schema.torsion_order();
  if (order > limits.max_order) throw CapExceeded("torsion order", order, limits.max_order);
  order_ = order.get_si();
  for (const auto& c : schema.primes) {
    Part part{TorsionShape::of(c), {}};
    auto maps = orbit_maps(c, part.shape, limits);
    if (maps.method == OrbitMethod::Exhaustive &&
        Integer(static_cast<long>(maps.maps.size())) * part.shape.order > limits.exhaustive_orbit_budget * 64)
      maps = {OrbitMethod::Generators, elementary_generators(part.shape)};
    std::vector<std::int64_t> x(part.shape.slots());
    for (const auto& a : maps.maps) {
      std::vector<std::int64_t> image(static_cast<std::size_t>(part.shape.order));
      for (std::int64_t code = 0; code < part.shape.order; ++code) {
        part.shape.decode(code, x);
        image[static_cast<std::size_t>(code)] = part.shape.encode(oracle::apply(a, x));
      }
      part.images.push_back(std::move(image));
    }
    parts_.push_back(std::move(part));
  }
}

Element MixedOracle::element(std::int64_t code, const Integer& z) const {
  Element e;
  e.torsion.resize(parts_.size());
  for (std::size_t c = parts_.size(); c-- > 0;) {
    const auto& shape = parts_[c].shape;
    for (const auto x : shape.decode(code % shape.order)) e.torsion[c].emplace_back(x);
    code /= shape.order;
  }
  e.free = {z};
  return e;
}

std::vector<Element> MixedOracle::orbit(const Element& start) const {
  check_conforms(start, schema_);
  const Integer& z = start.free[0];

  // State = torsion code * 2 + (1 if the free coordinate is -z).
  std::int64_t start_code = 0;
  for (std::size_t c = 0; c < parts_.size(); ++c) {
    std::vector<std::int64_t> t;
    for (const auto& x : start.torsion[c]) t.push_back(x.get_si());
    start_code = start_code * parts_[c].shape.order + parts_[c].shape.encode(t);
  }
  const bool signed_pair = z != 0;
  std::vector<char> seen(static_cast<std::size_t>(order_) * 2, 0);
  std::vector<std::int64_t> frontier{start_code * 2};
  seen[static_cast<std::size_t>(start_code * 2)] = 1;
  const auto visit = [&](std::int64_t state) {
    if (!seen[static_cast<std::size_t>(state)]) {
      seen[static_cast<std::size_t>(state)] = 1;
      frontier.push_back(state);
    }
  };

  // Place value of each prime's code inside the full torsion code.
  std::vector<std::int64_t> place(parts_.size(), 1);
  for (std::size_t c = parts_.size(); c-- > 1;) place[c - 1] = place[c] * parts_[c].shape.order;

  std::vector<std::int64_t> x;
  while (!frontier.empty()) {
    const std::int64_t state = frontier.back();
    frontier.pop_back();
    const std::int64_t code = state / 2;
    const bool negated = (state % 2) == 1;
    if (signed_pair) visit(code * 2 + (negated ? 0 : 1));
    const Integer current_z = negated ? Integer(-z) : z;
    for (std::size_t c = 0; c < parts_.size(); ++c) {
      const auto& part = parts_[c];
      const std::int64_t own = code / place[c] % part.shape.order;
      const std::int64_t rest = code - own * place[c];
      for (const auto& image : part.images)
        visit((rest + image[static_cast<std::size_t>(own)] * place[c]) * 2 + (negated ? 1 : 0));
      // t + z e_k on each slot
      x = part.shape.decode(own);
      for (std::size_t k = 0; k < part.shape.slots(); ++k) {
        auto y = x;
        y[k] = (y[k] + reduce(current_z, Integer(part.shape.moduli[k])).get_si()) % part.shape.moduli[k];
        visit((rest + part.shape.encode(y) * place[c]) * 2 + (negated ? 1 : 0));
      }
    }
  }

  std::vector<Element> out;
  for (int sign_first = 0; sign_first < 2; ++sign_first) {
    // Ascending z: the negative member of {z, -z} first.
    const bool negated_first = z > 0 ? sign_first == 0 : sign_first == 1;
    for (std::int64_t code = 0; code < order_; ++code)
      if (seen[static_cast<std::size_t>(code * 2 + (negated_first ? 1 : 0))])
        out.push_back(element(code, negated_first ? Integer(-z) : z));
  }
  return out;
}

std::vector<Element> mixed_orbit(const Element& start, const PrimarySchema& schema, const Limits& limits) {
  return MixedOracle(schema, limits).orbit(start);
}

// ---------------------------------------------------------------------------
// Verification

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

using Key = std::vector<int>;

Key key_of(const CanonicalElement& c) {
  Key key;
  for (const auto& v : c.components)
    for (const auto& t : v.terms) key.push_back(t ? static_cast<int>(*t) : -1);
  return key;
}

}  // namespace

VerificationReport verify_schema(const PrimarySchema& schema, const Limits& limits) {
  VerificationReport report;
  report.schema = schema;
  const auto partition = all_orbits(schema, limits);
  report.orbit_count = partition.orbit_count();
  report.class_count = count_classes(schema).total;

  const auto forms = kernels::canonicalize_all_parallel(partition, schema);
  std::vector<Key> orbit_key;
  for (const auto rep : partition.representatives) orbit_key.push_back(key_of(forms[static_cast<std::size_t>(rep)]));

  Check constant{"canonical_constant_on_orbits", true, {}};
  for (std::size_t code = 0; code < forms.size() && constant.pass; ++code) {
    const auto orbit = partition.orbit_of[code];
    if (key_of(forms[code]) != orbit_key[orbit]) {
      constant.pass = false;
      constant.witness = {partition.element(partition.representatives[orbit]),
                          partition.element(static_cast<std::int64_t>(code))};
    }
  }

  Check distinct{"canonical_distinct_across_orbits", true, {}};
  std::map<Key, std::size_t> orbit_by_key;
  for (std::size_t o = 0; o < orbit_key.size(); ++o) {
    const auto [it, fresh] = orbit_by_key.try_emplace(orbit_key[o], o);
    if (!fresh && distinct.pass) {
      distinct.pass = false;
      distinct.witness = {partition.element(partition.representatives[it->second]),
                          partition.element(partition.representatives[o])};
    }
  }

  Check representative{"canonical_is_representative", true, {}};
  for (std::size_t o = 0; o < orbit_key.size() && representative.pass; ++o) {
    const auto rep = partition.representatives[o];
    if (!is_representative(forms[static_cast<std::size_t>(rep)].components)) {
      representative.pass = false;
      representative.witness = {partition.element(rep)};
    }
  }

  Check counted{"orbit_count_matches_formula", report.class_count == report.orbit_count, {}};

  Check enumerated{"enumeration_matches_orbit_canonicals", true, {}};
  std::set<Key> listed;
  for (const auto& c : enumerate_representatives(schema)) {
    const auto key = key_of(c);
    listed.insert(key);
    if (enumerated.pass && !orbit_by_key.contains(key)) {
      enumerated.pass = false;
      enumerated.witness = {c.embed(schema)};
    }
  }
  for (std::size_t o = 0; o < orbit_key.size() && enumerated.pass; ++o) {
    if (!listed.contains(orbit_key[o])) {
      enumerated.pass = false;
      enumerated.witness = {partition.element(partition.representatives[o])};
    }
  }

  report.checks = {constant, distinct, representative, counted, enumerated};
  return report;
}

}  // namespace abelcanon::oracle
