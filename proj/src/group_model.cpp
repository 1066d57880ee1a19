#include "abelcanon/group_model.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

#include "abelcanon/errors.hpp"

namespace abelcanon {

std::size_t GroupSpec::arity() const {
  std::size_t n = 0;
  for (const auto& f : factors)
    n += std::visit([](const auto& x) -> std::size_t { return x.multiplicity; }, f);
  return n;
}

std::size_t PrimaryComponent::slot_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers) n += layer.multiplicity;
  return n;
}

std::vector<unsigned> PrimaryComponent::slot_exponents() const {
  std::vector<unsigned> out;
  for (const auto& layer : layers) out.insert(out.end(), layer.multiplicity, layer.exponent);
  return out;
}

std::vector<std::size_t> PrimaryComponent::layer_offsets() const {
  std::vector<std::size_t> out;
  std::size_t at = 0;
  for (const auto& layer : layers) {
    out.push_back(at);
    at += layer.multiplicity;
  }
  return out;
}

std::vector<unsigned> PrimaryComponent::repeat_free_exponents() const {
  std::vector<unsigned> out;
  for (const auto& layer : layers) out.push_back(layer.exponent);
  return out;
}

Integer PrimaryComponent::order() const {
  Integer out = 1;
  for (const auto& layer : layers) out *= power(p, layer.exponent * layer.multiplicity);
  return out;
}

Integer PrimarySchema::torsion_order() const {
  Integer out = 1;
  for (const auto& c : primes) out *= c.order();
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (std::isspace(static_cast<unsigned char>(text[i])) != 0) continue;
      chars_.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
      origin_.push_back(i);
    }
    origin_.push_back(text.size());
  }

  bool done() const { return at_ == chars_.size(); }
  char peek() const { return done() ? '\0' : chars_[at_]; }
  std::size_t position() const { return origin_[at_]; }
  void advance() { ++at_; }

  std::string digits() {
    std::string out;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek())) != 0) {
      out.push_back(peek());
      advance();
    }
    return out;
  }

 private:
  std::string chars_;
  std::vector<std::size_t> origin_;
  std::size_t at_ = 0;
};

unsigned parse_multiplicity(const std::string& digits, std::size_t position) {
  const Integer value(digits);
  if (value == 0) throw ParseError("multiplicity must be at least 1", position);
  if (!value.fits_uint_p()) throw ParseError("multiplicity too large", position);
  return static_cast<unsigned>(value.get_ui());
}

}  // namespace

GroupSpec parse_group_spec(std::string_view text) {
  Cursor in(text);
  GroupSpec spec;
  if (in.done()) throw ParseError("empty group description", in.position());
  while (true) {
    if (in.peek() != 'z') throw ParseError("expected 'Z'", in.position());
    in.advance();
    const std::size_t modulus_at = in.position();
    const std::string modulus = in.digits();
    unsigned multiplicity = 1;
    if (in.peek() == '^') {
      in.advance();
      const std::size_t at = in.position();
      const std::string k = in.digits();
      if (k.empty()) throw ParseError("expected digits after '^'", at);
      multiplicity = parse_multiplicity(k, at);
    }
    if (modulus.empty()) {
      spec.factors.emplace_back(FreeFactor{multiplicity});
    } else {
      Integer m(modulus);
      if (m == 0) throw ParseError("modulus must be at least 1", modulus_at);
      if (m != 1) spec.factors.emplace_back(FiniteFactor{std::move(m), multiplicity});
    }
    if (in.done()) break;
    if (in.peek() != 'x' && in.peek() != '*') throw ParseError("expected 'x' or '*'", in.position());
    in.advance();
  }
  return spec;
}

PrimarySchema to_primary(const GroupSpec& spec) {
  std::map<Integer, std::map<unsigned, unsigned>> layers;
  PrimarySchema out;
  for (const auto& factor : spec.factors) {
    if (const auto* free = std::get_if<FreeFactor>(&factor)) {
      out.free_rank += free->multiplicity;
      continue;
    }
    const auto& finite = std::get<FiniteFactor>(factor);
    for (const auto& [p, e] : factorize(finite.modulus)) layers[p][e] += finite.multiplicity;
  }
  for (const auto& [p, by_exponent] : layers) {
    PrimaryComponent c{p, {}};
    for (const auto& [r, k] : by_exponent) c.layers.push_back({r, k});
    out.primes.push_back(std::move(c));
  }
  return out;
}

std::vector<Integer> parse_integer_list(std::string_view text) {
  std::vector<Integer> out;
  const bool blank = std::all_of(text.begin(), text.end(),
                                 [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
  if (blank) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string token(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    token.erase(std::remove_if(token.begin(), token.end(),
                               [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }),
                token.end());
    std::size_t digits_from = (!token.empty() && (token[0] == '-' || token[0] == '+')) ? 1 : 0;
    const bool ok = token.size() > digits_from &&
                    std::all_of(token.begin() + static_cast<std::ptrdiff_t>(digits_from), token.end(),
                                [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
    if (!ok)
      throw ElementError("coordinate " + std::to_string(out.size()) + ": '" + token + "' is not an integer");
    if (token[0] == '+') token.erase(0, 1);
    out.emplace_back(token);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Element parse_element(std::string_view text, const GroupSpec& spec) {
  const Group group(spec);
  const auto coordinates = parse_integer_list(text);
  return group.from_user(coordinates);
}

// ---------------------------------------------------------------------------
// Element arithmetic

Element zero_element(const PrimarySchema& schema) {
  Element e;
  for (const auto& c : schema.primes) e.torsion.emplace_back(c.slot_count(), Integer(0));
  e.free.assign(schema.free_rank, Integer(0));
  return e;
}

void check_conforms(const Element& e, const PrimarySchema& schema) {
  if (e.torsion.size() != schema.primes.size() || e.free.size() != schema.free_rank)
    throw std::invalid_argument("element shape does not match the group");
  for (std::size_t c = 0; c < schema.primes.size(); ++c) {
    const auto exponents = schema.primes[c].slot_exponents();
    if (e.torsion[c].size() != exponents.size())
      throw std::invalid_argument("element shape does not match the group");
    for (std::size_t s = 0; s < exponents.size(); ++s) {
      const auto& x = e.torsion[c][s];
      if (x < 0 || x >= power(schema.primes[c].p, exponents[s]))
        throw std::invalid_argument("residue out of range");
    }
  }
}

ElementOrder element_order(const Element& e, const PrimarySchema& schema) {
  for (const auto& z : e.free)
    if (z != 0) return ElementOrder::infinite();
  Integer order = 1;
  for (std::size_t c = 0; c < schema.primes.size(); ++c) {
    const auto& comp = schema.primes[c];
    const auto exponents = comp.slot_exponents();
    unsigned top = 0;
    for (std::size_t s = 0; s < exponents.size(); ++s) {
      const auto& x = e.torsion[c][s];
      if (x != 0) top = std::max(top, exponents[s] - valuation(x, comp.p));
    }
    order *= power(comp.p, top);
  }
  return {order};
}

Element scale(const Element& e, const Integer& n, const PrimarySchema& schema) {
  Element out = e;
  for (std::size_t c = 0; c < schema.primes.size(); ++c) {
    const auto exponents = schema.primes[c].slot_exponents();
    for (std::size_t s = 0; s < exponents.size(); ++s)
      out.torsion[c][s] = reduce(n * e.torsion[c][s], power(schema.primes[c].p, exponents[s]));
  }
  for (auto& z : out.free) z *= n;
  return out;
}

// ---------------------------------------------------------------------------
// Group

Group::Group(GroupSpec spec) : spec_(std::move(spec)), schema_(to_primary(spec_)) {
  std::map<Integer, std::size_t> component_of;
  std::vector<std::map<unsigned, std::size_t>> next_slot(schema_.primes.size());
  for (std::size_t c = 0; c < schema_.primes.size(); ++c) {
    component_of[schema_.primes[c].p] = c;
    const auto& comp = schema_.primes[c];
    const auto offsets = comp.layer_offsets();
    for (std::size_t i = 0; i < comp.layers.size(); ++i) next_slot[c][comp.layers[i].exponent] = offsets[i];
  }
  std::size_t free_index = 0;
  for (const auto& factor : spec_.factors) {
    if (const auto* free = std::get_if<FreeFactor>(&factor)) {
      for (unsigned k = 0; k < free->multiplicity; ++k) coordinates_.push_back({0, {}, free_index++});
      continue;
    }
    const auto& finite = std::get<FiniteFactor>(factor);
    const auto primes = factorize(finite.modulus);
    for (unsigned k = 0; k < finite.multiplicity; ++k) {
      Coordinate coord{finite.modulus, {}, 0};
      for (const auto& [p, e] : primes) {
        const std::size_t c = component_of.at(p);
        coord.parts.push_back({c, next_slot[c][e]++});
      }
      coordinates_.push_back(std::move(coord));
    }
  }
}

Element Group::from_user(std::span<const Integer> coordinates) const {
  if (coordinates.size() != coordinates_.size())
    throw ElementError("expected " + std::to_string(coordinates_.size()) + " coordinates, got " +
                       std::to_string(coordinates.size()));
  Element e = zero_element(schema_);
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    const auto& coord = coordinates_[i];
    if (coord.modulus == 0) {
      e.free[coord.free_index] = coordinates[i];
      continue;
    }
    for (const auto& ref : coord.parts) {
      const auto& comp = schema_.primes[ref.component];
      const auto r = comp.slot_exponents()[ref.slot];
      e.torsion[ref.component][ref.slot] = reduce(coordinates[i], power(comp.p, r));
    }
  }
  return e;
}

std::vector<Integer> Group::to_user(const Element& e) const {
  std::vector<Integer> out;
  out.reserve(coordinates_.size());
  for (const auto& coord : coordinates_) {
    if (coord.modulus == 0) {
      out.push_back(e.free[coord.free_index]);
      continue;
    }
    std::vector<std::pair<Integer, Integer>> parts;
    for (const auto& ref : coord.parts) {
      const auto& comp = schema_.primes[ref.component];
      parts.emplace_back(e.torsion[ref.component][ref.slot], power(comp.p, comp.slot_exponents()[ref.slot]));
    }
    out.push_back(crt(parts));
  }
  return out;
}

std::string describe(const PrimarySchema& schema) {
  std::ostringstream out;
  bool first = true;
  for (const auto& c : schema.primes) {
    for (const auto& layer : c.layers) {
      out << (first ? "" : " x ") << 'Z' << power(c.p, layer.exponent);
      if (layer.multiplicity > 1) out << '^' << layer.multiplicity;
      first = false;
    }
  }
  if (schema.free_rank > 0) {
    out << (first ? "" : " x ") << 'Z';
    if (schema.free_rank > 1) out << '^' << schema.free_rank;
    first = false;
  }
  if (first) out << "Z1";
  return out.str();
}

}  // namespace abelcanon
