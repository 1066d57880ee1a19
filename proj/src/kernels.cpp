#include "abelcanon/kernels.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace abelcanon::kernels {

namespace {

std::int64_t ipow(std::int64_t base, unsigned e) {
  std::int64_t out = 1;
  while (e-- > 0) out *= base;
  return out;
}

// Enough chunks for load balance; chunk boundaries fix the merge order.
constexpr std::uint64_t kChunks = 256;

}  // namespace

EndomorphismSpace::EndomorphismSpace(const TorsionShape& shape) : shape_(shape) {
  const std::size_t n = shape.slots();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const unsigned ri = shape.exponents[i], rj = shape.exponents[j];
      radix_.push_back(ipow(shape.p, std::min(ri, rj)));
      step_.push_back(ipow(shape.p, ri > rj ? ri - rj : 0));
      size_ *= static_cast<std::uint64_t>(radix_.back());
    }
  }
}

void EndomorphismSpace::decode(std::uint64_t index, HomMatrix& out) const {
  out.p = shape_.p;
  out.exponents = shape_.exponents;
  out.entries.resize(radix_.size());
  for (std::size_t e = radix_.size(); e-- > 0;) {
    const auto r = static_cast<std::uint64_t>(radix_[e]);
    out.entries[e] = static_cast<std::int64_t>(index % r) * step_[e];
    index /= r;
  }
}

// ---------------------------------------------------------------------------

std::vector<HomMatrix> automorphisms_serial(const TorsionShape& shape) {
  const EndomorphismSpace space(shape);
  std::vector<HomMatrix> out;
  HomMatrix m;
  for (std::uint64_t index = 0; index < space.size(); ++index) {
    space.decode(index, m);
    if (oracle::is_automorphism(m)) out.push_back(m);
  }
  return out;
}

std::vector<HomMatrix> automorphisms_parallel(const TorsionShape& shape) {
  const EndomorphismSpace space(shape);
  const std::uint64_t chunks = std::min<std::uint64_t>(kChunks, space.size());
  std::vector<std::vector<HomMatrix>> found(chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    const std::uint64_t begin = space.size() * static_cast<std::uint64_t>(c) / chunks;
    const std::uint64_t end = space.size() * static_cast<std::uint64_t>(c + 1) / chunks;
    HomMatrix m;
    for (std::uint64_t index = begin; index < end; ++index) {
      space.decode(index, m);
      if (oracle::is_automorphism(m)) found[static_cast<std::size_t>(c)].push_back(m);
    }
  }
  std::vector<HomMatrix> out;
  for (auto& part : found) std::move(part.begin(), part.end(), std::back_inserter(out));
  return out;
}

bool is_bijective(const HomMatrix& m, const TorsionShape& shape, std::vector<std::uint8_t>& scratch) {
  const std::size_t n = shape.slots();
  scratch.assign(static_cast<std::size_t>(shape.order), 0);
  std::vector<std::int64_t> x(n, 0), image(n, 0);
  // Odometer over the group, last slot fastest. Wrapping slot s adds
  // p^{r_s} times column s, which vanishes for a well-defined map, so the
  // image only ever gains one column per step.
  for (std::int64_t count = 0; count < shape.order; ++count) {
    const auto code = static_cast<std::size_t>(shape.encode(image));
    if (scratch[code] != 0) return false;
    scratch[code] = 1;
    std::size_t s = n;
    while (s-- > 0) {
      for (std::size_t i = 0; i < n; ++i) image[i] = (image[i] + m.at(i, s)) % shape.moduli[i];
      if (++x[s] < shape.moduli[s]) break;
      x[s] = 0;
    }
  }
  return true;
}

namespace {

void tally_range(const EndomorphismSpace& space, const TorsionShape& shape, std::uint64_t begin, std::uint64_t end,
                 ModPTally& tally, std::uint64_t& witness_index) {
  HomMatrix m;
  std::vector<std::uint8_t> scratch;
  for (std::uint64_t index = begin; index < end; ++index) {
    space.decode(index, m);
    const bool mod_p = oracle::is_automorphism(m);
    const bool bijective = is_bijective(m, shape, scratch);
    ++tally.endomorphisms;
    tally.passes_mod_p += mod_p ? 1 : 0;
    tally.bijective += bijective ? 1 : 0;
    if (mod_p != bijective) {
      if (tally.disagreements == 0) {
        tally.witness = m;
        witness_index = index;
      }
      ++tally.disagreements;
    }
  }
}

}  // namespace

ModPTally modp_sweep_serial(const TorsionShape& shape) {
  const EndomorphismSpace space(shape);
  ModPTally tally;
  std::uint64_t witness_index = 0;
  tally_range(space, shape, 0, space.size(), tally, witness_index);
  return tally;
}

ModPTally modp_sweep_parallel(const TorsionShape& shape) {
  const EndomorphismSpace space(shape);
  const std::uint64_t chunks = std::min<std::uint64_t>(kChunks, space.size());
  std::vector<ModPTally> partial(chunks);
  std::vector<std::uint64_t> witness_index(chunks, 0);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    const auto i = static_cast<std::size_t>(c);
    tally_range(space, shape, space.size() * i / chunks, space.size() * (i + 1) / chunks, partial[i],
                witness_index[i]);
  }
  ModPTally total;
  for (auto& part : partial) {
    total.endomorphisms += part.endomorphisms;
    total.passes_mod_p += part.passes_mod_p;
    total.bijective += part.bijective;
    if (!total.witness && part.witness) total.witness = std::move(part.witness);
    total.disagreements += part.disagreements;
  }
  return total;
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t find(std::vector<std::int64_t>& parent, std::int64_t x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    auto& up = parent[static_cast<std::size_t>(x)];
    up = parent[static_cast<std::size_t>(up)];
    x = up;
  }
  return x;
}

void unite(std::vector<std::int64_t>& parent, std::int64_t a, std::int64_t b) {
  a = find(parent, a);
  b = find(parent, b);
  if (a == b) return;
  // The least code of a class is always its root.
  if (a < b) std::swap(a, b);
  parent[static_cast<std::size_t>(a)] = b;
}

std::vector<std::int64_t> roots_of(std::vector<std::int64_t>& parent) {
  std::vector<std::int64_t> out(parent.size());
  for (std::size_t x = 0; x < parent.size(); ++x) out[x] = find(parent, static_cast<std::int64_t>(x));
  return out;
}

std::int64_t image_code(const HomMatrix& m, const TorsionShape& shape, std::int64_t code,
                        std::vector<std::int64_t>& x) {
  shape.decode(code, x);
  return shape.encode(oracle::apply(m, x));
}

}  // namespace

std::vector<std::int64_t> orbit_roots_serial(const TorsionShape& shape, std::span<const HomMatrix> maps) {
  std::vector<std::int64_t> parent(static_cast<std::size_t>(shape.order));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::int64_t> x(shape.slots());
  for (const auto& m : maps)
    for (std::int64_t code = 0; code < shape.order; ++code) unite(parent, code, image_code(m, shape, code, x));
  return roots_of(parent);
}

std::vector<std::int64_t> orbit_roots_parallel(const TorsionShape& shape, std::span<const HomMatrix> maps) {
  const auto order = static_cast<std::size_t>(shape.order);
  std::vector<std::int64_t> parent(order);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::int64_t> images(order);
  for (const auto& m : maps) {
#pragma omp parallel
    {
      std::vector<std::int64_t> x(shape.slots());
#pragma omp for schedule(static)
      for (std::int64_t code = 0; code < shape.order; ++code)
        images[static_cast<std::size_t>(code)] = image_code(m, shape, code, x);
    }
    for (std::size_t code = 0; code < order; ++code) unite(parent, static_cast<std::int64_t>(code), images[code]);
  }
  return roots_of(parent);
}

// ---------------------------------------------------------------------------

std::vector<CanonicalElement> canonicalize_all_serial(const oracle::OrbitPartition& partition,
                                                      const PrimarySchema& schema) {
  std::vector<CanonicalElement> out;
  out.reserve(partition.orbit_of.size());
  for (std::int64_t code = 0; code < partition.group_order(); ++code)
    out.push_back(canonicalize(partition.element(code), schema));
  return out;
}

std::vector<CanonicalElement> canonicalize_all_parallel(const oracle::OrbitPartition& partition,
                                                        const PrimarySchema& schema) {
  std::vector<CanonicalElement> out(partition.orbit_of.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t code = 0; code < partition.group_order(); ++code)
    out[static_cast<std::size_t>(code)] = canonicalize(partition.element(code), schema);
  return out;
}

}  // namespace abelcanon::kernels
