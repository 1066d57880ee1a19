#include "abelcanon/counting.hpp"

#include <functional>
#include <stdexcept>

#include "abelcanon/errors.hpp"

namespace abelcanon {

std::vector<unsigned> GapVector::exponents() const {
  std::vector<unsigned> out{r1};
  for (const auto n : gaps) out.push_back(out.back() + n);
  return out;
}

GapVector gaps_of_exponents(const std::vector<unsigned>& exponents) {
  if (exponents.empty()) throw std::invalid_argument("gap vector of an empty component");
  GapVector g{exponents.front(), {}};
  for (std::size_t i = 1; i < exponents.size(); ++i) {
    if (exponents[i] <= exponents[i - 1]) throw std::invalid_argument("exponents must strictly ascend");
    g.gaps.push_back(exponents[i] - exponents[i - 1]);
  }
  return g;
}

GapVector gaps(const PrimaryComponent& component) { return gaps_of_exponents(component.repeat_free_exponents()); }

Integer count_classes_rf(const GapVector& g) {
  Integer total = g.r1 + 1;
  for (const auto n : g.gaps) total *= n + 1;
  return total;
}

ClassCount count_classes(const PrimarySchema& schema) {
  if (!schema.is_finite()) throw InfiniteClasses();
  ClassCount out{1, {}};
  for (const auto& c : schema.primes) {
    auto g = gaps(c);
    Integer count = count_classes_rf(g);
    out.total *= count;
    out.per_prime.push_back({c.p, std::move(g), std::move(count)});
  }
  return out;
}

Integer count_last_nonzero(const GapVector& g, std::size_t j) {
  if (j < 2 || j > g.layer_count())
    throw std::out_of_range("last nonzero position " + std::to_string(j) + " outside 2.." +
                            std::to_string(g.layer_count()));
  Integer out = g.r1 + 1;
  for (std::size_t i = 0; i + 2 < j; ++i) out *= g.gaps[i] + 1;
  out *= g.gaps[j - 2];
  return out;
}

std::vector<Integer> nonzero_term_histogram(const GapVector& g) {
  const auto r = g.exponents();
  const std::size_t k = r.size();
  // chains[j][l][t]: representatives whose last nonzero entry is p^l at
  // position j, with t + 1 nonzero entries.
  std::vector<std::vector<std::vector<Integer>>> chains(k);
  std::vector<Integer> histogram(k + 1, Integer(0));
  histogram[0] = 1;
  for (std::size_t j = 0; j < k; ++j) {
    chains[j].assign(r[j], std::vector<Integer>(k, Integer(0)));
    for (unsigned l = 0; l < r[j]; ++l) chains[j][l][0] = 1;
    for (std::size_t i = 0; i < j; ++i) {
      const unsigned gap = r[j] - r[i];
      for (unsigned li = 0; li < r[i]; ++li)
        for (unsigned lj = li + 1; lj < li + gap; ++lj)
          for (std::size_t t = 0; t + 1 < k; ++t) chains[j][lj][t + 1] += chains[i][li][t];
    }
    for (unsigned l = 0; l < r[j]; ++l)
      for (std::size_t t = 0; t < k; ++t) histogram[t + 1] += chains[j][l][t];
  }
  return histogram;
}

std::vector<RepeatFreeVector> enumerate_repeat_free(const Integer& p, const std::vector<unsigned>& exponents) {
  const std::size_t k = exponents.size();
  std::vector<RepeatFreeVector> out;
  std::vector<std::size_t> support;
  std::vector<unsigned> chosen;

  const std::function<void(std::size_t)> exponents_for = [&](std::size_t m) {
    if (m == support.size()) {
      RepeatFreeVector v{p, exponents, std::vector<Term>(k)};
      for (std::size_t i = 0; i < support.size(); ++i) v.terms[support[i]] = chosen[i];
      out.push_back(std::move(v));
      return;
    }
    const std::size_t j = support[m];
    unsigned lo = 0, hi = exponents[j];
    if (m > 0) {
      // l_i < l_j < l_i + (r_j - r_i)
      lo = chosen[m - 1] + 1;
      hi = chosen[m - 1] + (exponents[j] - exponents[support[m - 1]]);
    }
    for (unsigned l = lo; l < hi; ++l) {
      chosen.push_back(l);
      exponents_for(m + 1);
      chosen.pop_back();
    }
  };

  const std::function<void(std::size_t)> supports_from = [&](std::size_t next) {
    exponents_for(0);
    for (std::size_t j = next; j < k; ++j) {
      support.push_back(j);
      supports_from(j + 1);
      support.pop_back();
    }
  };
  supports_from(0);
  return out;
}

std::vector<CanonicalElement> enumerate_representatives(const PrimarySchema& schema) {
  if (!schema.is_finite()) throw InfiniteClasses();
  std::vector<std::vector<RepeatFreeVector>> per_prime;
  for (const auto& c : schema.primes) per_prime.push_back(enumerate_repeat_free(c.p, c.repeat_free_exponents()));

  std::vector<CanonicalElement> out{CanonicalElement{{}, 0, true}};
  for (const auto& options : per_prime) {
    std::vector<CanonicalElement> next;
    next.reserve(out.size() * options.size());
    for (const auto& prefix : out) {
      for (const auto& v : options) {
        CanonicalElement e = prefix;
        e.components.push_back(v);
        next.push_back(std::move(e));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace abelcanon
