#include "abelcanon/integer.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace abelcanon {

unsigned valuation(const Integer& x, const Integer& p) {
  if (x == 0) throw std::domain_error("valuation of zero");
  Integer rest;
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

Integer power(const Integer& base, unsigned exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Integer reduce(const Integer& x, const Integer& m) {
  Integer out;
  mpz_mod(out.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return out;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  if (m == 1) return 0;
  Integer out;
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("no inverse of " + a.get_str() + " modulo " + m.get_str());
  return out;
}

bool is_probable_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

namespace {

Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    const auto step = [&](const Integer& v) { return reduce(v * v + c, n); };
    unsigned long r = 1;
    constexpr unsigned long kBatch = 128;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      for (unsigned long k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        for (unsigned long i = 0; i < std::min(kBatch, r - k); ++i) {
          y = step(y);
          Integer diff = x - y;
          q = reduce(q * abs(diff), n);
        }
        g = gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Integer root;
  for (unsigned long k = 2; mpz_sizeinbase(n.get_mpz_t(), 2) >= k; ++k) {
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
      std::map<Integer, unsigned> inner;
      split(root, inner);
      for (const auto& [p, e] : inner) out[p] += e * static_cast<unsigned>(k);
      return;
    }
  }
  const Integer d = pollard_brent(n);
  split(d, out);
  split(Integer(n / d), out);
}

}  // namespace

std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n) {
  if (n < 1) throw std::domain_error("factorize needs a positive integer");
  std::map<Integer, unsigned> found;
  Integer rest = n;
  for (unsigned long p = 2; p < 10000 && rest > 1; p += (p == 2 ? 1 : 2)) {
    const Integer prime = p;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      Integer q;
      found[prime] = static_cast<unsigned>(mpz_remove(q.get_mpz_t(), rest.get_mpz_t(), prime.get_mpz_t()));
      rest = q;
    }
  }
  split(rest, found);
  return {found.begin(), found.end()};
}

Integer crt(const std::vector<std::pair<Integer, Integer>>& residues_and_moduli) {
  Integer value = 0, modulus = 1;
  for (const auto& [r, m] : residues_and_moduli) {
    // value + modulus * t ≡ r (mod m)
    const Integer t = reduce((r - value) * inverse_mod(modulus, m), m);
    value += modulus * t;
    modulus *= m;
  }
  return reduce(value, modulus);
}

std::string to_string(const Integer& x) { return x.get_str(); }

}  // namespace abelcanon
