#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace abelcanon {

using Integer = mpz_class;

/// Exponent of `p` in `x`; `x` must be nonzero.
unsigned valuation(const Integer& x, const Integer& p);

Integer power(const Integer& base, unsigned exponent);

/// Least nonnegative residue of `x` modulo `m` (m > 0).
Integer reduce(const Integer& x, const Integer& m);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Inverse of `a` modulo `m`; throws std::domain_error when none exists.
Integer inverse_mod(const Integer& a, const Integer& m);

bool is_probable_prime(const Integer& n);

/// Prime factorization of n ≥ 1, primes ascending. Trial division for small
/// factors, Pollard-Brent for the rest.
std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n);

/// Combine residues r_i mod m_i (pairwise coprime moduli) into one residue
/// modulo the product.
Integer crt(const std::vector<std::pair<Integer, Integer>>& residues_and_moduli);

std::string to_string(const Integer& x);

inline bool fits_int64(const Integer& x) { return x.fits_slong_p() != 0; }

}  // namespace abelcanon
