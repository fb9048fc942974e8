#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "quadforms/types.hpp"

namespace qf {

/// p-adic valuation of a nonzero integer; throws on zero.
long long valuation(Int a, const Int& p);
/// Valuation of a nonzero rational (may be negative).
long long valuation(const Rat& a, const Int& p);

/// a / p^v(a), keeping sign.
Int unit_part(Int a, const Int& p);

Int mod_floor(const Int& a, const Int& m);      // representative in [0, m)
Int mod_inverse(const Int& a, const Int& m);    // gcd(a, m) = 1 required
Int pow_mod(Int base, Int exp, const Int& m);

/// Image of a rational with p-unit denominator in Z/m, m a power of p.
Int rat_mod(const Rat& a, const Int& m);

/// Legendre symbol (a|p) for odd prime p: 0, 1 or -1.
int legendre(const Int& a, const Int& p);
/// Legendre symbol of the unit part of a nonzero rational at odd p.
int legendre_rat_unit(const Rat& a, const Int& p);
/// Kronecker symbol (a|n), n any integer.
int kronecker(Int a, Int n);

/// Smallest positive quadratic nonresidue mod odd prime p.
Int least_nonresidue(const Int& p);

/// Square root of a mod p^k when it exists (p odd prime, or p = 2).
/// Returns false if a is not a square in (Z/p^k)^*.  a must be a unit mod p.
bool sqrt_mod_prime_power(const Int& a, const Int& p, int k, Int& root);

bool is_probable_prime(const Int& n);
std::vector<long long> primes_up_to(long long n);

/// Prime factorization (trial division + Brent rho); key = prime, value = exponent.
std::map<Int, int> factorize(Int n);

/// Squarefree part of a nonzero rational: the unique squarefree integer s with
/// r = s * (rational square).
Int squarefree_part(const Rat& r);

Int isqrt_floor(const Int& n);
bool is_perfect_square(const Int& n);

}  // namespace qf
