#include "quadforms/numbers.hpp"

#include <boost/integer/common_factor_rt.hpp>

namespace qf {

long long valuation(Int a, const Int& p) {
  if (a == 0) throw PreconditionError("valuation of zero");
  long long v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

long long valuation(const Rat& a, const Int& p) {
  if (a == 0) throw PreconditionError("valuation of zero");
  return valuation(num(a), p) - valuation(den(a), p);
}

Int unit_part(Int a, const Int& p) {
  if (a == 0) throw PreconditionError("unit part of zero");
  while (a % p == 0) a /= p;
  return a;
}

Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += boost::multiprecision::abs(m);
  return r;
}

Int mod_inverse(const Int& a, const Int& m) {
  Int old_r = mod_floor(a, m), r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int t = old_r - q * r; old_r = r; r = t;
    t = old_s - q * s; old_s = s; s = t;
  }
  if (old_r != 1) throw PreconditionError("mod_inverse: not invertible");
  return mod_floor(old_s, m);
}

Int rat_mod(const Rat& a, const Int& m) {
  return mod_floor(num(a) * mod_inverse(den(a), m), m);
}

Int pow_mod(Int base, Int exp, const Int& m) {
  base = mod_floor(base, m);
  Int acc = 1;
  while (exp > 0) {
    if ((exp & 1) != 0) acc = acc * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return acc;
}

int legendre(const Int& a, const Int& p) {
  Int r = mod_floor(a, p);
  if (r == 0) return 0;
  Int e = pow_mod(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

int legendre_rat_unit(const Rat& a, const Int& p) {
  if (a == 0) throw PreconditionError("legendre of zero");
  return legendre(unit_part(num(a), p), p) * legendre(unit_part(den(a), p), p);
}

int kronecker(Int a, Int n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int sign = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) sign = -sign;
  }
  int result = 1;
  long long v2 = 0;
  while (n % 2 == 0) { n /= 2; ++v2; }
  if (v2 > 0) {
    if (a % 2 == 0) return 0;
    // (a|2) = +1 iff a = +-1 mod 8
    Int am8 = mod_floor(a, 8);
    if ((v2 & 1) && (am8 == 3 || am8 == 5)) result = -result;
  }
  // Jacobi part on odd n with quadratic reciprocity.
  a = mod_floor(a, n);
  while (a != 0) {
    long long v = 0;
    while (a % 2 == 0) { a /= 2; ++v; }
    Int nm8 = mod_floor(n, 8);
    if ((v & 1) && (nm8 == 3 || nm8 == 5)) result = -result;
    if (mod_floor(a, 4) == 3 && nm8 % 4 == 3) result = -result;
    std::swap(a, n);
    a = mod_floor(a, n);
  }
  if (n != 1) return 0;  // gcd > 1
  return sign * result;
}

Int least_nonresidue(const Int& p) {
  for (Int r = 2;; ++r)
    if (legendre(r, p) == -1) return r;
}

namespace {

// Tonelli-Shanks square root mod odd prime p.
bool sqrt_mod_odd_prime(const Int& a, const Int& p, Int& root) {
  Int r = mod_floor(a, p);
  if (r == 0) { root = 0; return true; }
  if (legendre(r, p) != 1) return false;
  if (mod_floor(p, 4) == 3) {
    root = pow_mod(r, (p + 1) / 4, p);
    return true;
  }
  Int q = p - 1;
  long long s = 0;
  while (q % 2 == 0) { q /= 2; ++s; }
  Int z = least_nonresidue(p);
  Int m = s, c = pow_mod(z, q, p), t = pow_mod(r, q, p), x = pow_mod(r, (q + 1) / 2, p);
  while (t != 1) {
    Int tt = t;
    long long i = 0;
    while (tt != 1) { tt = tt * tt % p; ++i; }
    Int b = c;
    for (Int j = 0; j < m - i - 1; ++j) b = b * b % p;
    x = x * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  root = x;
  return true;
}

}  // namespace

bool sqrt_mod_prime_power(const Int& a, const Int& p, int k, Int& root) {
  Int pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  Int am = mod_floor(a, pk);
  if (am % p == 0) throw PreconditionError("sqrt_mod_prime_power: not a unit");
  if (p == 2) {
    if (k == 1) { root = 1; return true; }
    if (k == 2) {
      if (am % 4 != 1) return false;
      root = 1;
      return true;
    }
    if (mod_floor(am, 8) != 1) return false;
    // lift: x -> x + 2^(j-1) fixes bit j of x^2
    Int x = 1;
    for (int j = 3; j < k; ++j) {
      Int mod_next = Int(1) << (j + 1);
      if (mod_floor(x * x - am, mod_next) != 0) x += Int(1) << (j - 1);
    }
    root = mod_floor(x, pk);
    return true;
  }
  Int x;
  if (!sqrt_mod_odd_prime(am, p, x)) return false;
  // Hensel: x -> x - (x^2 - a) / (2x)
  Int mod_cur = p;
  while (mod_cur < pk) {
    mod_cur = mod_cur * mod_cur > pk ? pk : mod_cur * mod_cur;
    Int inv = mod_inverse(2 * x, mod_cur);
    x = mod_floor(x - (x * x - am) * inv, mod_cur);
  }
  root = mod_floor(x, pk);
  return true;
}

bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  for (int q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  Int d = n - 1;
  long long s = 0;
  while (d % 2 == 0) { d /= 2; ++s; }
  for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    Int x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (long long i = 0; i + 1 < s; ++i) {
      x = x * x % n;
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<long long> primes_up_to(long long n) {
  std::vector<bool> sieve(static_cast<size_t>(n + 1), true);
  std::vector<long long> out;
  for (long long i = 2; i <= n; ++i) {
    if (!sieve[static_cast<size_t>(i)]) continue;
    out.push_back(i);
    for (long long j = i * i; j <= n; j += i) sieve[static_cast<size_t>(j)] = false;
  }
  return out;
}

namespace {

Int pollard_brent(const Int& n) {
  if (n % 2 == 0) return 2;
  for (Int c = 1;; ++c) {  // retry with a different polynomial on failure
    Int x = 2, y = 2, d = 1;
    long long power = 1, lam = 0;
    while (d == 1) {
      if (lam == power) { x = y; power *= 2; lam = 0; }
      y = mod_floor(y * y + c, n);
      ++lam;
      d = boost::integer::gcd(boost::multiprecision::abs(x - y), n);
    }
    if (d != n) return d;
  }
}

void factor_rec(Int n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) { ++out[n]; return; }
  Int d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::map<Int, int> factorize(Int n) {
  if (n == 0) throw PreconditionError("factorize(0)");
  std::map<Int, int> out;
  if (n < 0) n = -n;
  for (long long q : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL}) {
    while (n % q == 0) { n /= q; ++out[Int(q)]; }
  }
  for (long long q = 17; q <= 100000 && Int(q) * q <= n; q += 2) {
    while (n % q == 0) { n /= q; ++out[Int(q)]; }
  }
  if (n > 1) factor_rec(n, out);
  return out;
}

Int squarefree_part(const Rat& r) {
  if (r == 0) throw PreconditionError("squarefree part of zero");
  Int v = num(r) * den(r);  // same squareclass as r
  int sign = v < 0 ? -1 : 1;
  Int s = 1;
  for (const auto& [p, e] : factorize(v))
    if (e & 1) s *= p;
  return sign * s;
}

Int isqrt_floor(const Int& n) {
  if (n < 0) throw PreconditionError("isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const Int& n) {
  if (n < 0) return false;
  Int r = isqrt_floor(n);
  return r * r == n;
}

}  // namespace qf
