#include <random>
#include <set>

#include "doctest.h"
#include "quadforms/numbers.hpp"

using namespace qf;

TEST_CASE("valuation and unit part") {
  CHECK(valuation(Int(12), 2) == 2);
  CHECK(valuation(Int(12), 3) == 1);
  CHECK(valuation(Int(-8), 2) == 3);
  CHECK(valuation(Int(7), 5) == 0);
  CHECK(unit_part(Int(12), 2) == 3);
  CHECK(unit_part(Int(-12), 2) == -3);
  CHECK_THROWS_AS(valuation(Int(0), 2), PreconditionError);

  CHECK(valuation(Rat(3, 4), 2) == -2);
  CHECK(valuation(Rat(9, 5), 3) == 2);
  CHECK(valuation(Rat(-1, 27), 3) == -3);
}

TEST_CASE("modular helpers") {
  CHECK(mod_floor(Int(-1), 5) == 4);
  CHECK(mod_floor(Int(13), 5) == 3);
  CHECK(mod_floor(Int(0), 7) == 0);
  for (Int a : {Int(1), Int(2), Int(3), Int(4), Int(9)})
    CHECK(mod_floor(a * mod_inverse(a, 11), 11) == 1);
  CHECK(pow_mod(Int(2), Int(10), 1000) == 24);
  CHECK(pow_mod(Int(5), Int(0), 7) == 1);
  CHECK(rat_mod(Rat(1, 3), 8) == 3);  // 3 * 3 = 9 = 1 mod 8
  CHECK(rat_mod(Rat(7, 5), 9) == mod_floor(7 * mod_inverse(5, 9), 9));
}

TEST_CASE("legendre symbol matches the square table") {
  for (Int p : {Int(3), Int(5), Int(7), Int(11), Int(13)}) {
    std::set<Int> squares;
    for (Int x = 1; x < p; ++x) squares.insert(mod_floor(x * x, p));
    for (Int a = 0; a < p; ++a) {
      int expected = a == 0 ? 0 : (squares.count(a) ? 1 : -1);
      CHECK(legendre(a, p) == expected);
    }
    // multiplicativity on shifted inputs
    CHECK(legendre(p + 2, p) == legendre(Int(2), p));
  }
  CHECK(legendre_rat_unit(Rat(1, 2), 7) == legendre(mod_inverse(Int(2), 7), 7));
  CHECK(legendre_rat_unit(Rat(45, 49), 5) == 1);  // unit part 9/49, a square mod 5
  CHECK(legendre_rat_unit(Rat(10, 3), 5) == legendre(mod_floor(2 * mod_inverse(Int(3), 5), 5), 5));
}

TEST_CASE("kronecker symbol") {
  // agrees with legendre at odd primes
  for (Int p : {Int(3), Int(5), Int(13)})
    for (Int a = -6; a < 7; ++a) CHECK(kronecker(a, p) == legendre(mod_floor(a, p), p));
  // (a|2) by a mod 8
  CHECK(kronecker(Int(1), 2) == 1);
  CHECK(kronecker(Int(7), 2) == 1);
  CHECK(kronecker(Int(3), 2) == -1);
  CHECK(kronecker(Int(5), 2) == -1);
  CHECK(kronecker(Int(4), 2) == 0);
  // complete multiplicativity in the lower argument
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    Int a = Int(static_cast<int>(rng() % 41)) - 20;
    Int m = Int(static_cast<int>(rng() % 30)) + 1;
    Int n = Int(static_cast<int>(rng() % 30)) + 1;
    CHECK(kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n));
  }
  CHECK(kronecker(Int(-3), 2) == -1);  // -3 = 5 mod 8
}

TEST_CASE("least nonresidue") {
  CHECK(least_nonresidue(3) == 2);
  CHECK(least_nonresidue(5) == 2);
  CHECK(least_nonresidue(7) == 3);
  CHECK(least_nonresidue(11) == 2);
  CHECK(least_nonresidue(13) == 2);
  CHECK(least_nonresidue(23) == 5);
  for (Int p : {Int(7), Int(23), Int(71)}) CHECK(legendre(least_nonresidue(p), p) == -1);
}

TEST_CASE("square roots mod prime powers") {
  Int root;
  for (Int p : {Int(3), Int(5), Int(7)}) {
    for (int k = 1; k <= 4; ++k) {
      Int pk = pow(p, static_cast<unsigned>(k));
      for (Int a = 1; a < pk; ++a) {
        if (a % p == 0) continue;
        bool ok = sqrt_mod_prime_power(a, p, k, root);
        if (ok) CHECK(mod_floor(root * root, pk) == a);
        // units are squares iff legendre of the reduction is 1
        CHECK(ok == (legendre(mod_floor(a, p), p) == 1));
      }
    }
  }
  for (int k = 3; k <= 6; ++k) {
    Int pk = Int(1) << k;
    for (Int a = 1; a < pk; a += 2) {
      bool ok = sqrt_mod_prime_power(a, 2, k, root);
      if (ok) CHECK(mod_floor(root * root, pk) == a);
      CHECK(ok == (a % 8 == 1));  // odd squares are 1 mod 8 for k >= 3
    }
  }
}

TEST_CASE("primality and factorization") {
  auto ps = primes_up_to(100);
  CHECK(ps.size() == 25);
  CHECK(ps.front() == 2);
  CHECK(ps.back() == 97);
  for (long long p : ps) CHECK(is_probable_prime(Int(p)));
  CHECK_FALSE(is_probable_prime(Int(1)));
  CHECK_FALSE(is_probable_prime(Int(91)));
  CHECK_FALSE(is_probable_prime(Int(561)));  // Carmichael
  CHECK(is_probable_prime(Int("1000000007")));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    Int n = Int(static_cast<long long>(rng() % 1000000)) + 2;
    auto f = factorize(n);
    Int prod = 1;
    for (const auto& [p, e] : f) {
      CHECK(is_probable_prime(p));
      prod *= pow(p, static_cast<unsigned>(e));
    }
    CHECK(prod == n);
  }
}

TEST_CASE("squarefree part") {
  CHECK(squarefree_part(Rat(1)) == 1);
  CHECK(squarefree_part(Rat(4)) == 1);
  CHECK(squarefree_part(Rat(12)) == 3);
  CHECK(squarefree_part(Rat(-18)) == -2);
  CHECK(squarefree_part(Rat(9, 2)) == 2);     // 9/2 = 2 * (3/2)^2
  CHECK(squarefree_part(Rat(3, 4)) == 3);
  CHECK(squarefree_part(Rat(-1, 49)) == -1);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    Int a = Int(static_cast<int>(rng() % 400)) + 1;
    Int b = Int(static_cast<int>(rng() % 400)) + 1;
    Rat r(a, b);
    Int s = squarefree_part(r);
    Rat ratio = r / Rat(s);
    // ratio must be the square of a rational
    CHECK(is_perfect_square(num(ratio)));
    CHECK(is_perfect_square(den(ratio)));
  }
}

TEST_CASE("integer square roots") {
  CHECK(isqrt_floor(Int(0)) == 0);
  CHECK(isqrt_floor(Int(15)) == 3);
  CHECK(isqrt_floor(Int(16)) == 4);
  CHECK(isqrt_floor(Int("123456789123456789123456789")) ==
        Int("11111111066111"));
  CHECK(is_perfect_square(Int(0)));
  CHECK(is_perfect_square(Int(144)));
  CHECK_FALSE(is_perfect_square(Int(145)));
  CHECK_FALSE(is_perfect_square(Int(-4)));
}
