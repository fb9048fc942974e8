#pragma once

#include <functional>

#include "quadforms/forms.hpp"

namespace qf {

struct GenusCatalog;  // genus.hpp

/// Raised when the normalized solution counts refuse to stabilize within the
/// escalation window (never silently returned as a value).
struct StabilizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact value c * pi^(pi_twice/2) * sqrt(sqrt_disc), sqrt_disc squarefree > 0.
/// Finite-place densities are plain rationals (pi_twice = 0, sqrt_disc = 1).
struct SymbolicDensity {
  Rat coeff;
  int pi_twice = 0;
  Int sqrt_disc = 1;

  bool is_rational() const { return pi_twice == 0 && sqrt_disc == 1; }
  double to_double() const;
  SymbolicDensity operator*(const SymbolicDensity& o) const;
  bool operator==(const SymbolicDensity& o) const;
};

/// #{x mod p^i : Q(x) = m mod p^i} by exhaustive scan (test oracle; budgeted).
Int count_solutions_mod_p_power(const QuadraticForm& q, const Int& m, const Int& p, int i,
                                Budget* budget = nullptr);

/// Same count through the Z_p splitting: per-constituent value distributions
/// convolved mod p^i.  Cross-validated against the exhaustive oracle in tests.
Int count_solutions_mod_p_power_fast(const QuadraticForm& q, const Int& m, const Int& p, int i);

/// beta_p(m) = lim_i N(p^i) / p^{(n-1)i}, via the checked stabilization
/// schedule starting at i0 = 1 + v_p(4 m det H).  m = 0 is rejected.
Rat local_density_p(const QuadraticForm& q, const Int& m, const Int& p);

/// beta_oo(m) = pi^{n/2} m^{n/2-1} / (Gamma(n/2) sqrt(det Gram)) for positive
/// definite Q and m > 0 (the shell-volume derivative d/dm vol{Q <= m}).
SymbolicDensity local_density_infty(const QuadraticForm& q, const Int& m);

/// r(m) = 8 * sum of divisors of m not divisible by 4 (m >= 1).
Int jacobi_r4(const Int& m);

/// Average of r_{Q'}(m) over the catalog weighted by 1/|Aut(Q')|.
Rat eisenstein_genus_avg(const GenusCatalog& genus, const Int& m);
std::vector<Rat> eisenstein_genus_avg_prefix(const GenusCatalog& genus, long long max_m);

/// Product over the places where the factor is not 1, times a convergent tail.
/// The tail evaluator receives the finite primes already covered and returns
/// the remaining Euler factor product as a symbolic value.
using TailEvaluator = std::function<SymbolicDensity(const QuadraticForm&, const Int& m,
                                                    const std::vector<Int>& covered_primes)>;

/// Tail prod_{p odd, p not dividing m} (1 - p^-2) for the sum-of-four-squares
/// form, written with 1/zeta(2) so the pi powers cancel exactly.
SymbolicDensity zeta_tail_four_squares(const QuadraticForm& q, const Int& m,
                                       const std::vector<Int>& covered_primes);

/// Eisenstein coefficient as a product of local densities.  Without a tail
/// evaluator only the four-squares form with squarefree m is accepted.
Rat eisenstein_coefficient_product(const QuadraticForm& q, const Int& m,
                                   const TailEvaluator& tail = nullptr);

/// Cusp-part coefficients r_Q(m) - a_E(m) for 0 <= m <= max_m.
std::vector<Rat> cusp_coefficients(const QuadraticForm& q, const GenusCatalog& genus,
                                   long long max_m);

}  // namespace qf
