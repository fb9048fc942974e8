#pragma once

#include "quadforms/forms.hpp"

namespace qf {

/// Number of x in Z^n with Q(x) = m (positive definite Q; full +-/0 count).
Int count_representations(const QuadraticForm& q, const Int& m, Budget* budget = nullptr);

/// All x with Q(x) = m (both signs included).
std::vector<std::vector<Int>> representation_vectors(const QuadraticForm& q, const Int& m,
                                                     Budget* budget = nullptr);

/// r_Q(0..max_m) by a single sweep over the ball Q(x) <= max_m.  The sweep is
/// exact: a scaled integer completed-squares form drives both the coordinate
/// ranges and the tallied values.
std::vector<Int> theta_coefficients(const QuadraticForm& q, long long max_m, int threads = 1,
                                    Budget* budget = nullptr);

/// Weight, level and character data of the theta series.
struct ModularMetadata {
  Rat weight;               // n / 2
  Int level;                // level of the form
  Int character_disc;       // squarefree representative of (-1)^floor(n/2) det
  bool half_integral;       // odd n: weight is half-integral, character is metadata only
};
ModularMetadata modular_metadata(const QuadraticForm& q);

/// Quadratic character chi_D(d) attached to squarefree D via the Kronecker
/// symbol of the associated fundamental discriminant.
int character_value(const Int& squarefree_disc, const Int& d);

}  // namespace qf
