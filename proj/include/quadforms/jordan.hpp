#pragma once

#include <tuple>

#include "quadforms/forms.hpp"

namespace qf {

/// One scale constituent p^exponent * block of a Z_p splitting.
/// p odd: block is diagonal with entries u x^2, u in {1, least nonresidue}.
/// p = 2: block is a direct sum of u x^2 (u in {1,3,5,7}), xy, x^2+xy+y^2.
struct JordanBlock {
  long long exponent;
  QuadraticForm block;
};

struct JordanDecomposition {
  Int p;
  int n;
  std::vector<JordanBlock> blocks;  // strictly increasing exponents

  /// Congruence witness: witness^T H witness = reassembled Hessian mod p^precision,
  /// det(witness) a unit mod p.
  IMat witness;
  int precision;
};

/// Split q over Z_p by repeatedly extracting a minimal-scale rank-1 (or, at
/// p = 2, rank-2) sublattice.  All elimination is exact over rationals with
/// p-unit denominators; `precision` only sets the modulus of the returned
/// congruence witness (0 picks a default based on v_p(det)).
JordanDecomposition jordan_decompose(const QuadraticForm& q, const Int& p, int precision = 0);

/// Direct sum of the scaled blocks, Z_p-equivalent to the decomposed form.
QuadraticForm jordan_reassemble(const JordanDecomposition& d);

/// Comparable per-exponent invariants (exponent, rank, determinant data, odd
/// constituent count).  For p odd this is a complete Z_p invariant.  For p = 2
/// it is sound but partial: the determinant entry is filled only when every
/// constituent is even (xy or x^2+xy+y^2), since per-scale unit determinants
/// are otherwise not basis-free.
std::vector<std::tuple<long long, int, Int, int>> jordan_profile(const QuadraticForm& q, const Int& p);

}  // namespace qf
