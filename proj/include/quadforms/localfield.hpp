#pragma once

#include "quadforms/forms.hpp"

namespace qf {

/// A place of Q: a finite prime or the real place.
struct Place {
  bool infinite = false;
  Int p = 0;

  static Place infinity() { return {true, 0}; }
  static Place prime(Int q);
  bool operator==(const Place& o) const { return infinite == o.infinite && p == o.p; }
};

/// Square class in Q_v^* / (Q_v^*)^2.
/// p odd: 4 classes (valuation parity, unit in {1, r}) with r the least nonresidue;
/// p = 2: 8 classes (valuation parity, unit mod 8 in {1,3,5,7});
/// real place: 2 classes (sign).
class SquareClassQp {
 public:
  SquareClassQp(Place v, int val_parity, Int unit);
  static SquareClassQp from_rational(const Rat& a, const Place& v);

  const Place& place() const { return place_; }
  int val_parity() const { return val_parity_; }
  const Int& unit() const { return unit_; }
  bool is_trivial() const { return val_parity_ == 0 && unit_ == 1; }

  SquareClassQp operator*(const SquareClassQp& o) const;
  bool operator==(const SquareClassQp& o) const;

  /// All classes at a place, in a fixed order (4, 8 or 2 of them).
  static std::vector<SquareClassQp> all(const Place& v);

 private:
  Place place_;
  int val_parity_;
  Int unit_;
};

/// Hilbert symbol (a, b)_v in {+1, -1}; a, b nonzero rationals.
int hilbert_symbol(const Rat& a, const Rat& b, const Place& v);

/// Rational diagonalization of the Gram matrix: entries a_i and witness m with
/// m^T B m = diag(a); requires a nondegenerate form.
std::pair<std::vector<Rat>, RMat> diagonalize_over_Q(const QuadraticForm& q);

/// Hasse invariant prod_{i<j} (a_i, a_j)_v over a rational diagonalization;
/// independent of the diagonalization chosen.
int hasse_invariant(const QuadraticForm& q, const Place& v);

/// Complete Q_v invariants (dimension, determinant class, Hasse symbol).
struct QpInvariants {
  int n;
  SquareClassQp det_class;
  int hasse;
};
QpInvariants qp_invariants(const QuadraticForm& q, const Place& v);

bool isometric_over_Qp(const QuadraticForm& a, const QuadraticForm& b, const Place& v);
bool isometric_over_R(const QuadraticForm& a, const QuadraticForm& b);
/// Hasse-Minkowski: equivalence over Q decided at the real place, 2, and the
/// primes dividing either Hessian determinant.
bool isometric_over_Q(const QuadraticForm& a, const QuadraticForm& b);

/// Does Q represent 0 nontrivially over Q_v?
bool is_isotropic_over_Qp(const QuadraticForm& q, const Place& v);

}  // namespace qf
