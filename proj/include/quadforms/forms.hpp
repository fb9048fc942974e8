#pragma once

#include <map>
#include <utility>
#include <vector>

#include "quadforms/matrix.hpp"
#include "quadforms/types.hpp"

namespace qf {

/// Invertible-over-Q integer basis change; |det| = 1 when it witnesses a
/// lattice isometry.
using BasisChange = IMat;

/// Integer-valued quadratic form Q(x) = x^T H x / 2 given by its Hessian
/// matrix H = 2B: symmetric, integer, even diagonal.
class QuadraticForm {
 public:
  explicit QuadraticForm(IMat hessian);

  /// Build from polynomial coefficients c_ij of Q = sum_{i<=j} c_ij x_i x_j
  /// (keys are 0-based index pairs with i <= j).
  static QuadraticForm from_upper_coefficients(int n, const std::map<std::pair<int, int>, Int>& c);

  int n() const { return n_; }
  const IMat& hessian() const { return h_; }
  RMat gram() const;

  /// c_ii = H_ii / 2 on the diagonal, c_ij = H_ij for i < j.
  Int coeff(int i, int j) const;

  Int evaluate(const std::vector<Int>& x) const;
  Rat evaluate(const std::vector<Rat>& x) const;
  /// H(x, y) = x^T H y; polarization: Q(x + y) = Q(x) + Q(y) + H(x, y).
  Int hessian_bilinear(const std::vector<Int>& x, const std::vector<Int>& y) const;
  Rat hessian_bilinear(const std::vector<Rat>& x, const std::vector<Rat>& y) const;

  /// Pullback along an integer matrix: Hessian M^T H M.  Equivalence when
  /// |det M| = 1; a finite-index sublattice restatement otherwise.
  QuadraticForm transform(const IMat& m) const;
  QuadraticForm direct_sum(const QuadraticForm& o) const;
  QuadraticForm scale(const Int& c) const;

  Int det_hessian() const;
  Rat det_gram() const;
  bool is_nondegenerate() const { return det_hessian() != 0; }

  /// Smallest N > 0 with N * H^{-1} integral and even-diagonal.
  Int level() const;

  /// (positive, negative) inertia counts; requires a nondegenerate form.
  std::pair<int, int> signature() const;
  bool is_positive_definite() const;

  bool operator==(const QuadraticForm& o) const { return h_ == o.h_; }

 private:
  int n_;
  IMat h_;
  mutable Int det_cache_;
  mutable bool det_known_ = false;
};

/// Symmetric Gaussian reduction of a symmetric rational matrix b:
/// returns diagonal entries d and a nonsingular rational m with m^T b m = diag(d).
std::pair<std::vector<Rat>, RMat> symmetric_diagonalize(const RMat& b);

}  // namespace qf
