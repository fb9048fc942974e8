#pragma once

#include <cstdint>
#include <map>

#include "quadforms/forms.hpp"

namespace qf {

/// Element of the Clifford algebra C(Q), sparse over basis blades e_S.
/// Blade masks index subsets of {0..n-1}; generators satisfy
/// e_i e_i = Q(e_i) and e_i e_j + e_j e_i = H(i, j).
struct CliffordElement {
  std::map<uint32_t, Rat> coeff;  // zero entries are absent

  static CliffordElement scalar(const Rat& c);
  static CliffordElement from_vector(const std::vector<Rat>& x);
  static CliffordElement basis_blade(uint32_t mask);

  CliffordElement operator+(const CliffordElement& o) const;
  CliffordElement operator-(const CliffordElement& o) const;
  CliffordElement operator*(const Rat& c) const;
  bool operator==(const CliffordElement& o) const;

  bool is_zero() const { return coeff.empty(); }
  Rat scalar_part() const;
  /// degree-1 coefficients; requires every blade to have grade 1 (or zero)
  std::vector<Rat> vector_part(int n) const;
  int max_grade() const;
};

CliffordElement clifford_mul(const QuadraticForm& q, const CliffordElement& a,
                             const CliffordElement& b);

/// Reversal: products v_1..v_k map to v_k..v_1.  Needs the form to re-express
/// descending generator products on the ascending blade basis.
CliffordElement clifford_reverse(const QuadraticForm& q, const CliffordElement& a);

/// N(a) = a * reverse(a); a scalar when a is a versor.
CliffordElement clifford_norm(const QuadraticForm& q, const CliffordElement& a);

/// tau_v(x) = x - (H(v, x)/Q(v)) v; requires Q(v) != 0.
std::vector<Rat> reflection(const QuadraticForm& q, const std::vector<Rat>& v,
                            const std::vector<Rat>& x);

/// Reflection vectors v_1 .. v_m (m <= 2n) with sigma = tau_{v_1} o .. o tau_{v_m},
/// built by fixing one anisotropic vector per round (one reflection when the
/// difference is anisotropic, two otherwise) and restricting to its complement.
std::vector<std::vector<Rat>> decompose_into_reflections(const QuadraticForm& q,
                                                         const RMat& isometry);

struct SpinorNormResult {
  int det;   // +1 or -1
  Rat norm;  // squarefree representative of prod Q(v_i) mod squares
};
SpinorNormResult spinor_norm(const QuadraticForm& q, const RMat& isometry);

/// x -> u^{-1} x u for a versor u; equals -tau_u(x) when u is a vector.
std::vector<Rat> conjugation_action(const QuadraticForm& q, const CliffordElement& u,
                                    const std::vector<Rat>& x);

}  // namespace qf
