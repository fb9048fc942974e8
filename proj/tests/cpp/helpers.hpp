#pragma once

#include <random>
#include <vector>

#include "quadforms/forms.hpp"

namespace qftest {

using qf::IMat;
using qf::Int;
using qf::QuadraticForm;
using qf::Rat;
using qf::RMat;

inline Int rnd_int(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return Int(d(rng));
}

/// Positive definite integral form: Hessian 2 M^T M for a nonsingular M.
inline QuadraticForm random_posdef(int n, std::mt19937_64& rng, int span = 3) {
  while (true) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rnd_int(rng, -span, span);
    if (qf::det_bareiss(m) == 0) continue;
    IMat h(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Int s = 0;
        for (int k = 0; k < n; ++k) s += m(k, i) * m(k, j);
        h(i, j) = 2 * s;
      }
    return QuadraticForm(h);
  }
}

/// Random symmetric even-diagonal Hessian, possibly indefinite, nondegenerate.
inline QuadraticForm random_nondegenerate(int n, std::mt19937_64& rng, int span = 4) {
  while (true) {
    IMat h(n, n);
    for (int i = 0; i < n; ++i) {
      h(i, i) = 2 * rnd_int(rng, -span, span);
      for (int j = i + 1; j < n; ++j) h(i, j) = h(j, i) = rnd_int(rng, -span, span);
    }
    if (qf::det_bareiss(h) != 0) return QuadraticForm(h);
  }
}

/// Product of random shears and signed swaps; |det| = 1.
inline IMat random_unimodular(int n, std::mt19937_64& rng, int steps = 12) {
  IMat u = IMat::identity(n);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> kind(0, 3);
  for (int s = 0; s < steps; ++s) {
    int i = pick(rng), j = pick(rng);
    if (kind(rng) == 0 && i != j) {
      for (int k = 0; k < n; ++k) std::swap(u(i, k), u(j, k));
      for (int k = 0; k < n; ++k) u(i, k) = -u(i, k);
    } else if (i != j) {
      Int c = coef(rng);
      for (int k = 0; k < n; ++k) u(i, k) += c * u(j, k);
    }
  }
  return u;
}

inline QuadraticForm diag_form(const std::vector<Int>& d) {
  IMat h(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) h(static_cast<int>(i), static_cast<int>(i)) = 2 * d[i];
  return QuadraticForm(h);
}

inline QuadraticForm four_squares() { return diag_form({1, 1, 1, 1}); }

inline QuadraticForm hexagonal() { return QuadraticForm(IMat{{2, 1}, {1, 2}}); }

}  // namespace qftest
