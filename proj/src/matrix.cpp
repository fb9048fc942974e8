#include "quadforms/matrix.hpp"

namespace qf {

Int det_bareiss(IMat m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of non-square matrix");
  int n = m.rows();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m(i, k) != 0) { piv = i; break; }
      if (piv < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rat det_rational(RMat m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of non-square matrix");
  int n = m.rows();
  Rat det = 1;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (m(i, k) != 0) { piv = i; break; }
    if (piv < 0) return 0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      det = -det;
    }
    det *= m(k, k);
    Rat inv = Rat(1) / m(k, k);
    for (int i = k + 1; i < n; ++i) {
      Rat f = m(i, k) * inv;
      if (f == 0) continue;
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

IMat adjugate(const IMat& m) {
  if (m.rows() != m.cols()) throw PreconditionError("adjugate of non-square matrix");
  int n = m.rows();
  IMat adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  IMat minor(n - 1, n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc) = m(r, c);
          ++cc;
        }
        ++rr;
      }
      Int cof = det_bareiss(minor);
      adj(j, i) = ((i + j) & 1) ? -cof : cof;
    }
  return adj;
}

RMat inverse(const RMat& m) {
  if (m.rows() != m.cols()) throw PreconditionError("inverse of non-square matrix");
  int n = m.rows();
  RMat a = m, inv = RMat::identity(n);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (a(i, k) != 0) { piv = i; break; }
    if (piv < 0) throw PreconditionError("inverse of singular matrix");
    if (piv != k)
      for (int j = 0; j < n; ++j) {
        std::swap(a(k, j), a(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    Rat d = a(k, k);
    for (int j = 0; j < n; ++j) {
      a(k, j) /= d;
      inv(k, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rat f = a(i, k);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

IMat hnf_row_basis(IMat g) {
  int rows = g.rows(), n = g.cols();
  int r = 0;  // current pivot row
  for (int c = 0; c < n && r < rows; ++c) {
    // eliminate below row r in column c by gcd steps
    while (true) {
      int piv = -1;
      for (int i = r; i < rows; ++i)
        if (g(i, c) != 0) { piv = i; break; }
      if (piv < 0) break;
      // move smallest nonzero |entry| to row r
      for (int i = piv + 1; i < rows; ++i)
        if (g(i, c) != 0 &&
            boost::multiprecision::abs(g(i, c)) < boost::multiprecision::abs(g(piv, c)))
          piv = i;
      if (piv != r)
        for (int j = 0; j < n; ++j) std::swap(g(r, j), g(piv, j));
      bool clean = true;
      for (int i = r + 1; i < rows; ++i) {
        if (g(i, c) == 0) continue;
        Int q = g(i, c) / g(r, c);
        for (int j = 0; j < n; ++j) g(i, j) -= q * g(r, j);
        if (g(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (g(r, c) == 0) continue;
    if (g(r, c) < 0)
      for (int j = 0; j < n; ++j) g(r, j) = -g(r, j);
    ++r;
  }
  if (r != n) throw PreconditionError("hnf_row_basis: rows do not span full rank");
  // reduce entries above each pivot; ascending order so later columns stay untouched
  for (int i = 1; i < n; ++i) {
    for (int k = 0; k < i; ++k) {
      Int q = g(k, i) / g(i, i);
      if (g(k, i) - q * g(i, i) < 0) q -= 1;  // floor division
      if (q == 0) continue;
      for (int j = 0; j < n; ++j) g(k, j) -= q * g(i, j);
    }
  }
  IMat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = g(i, j);
  return out;
}

}  // namespace qf
