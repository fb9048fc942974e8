#pragma once

#include <initializer_list>
#include <vector>

#include "quadforms/types.hpp"

namespace qf {

/// Dense row-major matrix, sized for rank <= ~12 exact-arithmetic work.
template <class T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
  Mat(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    a_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw PreconditionError("ragged matrix literal");
      for (const auto& x : r) a_.push_back(x);
    }
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw PreconditionError("matrix product shape mismatch");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& v = (*this)(i, k);
        if (v == 0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
      }
    return r;
  }

  Mat operator*(const T& c) const {
    Mat r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j) * c;
    return r;
  }

  bool operator!=(const Mat& o) const { return !(*this == o); }

  std::vector<T> operator*(const std::vector<T>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw PreconditionError("matrix-vector shape mismatch");
    std::vector<T> y(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) y[static_cast<size_t>(i)] += (*this)(i, j) * x[static_cast<size_t>(j)];
    return y;
  }

  template <class U>
  Mat<U> cast() const {
    Mat<U> r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = U((*this)(i, j));
    return r;
  }

 private:
  int rows_, cols_;
  std::vector<T> a_;
};

using IMat = Mat<Int>;
using RMat = Mat<Rat>;

/// Fraction-free (Bareiss) determinant.
Int det_bareiss(IMat m);
Rat det_rational(RMat m);

/// Adjugate matrix: adj(m) * m = det(m) * I.
IMat adjugate(const IMat& m);

/// Inverse of a nonsingular rational matrix (Gauss-Jordan).
RMat inverse(const RMat& m);

/// Row-style Hermite normal form of an integer matrix of full column rank n:
/// returns the unique upper-triangular n x n basis (positive pivots, entries
/// above a pivot reduced mod it) of the row lattice.
IMat hnf_row_basis(IMat g);

}  // namespace qf
