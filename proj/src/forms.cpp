#include "quadforms/forms.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include "quadforms/numbers.hpp"

namespace qf {

QuadraticForm::QuadraticForm(IMat hessian) : n_(hessian.rows()), h_(std::move(hessian)) {
  if (n_ < 1 || h_.cols() != n_) throw PreconditionError("hessian must be square, n >= 1");
  for (int i = 0; i < n_; ++i) {
    if (h_(i, i) % 2 != 0) throw PreconditionError("hessian diagonal must be even");
    for (int j = i + 1; j < n_; ++j)
      if (h_(i, j) != h_(j, i)) throw PreconditionError("hessian must be symmetric");
  }
}

QuadraticForm QuadraticForm::from_upper_coefficients(
    int n, const std::map<std::pair<int, int>, Int>& c) {
  IMat h(n, n);
  for (const auto& [ij, v] : c) {
    auto [i, j] = ij;
    if (i < 0 || j < i || j >= n) throw PreconditionError("coefficient index out of range");
    if (i == j) {
      h(i, i) = 2 * v;
    } else {
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return QuadraticForm(std::move(h));
}

RMat QuadraticForm::gram() const {
  RMat b(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) b(i, j) = Rat(h_(i, j), 2);
  return b;
}

Int QuadraticForm::coeff(int i, int j) const {
  if (i > j) std::swap(i, j);
  return i == j ? h_(i, i) / 2 : h_(i, j);
}

Int QuadraticForm::evaluate(const std::vector<Int>& x) const {
  if (static_cast<int>(x.size()) != n_) throw PreconditionError("vector length mismatch");
  Int acc = 0;
  for (int i = 0; i < n_; ++i) {
    if (x[i] == 0) continue;
    acc += h_(i, i) / 2 * x[i] * x[i];
    for (int j = i + 1; j < n_; ++j) acc += h_(i, j) * x[i] * x[j];
  }
  return acc;
}

Rat QuadraticForm::evaluate(const std::vector<Rat>& x) const {
  if (static_cast<int>(x.size()) != n_) throw PreconditionError("vector length mismatch");
  Rat acc = 0;
  for (int i = 0; i < n_; ++i) {
    if (x[i] == 0) continue;
    acc += Rat(h_(i, i), 2) * x[i] * x[i];
    for (int j = i + 1; j < n_; ++j) acc += Rat(h_(i, j)) * x[i] * x[j];
  }
  return acc;
}

Int QuadraticForm::hessian_bilinear(const std::vector<Int>& x, const std::vector<Int>& y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw PreconditionError("vector length mismatch");
  Int acc = 0;
  for (int i = 0; i < n_; ++i) {
    if (x[i] == 0) continue;
    Int row = 0;
    for (int j = 0; j < n_; ++j) row += h_(i, j) * y[j];
    acc += x[i] * row;
  }
  return acc;
}

Rat QuadraticForm::hessian_bilinear(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw PreconditionError("vector length mismatch");
  Rat acc = 0;
  for (int i = 0; i < n_; ++i) {
    if (x[i] == 0) continue;
    Rat row = 0;
    for (int j = 0; j < n_; ++j) row += Rat(h_(i, j)) * y[j];
    acc += x[i] * row;
  }
  return acc;
}

QuadraticForm QuadraticForm::transform(const IMat& m) const {
  if (m.rows() != n_ || m.cols() != n_) throw PreconditionError("basis change shape mismatch");
  return QuadraticForm(m.transpose() * h_ * m);
}

QuadraticForm QuadraticForm::direct_sum(const QuadraticForm& o) const {
  IMat h(n_ + o.n_, n_ + o.n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) h(i, j) = h_(i, j);
  for (int i = 0; i < o.n_; ++i)
    for (int j = 0; j < o.n_; ++j) h(n_ + i, n_ + j) = o.h_(i, j);
  return QuadraticForm(std::move(h));
}

QuadraticForm QuadraticForm::scale(const Int& c) const {
  if (c == 0) throw PreconditionError("scale by zero");
  IMat h(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) h(i, j) = c * h_(i, j);
  return QuadraticForm(std::move(h));
}

Int QuadraticForm::det_hessian() const {
  if (!det_known_) {
    det_cache_ = det_bareiss(h_);
    det_known_ = true;
  }
  return det_cache_;
}

Rat QuadraticForm::det_gram() const {
  Int two_n = Int(1) << n_;
  return Rat(det_hessian(), two_n);
}

Int QuadraticForm::level() const {
  Int d = det_hessian();
  if (d == 0) throw PreconditionError("level of degenerate form");
  Int da = boost::multiprecision::abs(d);
  IMat adj = adjugate(h_);
  Int n_level = 1;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      Int a = adj(i, j);
      Int m = i == j ? 2 * da : da;  // diagonal of N * H^{-1} must be even
      Int g = boost::integer::gcd(mod_floor(a, m), m);
      n_level = boost::integer::lcm(n_level, m / g);
    }
  return n_level;
}

std::pair<int, int> QuadraticForm::signature() const {
  if (!is_nondegenerate()) throw PreconditionError("signature of degenerate form");
  auto [d, m] = symmetric_diagonalize(gram());
  int pos = 0, neg = 0;
  for (const Rat& v : d) {
    if (v > 0) ++pos;
    else if (v < 0) ++neg;
    else throw PreconditionError("signature: zero diagonal on nondegenerate form");
  }
  return {pos, neg};
}

bool QuadraticForm::is_positive_definite() const {
  if (det_hessian() == 0) return false;
  return signature() == std::pair<int, int>(n_, 0);
}

std::pair<std::vector<Rat>, RMat> symmetric_diagonalize(const RMat& b) {
  int n = b.rows();
  if (b.cols() != n) throw PreconditionError("symmetric_diagonalize: non-square");
  RMat a = b;
  RMat m = RMat::identity(n);
  // column operations mirrored on rows; m accumulates the basis so m^T b m stays = a
  auto add_col = [&](int dst, int src, const Rat& f) {
    for (int i = 0; i < n; ++i) a(i, dst) += f * a(i, src);
    for (int i = 0; i < n; ++i) a(dst, i) += f * a(src, i);
    for (int i = 0; i < n; ++i) m(i, dst) += f * m(i, src);
  };
  auto swap_col = [&](int i, int j) {
    for (int r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
    for (int r = 0; r < n; ++r) std::swap(a(i, r), a(j, r));
    for (int r = 0; r < n; ++r) std::swap(m(r, i), m(r, j));
  };
  for (int k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, i) != 0) { piv = i; break; }
      if (piv >= 0) {
        swap_col(k, piv);
      } else {
        int off = -1;
        for (int i = k + 1; i < n && off < 0; ++i)
          if (a(k, i) != 0) off = i;
        if (off < 0) continue;  // row k entirely zero from k on: degenerate direction
        // a(k,k) = a(off,off) = 0, a(k,off) != 0: e_k += e_off gives 2*a(k,off) pivot
        add_col(k, off, 1);
      }
    }
    if (a(k, k) == 0) continue;
    for (int j = k + 1; j < n; ++j) {
      if (a(k, j) == 0) continue;
      add_col(j, k, -a(k, j) / a(k, k));
    }
  }
  std::vector<Rat> d(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)] = a(i, i);
  return {d, m};
}

}  // namespace qf
