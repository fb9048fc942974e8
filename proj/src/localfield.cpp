#include "quadforms/localfield.hpp"

#include <set>

#include "quadforms/numbers.hpp"

namespace qf {

Place Place::prime(Int q) {
  if (q < 2 || !is_probable_prime(q)) throw PreconditionError("place requires a prime");
  return {false, std::move(q)};
}

namespace {

// unit part of a rational at p, reduced mod p^k (num and den both prime to p)
Int unit_mod(const Rat& a, const Int& p, const Int& pk) {
  Int u_num = unit_part(num(a), p), u_den = unit_part(den(a), p);
  return mod_floor(u_num * mod_inverse(u_den, pk), pk);
}

}  // namespace

SquareClassQp::SquareClassQp(Place v, int val_parity, Int unit)
    : place_(std::move(v)), val_parity_(val_parity & 1), unit_(std::move(unit)) {
  if (place_.infinite) {
    if (val_parity_ != 0 || (unit_ != 1 && unit_ != -1))
      throw PreconditionError("real square class is a sign");
  } else if (place_.p == 2) {
    if (unit_ != 1 && unit_ != 3 && unit_ != 5 && unit_ != 7)
      throw PreconditionError("2-adic unit class must be 1,3,5,7");
  } else {
    if (unit_ != 1 && unit_ != least_nonresidue(place_.p))
      throw PreconditionError("odd-p unit class must be 1 or the least nonresidue");
  }
}

SquareClassQp SquareClassQp::from_rational(const Rat& a, const Place& v) {
  if (a == 0) throw PreconditionError("square class of zero");
  if (v.infinite) return SquareClassQp(v, 0, a > 0 ? 1 : -1);
  long long val = valuation(a, v.p);
  if (v.p == 2) return SquareClassQp(v, static_cast<int>(val & 1), unit_mod(a, 2, 8));
  Int unit = legendre_rat_unit(a, v.p) == 1 ? Int(1) : least_nonresidue(v.p);
  return SquareClassQp(v, static_cast<int>(val & 1), unit);
}

SquareClassQp SquareClassQp::operator*(const SquareClassQp& o) const {
  if (!(place_ == o.place_)) throw PreconditionError("square class places differ");
  if (place_.infinite) return SquareClassQp(place_, 0, unit_ * o.unit_);
  if (place_.p == 2) return SquareClassQp(place_, val_parity_ ^ o.val_parity_, mod_floor(unit_ * o.unit_, 8));
  Int r = least_nonresidue(place_.p);
  bool nonres = (unit_ == r) != (o.unit_ == r);
  return SquareClassQp(place_, val_parity_ ^ o.val_parity_, nonres ? r : Int(1));
}

bool SquareClassQp::operator==(const SquareClassQp& o) const {
  return place_ == o.place_ && val_parity_ == o.val_parity_ && unit_ == o.unit_;
}

std::vector<SquareClassQp> SquareClassQp::all(const Place& v) {
  std::vector<SquareClassQp> out;
  if (v.infinite) {
    out.emplace_back(v, 0, 1);
    out.emplace_back(v, 0, -1);
    return out;
  }
  std::vector<Int> units;
  if (v.p == 2) units = {1, 3, 5, 7};
  else units = {1, least_nonresidue(v.p)};
  for (int parity : {0, 1})
    for (const Int& u : units) out.emplace_back(v, parity, u);
  return out;
}

int hilbert_symbol(const Rat& a, const Rat& b, const Place& v) {
  if (a == 0 || b == 0) throw PreconditionError("hilbert symbol of zero");
  if (v.infinite) return (a < 0 && b < 0) ? -1 : 1;
  const Int& p = v.p;
  long long alpha = valuation(a, p), beta = valuation(b, p);
  if (p == 2) {
    Int u = unit_mod(a, 2, 8), w = unit_mod(b, 2, 8);
    auto eps = [](const Int& x) { return mod_floor(x, 4) == 3 ? 1 : 0; };   // (x-1)/2 mod 2
    auto omega = [](const Int& x) { return (x == 3 || x == 5) ? 1 : 0; };   // (x^2-1)/8 mod 2
    long long e = static_cast<long long>(eps(u)) * eps(w) + alpha * omega(w) + beta * omega(u);
    return (e & 1) ? -1 : 1;
  }
  int lu = legendre_rat_unit(a, p), lw = legendre_rat_unit(b, p);
  int sign = 1;
  if ((alpha & 1) && (beta & 1) && mod_floor(p, 4) == 3) sign = -sign;  // (-1)^{ab e(p)}
  if (beta & 1) sign *= lu;
  if (alpha & 1) sign *= lw;
  return sign;
}

std::pair<std::vector<Rat>, RMat> diagonalize_over_Q(const QuadraticForm& q) {
  if (!q.is_nondegenerate()) throw PreconditionError("diagonalize_over_Q: degenerate form");
  return symmetric_diagonalize(q.gram());
}

int hasse_invariant(const QuadraticForm& q, const Place& v) {
  auto [a, m] = diagonalize_over_Q(q);
  int c = 1;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j) c *= hilbert_symbol(a[i], a[j], v);
  return c;
}

QpInvariants qp_invariants(const QuadraticForm& q, const Place& v) {
  if (!q.is_nondegenerate()) throw PreconditionError("local invariants of degenerate form");
  return {q.n(), SquareClassQp::from_rational(q.det_gram(), v), hasse_invariant(q, v)};
}

bool isometric_over_Qp(const QuadraticForm& a, const QuadraticForm& b, const Place& v) {
  if (v.infinite) return isometric_over_R(a, b);
  QpInvariants ia = qp_invariants(a, v), ib = qp_invariants(b, v);
  return ia.n == ib.n && ia.det_class == ib.det_class && ia.hasse == ib.hasse;
}

bool isometric_over_R(const QuadraticForm& a, const QuadraticForm& b) {
  if (!a.is_nondegenerate() || !b.is_nondegenerate())
    throw PreconditionError("real equivalence of degenerate form");
  return a.n() == b.n() && a.signature() == b.signature();
}

bool isometric_over_Q(const QuadraticForm& a, const QuadraticForm& b) {
  if (a.n() != b.n()) return false;
  if (!isometric_over_R(a, b)) return false;
  std::set<Int> ps = {2};
  for (const auto& [p, e] : factorize(a.det_hessian() * b.det_hessian())) ps.insert(p);
  for (const Int& p : ps)
    if (!isometric_over_Qp(a, b, Place::prime(p))) return false;
  return true;
}

bool is_isotropic_over_Qp(const QuadraticForm& q, const Place& v) {
  if (!q.is_nondegenerate()) throw PreconditionError("isotropy of degenerate form");
  int n = q.n();
  if (v.infinite) {
    auto [pos, neg] = q.signature();
    return pos > 0 && neg > 0;
  }
  if (n == 1) return false;
  if (n >= 5) return true;
  SquareClassQp d = SquareClassQp::from_rational(q.det_gram(), v);
  SquareClassQp minus_one = SquareClassQp::from_rational(Rat(-1), v);
  if (n == 2) return d == minus_one;
  int c = hasse_invariant(q, v);
  if (n == 3) {
    // isotropic iff (-1, -d)_v = c
    Rat md = -q.det_gram();
    return hilbert_symbol(Rat(-1), md, v) == c;
  }
  // n = 4: anisotropic exactly when d = 1 and c = -(-1,-1)_v
  if (!d.is_trivial()) return true;
  return c == hilbert_symbol(Rat(-1), Rat(-1), v);
}

}  // namespace qf
