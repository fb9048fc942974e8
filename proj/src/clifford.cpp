#include "quadforms/clifford.hpp"

#include <algorithm>

#include "quadforms/matrix.hpp"
#include "quadforms/numbers.hpp"

namespace qf {

namespace {

int popcount32(uint32_t m) { return __builtin_popcount(m); }

void add_term(std::map<uint32_t, Rat>& acc, uint32_t mask, const Rat& c) {
  if (c == 0) return;
  auto it = acc.find(mask);
  if (it == acc.end()) {
    acc.emplace(mask, c);
  } else {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

/// e_g * e_B with g a single generator, B a blade with ascending factors.
void insert_generator(const QuadraticForm& q, int g, uint32_t b, uint32_t prefix, const Rat& c,
                      std::map<uint32_t, Rat>& acc) {
  if (b == 0 || g < __builtin_ctz(b)) {
    add_term(acc, prefix | (1u << g) | b, c);
    return;
  }
  int low = __builtin_ctz(b);
  uint32_t rest = b & (b - 1);
  if (g == low) {
    add_term(acc, prefix | rest, c * Rat(q.coeff(g, g)));  // e_g e_g = Q(e_g)
    return;
  }
  // e_g e_low = H(low, g) - e_low e_g
  add_term(acc, prefix | rest, c * Rat(q.coeff(low, g)));
  insert_generator(q, g, rest, prefix | (1u << low), -c, acc);
}

std::map<uint32_t, Rat> blade_mul(const QuadraticForm& q, uint32_t a, uint32_t b) {
  std::map<uint32_t, Rat> cur;
  cur.emplace(b, Rat(1));
  // peel generators of a from the highest down: e_a X = e_{a1} (... (e_{ak} X))
  while (a != 0) {
    int g = 31 - __builtin_clz(a);
    a &= ~(1u << g);
    std::map<uint32_t, Rat> next;
    for (const auto& [mask, c] : cur) insert_generator(q, g, mask, 0, c, next);
    cur.swap(next);
  }
  return cur;
}

}  // namespace

CliffordElement CliffordElement::scalar(const Rat& c) {
  CliffordElement e;
  if (c != 0) e.coeff.emplace(0u, c);
  return e;
}

CliffordElement CliffordElement::from_vector(const std::vector<Rat>& x) {
  if (x.size() > 31) throw PreconditionError("Clifford support is limited to 31 generators");
  CliffordElement e;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) e.coeff.emplace(1u << i, x[i]);
  return e;
}

CliffordElement CliffordElement::basis_blade(uint32_t mask) {
  CliffordElement e;
  e.coeff.emplace(mask, Rat(1));
  return e;
}

CliffordElement CliffordElement::operator+(const CliffordElement& o) const {
  CliffordElement out = *this;
  for (const auto& [m, c] : o.coeff) add_term(out.coeff, m, c);
  return out;
}

CliffordElement CliffordElement::operator-(const CliffordElement& o) const {
  CliffordElement out = *this;
  for (const auto& [m, c] : o.coeff) add_term(out.coeff, m, -c);
  return out;
}

CliffordElement CliffordElement::operator*(const Rat& c) const {
  CliffordElement out;
  if (c == 0) return out;
  for (const auto& [m, v] : coeff) out.coeff.emplace(m, v * c);
  return out;
}

bool CliffordElement::operator==(const CliffordElement& o) const { return coeff == o.coeff; }

Rat CliffordElement::scalar_part() const {
  auto it = coeff.find(0u);
  return it == coeff.end() ? Rat(0) : it->second;
}

std::vector<Rat> CliffordElement::vector_part(int n) const {
  std::vector<Rat> out(n, Rat(0));
  for (const auto& [m, c] : coeff) {
    if (popcount32(m) != 1) throw PreconditionError("element is not of pure degree 1");
    int i = __builtin_ctz(m);
    if (i >= n) throw PreconditionError("blade outside the stated dimension");
    out[i] = c;
  }
  return out;
}

int CliffordElement::max_grade() const {
  int g = 0;
  for (const auto& [m, c] : coeff) g = std::max(g, popcount32(m));
  return g;
}

CliffordElement clifford_mul(const QuadraticForm& q, const CliffordElement& a,
                             const CliffordElement& b) {
  CliffordElement out;
  for (const auto& [ma, ca] : a.coeff)
    for (const auto& [mb, cb] : b.coeff) {
      Rat c = ca * cb;
      for (const auto& [m, v] : blade_mul(q, ma, mb)) add_term(out.coeff, m, c * v);
    }
  return out;
}

CliffordElement clifford_reverse(const QuadraticForm& q, const CliffordElement& a) {
  CliffordElement out;
  for (const auto& [m, c] : a.coeff) {
    // descending generator product; on non-orthogonal bases this picks up
    // lower-grade terms, so a per-blade sign is not enough
    CliffordElement rev = CliffordElement::scalar(1);
    uint32_t rest = m;
    while (rest != 0) {
      int g = 31 - __builtin_clz(rest);
      rest &= ~(1u << g);
      rev = clifford_mul(q, rev, CliffordElement::basis_blade(1u << g));
    }
    out = out + rev * c;
  }
  return out;
}

CliffordElement clifford_norm(const QuadraticForm& q, const CliffordElement& a) {
  return clifford_mul(q, a, clifford_reverse(q, a));
}

std::vector<Rat> reflection(const QuadraticForm& q, const std::vector<Rat>& v,
                            const std::vector<Rat>& x) {
  Rat qv = q.evaluate(v);
  if (qv == 0) throw PreconditionError("reflection vector must be anisotropic");
  Rat t = q.hessian_bilinear(v, x) / qv;
  std::vector<Rat> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] - t * v[i];
  return out;
}

namespace {

/// State for the constructive decomposition: a nondegenerate subspace with
/// basis C (global coordinates), the form and the isometry on it.
struct Restriction {
  RMat c;   // n x k
  RMat hk;  // k x k
  RMat s;   // k x k
};

Rat quad_value(const RMat& hk, const std::vector<Rat>& u) {
  int k = hk.rows();
  Rat acc = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) acc += u[i] * hk(i, j) * u[j];
  return acc / 2;
}

std::vector<Rat> mat_apply(const RMat& m, const std::vector<Rat>& u) {
  std::vector<Rat> out(m.rows(), Rat(0));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i] += m(i, j) * u[j];
  return out;
}

/// I - v (v^T H)/Q(v) as a k x k matrix
RMat reflection_matrix(const RMat& hk, const std::vector<Rat>& v) {
  int k = hk.rows();
  Rat qv = quad_value(hk, v);
  std::vector<Rat> hv = mat_apply(hk, v);
  RMat r = RMat::identity(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) r(i, j) -= v[i] * hv[j] / qv;
  return r;
}

/// Some anisotropic u with s u != u: basis vectors first, then small combinations.
std::vector<Rat> find_moved_anisotropic(const RMat& hk, const RMat& s) {
  int k = hk.rows();
  for (int i = 0; i < k; ++i) {
    std::vector<Rat> u(k, Rat(0));
    u[i] = 1;
    if (quad_value(hk, u) != 0 && mat_apply(s, u) != u) return u;
  }
  for (int height = 1; height <= 4; ++height) {
    std::vector<Int> c(k, -height);
    while (true) {
      bool all_zero = std::all_of(c.begin(), c.end(), [](const Int& v) { return v == 0; });
      if (!all_zero) {
        std::vector<Rat> u(c.begin(), c.end());
        if (quad_value(hk, u) != 0 && mat_apply(s, u) != u) return u;
      }
      int i = 0;
      while (i < k && ++c[i] > height) c[i++] = -height;
      if (i == k) break;
    }
  }
  throw std::logic_error("no moved anisotropic vector found");
}

}  // namespace

std::vector<std::vector<Rat>> decompose_into_reflections(const QuadraticForm& q,
                                                         const RMat& isometry) {
  int n = q.n();
  RMat h = q.hessian().cast<Rat>();
  if (isometry.rows() != n || isometry.cols() != n)
    throw PreconditionError("isometry dimension mismatch");
  if (isometry.transpose() * h * isometry != h)
    throw PreconditionError("matrix is not an isometry of the form");

  std::vector<std::vector<Rat>> refs;
  Restriction r{RMat::identity(n), h, isometry};

  while (r.hk.rows() > 0 && r.s != RMat::identity(r.hk.rows())) {
    int k = r.hk.rows();
    std::vector<Rat> u = find_moved_anisotropic(r.hk, r.s);
    std::vector<Rat> w = mat_apply(r.s, u);
    std::vector<Rat> diff(k), sum(k);
    for (int i = 0; i < k; ++i) {
      diff[i] = u[i] - w[i];
      sum[i] = u[i] + w[i];
    }
    if (quad_value(r.hk, diff) != 0) {
      refs.push_back(mat_apply(r.c, diff));
      r.s = reflection_matrix(r.hk, diff) * r.s;
    } else {
      // Q(u+w) = 4 Q(u) here; two reflections send w to -u to u
      refs.push_back(mat_apply(r.c, sum));
      refs.push_back(mat_apply(r.c, u));
      r.s = reflection_matrix(r.hk, u) * (reflection_matrix(r.hk, sum) * r.s);
    }
    if (mat_apply(r.s, u) != u) throw std::logic_error("fix step failed");

    // restrict to the orthogonal complement of u
    std::vector<Rat> g = mat_apply(r.hk, u);
    Rat hu = 2 * quad_value(r.hk, u);
    int pivot = -1;
    for (int i = 0; i < k && pivot < 0; ++i)
      if (u[i] != 0) pivot = i;
    RMat m(k, k - 1);
    int col = 0;
    for (int j = 0; j < k; ++j) {
      if (j == pivot) continue;
      for (int i = 0; i < k; ++i) m(i, col) = (i == j ? Rat(1) : Rat(0)) - g[j] * u[i] / hu;
      ++col;
    }
    // coordinates of s m in the basis [m | u]; the u-row must vanish
    RMat ext(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k - 1; ++j) ext(i, j) = m(i, j);
      ext(i, k - 1) = u[i];
    }
    RMat coords = inverse(ext) * (r.s * m);
    RMat s_new(k - 1, k - 1);
    for (int i = 0; i < k - 1; ++i)
      for (int j = 0; j < k - 1; ++j) s_new(i, j) = coords(i, j);
    for (int j = 0; j < k - 1; ++j)
      if (coords(k - 1, j) != 0) throw std::logic_error("restriction left the complement");
    r = Restriction{r.c * m, m.transpose() * r.hk * m, s_new};
  }
  return refs;
}

SpinorNormResult spinor_norm(const QuadraticForm& q, const RMat& isometry) {
  auto refs = decompose_into_reflections(q, isometry);
  Rat prod = 1;
  for (const auto& v : refs) prod *= q.evaluate(v);
  int det = refs.size() % 2 == 0 ? 1 : -1;
  return SpinorNormResult{det, squarefree_part(prod)};
}

std::vector<Rat> conjugation_action(const QuadraticForm& q, const CliffordElement& u,
                                    const std::vector<Rat>& x) {
  CliffordElement nu = clifford_norm(q, u);
  Rat nval = nu.scalar_part();
  if (nu.max_grade() != 0 || nval == 0)
    throw PreconditionError("conjugation requires a versor with invertible norm");
  CliffordElement uinv = clifford_reverse(q, u) * (Rat(1) / nval);
  CliffordElement res =
      clifford_mul(q, clifford_mul(q, uinv, CliffordElement::from_vector(x)), u);
  return res.vector_part(q.n());
}

}  // namespace qf
