#include "quadforms/densities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "quadforms/genus.hpp"
#include "quadforms/jordan.hpp"
#include "quadforms/numbers.hpp"
#include "quadforms/theta.hpp"

namespace qf {

namespace {

Rat rat_pow(const Rat& b, long long e) {
  Int n = pow(num(b), static_cast<unsigned>(e < 0 ? -e : e));
  Int d = pow(den(b), static_cast<unsigned>(e < 0 ? -e : e));
  return e >= 0 ? Rat(n, d) : Rat(d, n);
}

/// sqrt of a rational that is an exact square of a rational.
Rat sqrt_exact(const Rat& r) {
  Int a = num(r), b = den(r);
  Int sa = isqrt_floor(a), sb = isqrt_floor(b);
  if (sa * sa != a || sb * sb != b) throw std::logic_error("sqrt_exact: not a perfect square");
  return Rat(sa, sb);
}

/// sqrt(r) for r > 0 as coeff * sqrt(squarefree).
SymbolicDensity sqrt_of(const Rat& r) {
  if (r <= 0) throw PreconditionError("square root of a nonpositive quantity");
  Int s = squarefree_part(r);
  return SymbolicDensity{sqrt_exact(r / Rat(s)), 0, s};
}

SymbolicDensity inverse(const SymbolicDensity& d) {
  if (d.coeff == 0) throw std::logic_error("inverse of zero density");
  return SymbolicDensity{Rat(1) / (d.coeff * Rat(d.sqrt_disc)), -d.pi_twice, d.sqrt_disc};
}

/// Gamma(n/2) = r * pi^(pt/2): (n/2-1)! for even n, (n-2)!!/2^((n-1)/2) * sqrt(pi) for odd.
SymbolicDensity gamma_half(int n) {
  if (n <= 0) throw PreconditionError("gamma_half needs n >= 1");
  if (n % 2 == 0) {
    Rat f = 1;
    for (int k = 2; k <= n / 2 - 1; ++k) f *= k;
    return SymbolicDensity{f, 0, 1};
  }
  Rat f = 1;
  for (int k = n - 2; k >= 3; k -= 2) f *= k;
  f /= rat_pow(Rat(2), (n - 1) / 2);
  return SymbolicDensity{f, 1, 1};
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

/// One constituent of the Z_p splitting as it enters the value distribution.
struct DensityPiece {
  long long exponent;
  int kind;  // 0: u x^2, 1: x y, 2: x^2 + x y + y^2
  Int unit;  // kind 0 only
};

std::vector<DensityPiece> split_pieces(const JordanDecomposition& jd) {
  std::vector<DensityPiece> out;
  for (const auto& blk : jd.blocks) {
    const IMat& h = blk.block.hessian();
    int r = h.rows();
    int k = 0;
    while (k < r) {
      if (k + 1 < r && h(k, k + 1) != 0) {
        out.push_back({blk.exponent, h(k, k) == 0 ? 1 : 2, 0});
        k += 2;
      } else {
        out.push_back({blk.exponent, 0, h(k, k) / 2});
        k += 1;
      }
    }
  }
  return out;
}

/// Value distribution of one piece mod p^i, entries indexed by residue.
std::vector<uint64_t> piece_distribution(const DensityPiece& pc, const Int& p, const Int& pm_big) {
  uint64_t pm = static_cast<uint64_t>(pm_big);
  Int scale_big = pow_mod(p, Int(pc.exponent), pm_big);
  uint64_t scale = static_cast<uint64_t>(scale_big);
  std::vector<uint64_t> dist(pm, 0);
  if (pc.kind == 0) {
    uint64_t u = static_cast<uint64_t>(mod_floor(pc.unit, pm_big));
    uint64_t c = mulmod_u64(u, scale, pm);
    for (uint64_t x = 0; x < pm; ++x) ++dist[mulmod_u64(mulmod_u64(x, x, pm), c, pm)];
  } else {
    for (uint64_t x = 0; x < pm; ++x)
      for (uint64_t y = 0; y < pm; ++y) {
        uint64_t v = pc.kind == 1 ? mulmod_u64(x, y, pm)
                                  : (mulmod_u64(x, x, pm) + mulmod_u64(x, y, pm) +
                                     mulmod_u64(y, y, pm)) %
                                        pm;
        ++dist[mulmod_u64(v, scale, pm)];
      }
  }
  return dist;
}

template <class C>
Int convolved_count(const std::vector<std::vector<uint64_t>>& dists, const Int& m,
                    const Int& pm_big) {
  size_t pm = static_cast<size_t>(pm_big);
  size_t mbar = static_cast<size_t>(mod_floor(m, pm_big));
  std::vector<C> acc(dists[0].begin(), dists[0].end());
  for (size_t d = 1; d + 1 < dists.size(); ++d) {
    std::vector<C> next(pm, C(0));
    for (size_t a = 0; a < pm; ++a) {
      if (acc[a] == C(0)) continue;
      const C va = acc[a];
      for (size_t b = 0; b < pm; ++b) {
        if (dists[d][b] == 0) continue;
        size_t s = a + b;
        if (s >= pm) s -= pm;
        next[s] += va * C(dists[d][b]);
      }
    }
    acc.swap(next);
  }
  C total(0);
  if (dists.size() == 1) {
    total = acc[mbar];
  } else {
    const auto& last = dists.back();
    for (size_t a = 0; a < pm; ++a) {
      if (acc[a] == C(0)) continue;
      size_t b = mbar >= a ? mbar - a : mbar + pm - a;
      total += acc[a] * C(last[b]);
    }
  }
  if constexpr (std::is_same_v<C, Int>)
    return total;
  else
    return Int(total);
}

}  // namespace

double SymbolicDensity::to_double() const {
  double v = static_cast<double>(coeff);
  v *= std::pow(3.14159265358979323846, pi_twice / 2.0);
  v *= std::sqrt(static_cast<double>(sqrt_disc));
  return v;
}

SymbolicDensity SymbolicDensity::operator*(const SymbolicDensity& o) const {
  Int prod = sqrt_disc * o.sqrt_disc;
  Int s = squarefree_part(Rat(prod));
  Int g = isqrt_floor(prod / s);
  return SymbolicDensity{coeff * o.coeff * Rat(g), pi_twice + o.pi_twice, s};
}

bool SymbolicDensity::operator==(const SymbolicDensity& o) const {
  return coeff == o.coeff && pi_twice == o.pi_twice && sqrt_disc == o.sqrt_disc;
}

Int count_solutions_mod_p_power(const QuadraticForm& q, const Int& m, const Int& p, int i,
                                Budget* budget) {
  if (i < 1) throw PreconditionError("exponent must be >= 1");
  int n = q.n();
  Int pm = pow(p, static_cast<unsigned>(i));
  Int mbar = mod_floor(m, pm);
  std::vector<Int> x(n, 0);
  Int count = 0;
  // odometer over (Z/p^i)^n
  while (true) {
    if (budget) budget->charge();
    if (mod_floor(q.evaluate(x), pm) == mbar) ++count;
    int k = 0;
    while (k < n && ++x[k] == pm) x[k++] = 0;
    if (k == n) break;
  }
  return count;
}

Int count_solutions_mod_p_power_fast(const QuadraticForm& q, const Int& m, const Int& p, int i) {
  if (i < 1) throw PreconditionError("exponent must be >= 1");
  if (i >= 2 && p != 2 && q.det_hessian() % p != 0) {
    // Unimodular odd p: a solution with x != 0 mod p has nonzero gradient and
    // lifts p^{n-1} ways per level; x = p y needs p^2 | m and recurses two levels.
    int n = q.n();
    Int prim = count_solutions_mod_p_power_fast(q, m, p, 1) - (m % p == 0 ? 1 : 0);
    Int total = prim * pow(p, static_cast<unsigned>((n - 1) * (i - 1)));
    if (m % (p * p) == 0) {
      Int sub = i == 2 ? Int(1) : count_solutions_mod_p_power_fast(q, m / (p * p), p, i - 2);
      total += pow(p, static_cast<unsigned>(n)) * sub;
    }
    return total;
  }
  Int pm = pow(p, static_cast<unsigned>(i));
  if (pm > (Int(1) << 26)) throw UnsupportedError("modulus too large for distribution tables");
  JordanDecomposition jd = jordan_decompose(q, p);
  auto pieces = split_pieces(jd);
  std::vector<std::vector<uint64_t>> dists;
  dists.reserve(pieces.size());
  for (const auto& pc : pieces) {
    if (pc.kind != 0 && pm > (Int(1) << 16))
      throw UnsupportedError("modulus too large for a binary distribution table");
    dists.push_back(piece_distribution(pc, p, pm));
  }
  // counts fit u64 iff pm^n does; partial sums are bounded by the total
  double bits = q.n() * i * std::log2(static_cast<double>(p));
  if (bits < 62.0) return convolved_count<uint64_t>(dists, m, pm);
  return convolved_count<Int>(dists, m, pm);
}

Rat local_density_p(const QuadraticForm& q, const Int& m, const Int& p) {
  if (m == 0) throw PreconditionError("local density requires m != 0");
  if (!is_probable_prime(p)) throw PreconditionError("p must be prime");
  int n = q.n();
  auto ratio = [&](int i) {
    Int count = count_solutions_mod_p_power_fast(q, m, p, i);
    return Rat(count, pow(p, static_cast<unsigned>((n - 1) * i)));
  };
  int i = 1 + static_cast<int>(valuation(4 * m * q.det_hessian(), p));
  Rat prev = ratio(i);
  Rat cur = ratio(i + 1);
  for (int step = 0; step < 5 && prev != cur; ++step) {
    ++i;
    prev = cur;
    cur = ratio(i + 1);
  }
  if (prev != cur)
    throw StabilizationError("local density did not stabilize at p=" + p.str() +
                             ", m=" + m.str());
  return prev;
}

SymbolicDensity local_density_infty(const QuadraticForm& q, const Int& m) {
  if (m <= 0) throw PreconditionError("archimedean density requires m > 0");
  if (!q.is_positive_definite()) throw PreconditionError("form must be positive definite");
  int n = q.n();
  SymbolicDensity v{1, n, 1};  // pi^{n/2}
  int e = n - 2;               // m^{e/2}
  if (e % 2 == 0) {
    v.coeff *= rat_pow(Rat(m), e / 2);
  } else {
    v.coeff *= rat_pow(Rat(m), (e - 1) / 2);
    v = v * sqrt_of(Rat(m));
  }
  v = v * inverse(gamma_half(n));
  v = v * inverse(sqrt_of(q.det_gram()));
  return v;
}

Int jacobi_r4(const Int& m) {
  if (m < 1) throw PreconditionError("jacobi_r4 requires m >= 1");
  Int total = 0;
  for (Int d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    Int e = m / d;
    if (d % 4 != 0) total += d;
    if (e != d && e % 4 != 0) total += e;
  }
  return 8 * total;
}

Rat eisenstein_genus_avg(const GenusCatalog& genus, const Int& m) {
  if (genus.reps.empty()) throw PreconditionError("empty genus catalog");
  Rat numer = 0, denom = 0;
  for (const auto& rep : genus.reps) {
    Rat w = Rat(1) / Rat(rep.aut_order);
    numer += Rat(count_representations(rep.form, m)) * w;
    denom += w;
  }
  return numer / denom;
}

std::vector<Rat> eisenstein_genus_avg_prefix(const GenusCatalog& genus, long long max_m) {
  if (genus.reps.empty()) throw PreconditionError("empty genus catalog");
  std::vector<Rat> numer(static_cast<size_t>(max_m) + 1, Rat(0));
  Rat denom = 0;
  for (const auto& rep : genus.reps) {
    Rat w = Rat(1) / Rat(rep.aut_order);
    auto coeffs = theta_coefficients(rep.form, max_m);
    for (size_t k = 0; k < numer.size(); ++k) numer[k] += Rat(coeffs[k]) * w;
    denom += w;
  }
  for (auto& v : numer) v /= denom;
  return numer;
}

SymbolicDensity zeta_tail_four_squares(const QuadraticForm&, const Int&,
                                       const std::vector<Int>& covered_primes) {
  // prod_{p not covered} (1 - p^-2) = (1/zeta(2)) * prod_covered (1 - p^-2)^-1
  Rat c = 6;  // 1/zeta(2) = 6/pi^2
  for (const Int& p : covered_primes) c *= Rat(p * p) / Rat(p * p - 1);
  return SymbolicDensity{c, -4, 1};
}

Rat eisenstein_coefficient_product(const QuadraticForm& q, const Int& m,
                                   const TailEvaluator& tail) {
  if (m == 0) return 1;
  if (m < 0) throw PreconditionError("eisenstein coefficient requires m >= 0");
  TailEvaluator t = tail;
  if (!t) {
    bool four_squares = q.n() == 4 && q.hessian() == IMat::identity(4) * Int(2);
    bool sf = squarefree_part(Rat(m)) == m;
    if (!four_squares || !sf)
      throw UnsupportedError(
          "product route without a tail evaluator covers only the sum of four squares at "
          "squarefree m");
    t = zeta_tail_four_squares;
  }
  std::vector<Int> covered;
  for (const auto& [p, e] : factorize(2 * m * q.det_hessian())) covered.push_back(p);
  std::sort(covered.begin(), covered.end());
  SymbolicDensity v = local_density_infty(q, m);
  for (const Int& p : covered) v = v * SymbolicDensity{local_density_p(q, m, p), 0, 1};
  v = v * t(q, m, covered);
  if (!v.is_rational())
    throw UnsupportedError("local density product does not simplify to a rational");
  return v.coeff;
}

std::vector<Rat> cusp_coefficients(const QuadraticForm& q, const GenusCatalog& genus,
                                   long long max_m) {
  auto r = theta_coefficients(q, max_m);
  auto ae = eisenstein_genus_avg_prefix(genus, max_m);
  std::vector<Rat> out(ae.size());
  for (size_t k = 0; k < out.size(); ++k) out[k] = Rat(r[k]) - ae[k];
  return out;
}

}  // namespace qf
