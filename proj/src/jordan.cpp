#include "quadforms/jordan.hpp"

#include <algorithm>
#include <optional>

#include "quadforms/numbers.hpp"

namespace qf {

namespace {

constexpr long long kInfVal = 1LL << 60;

long long val_or_inf(const Rat& x, const Int& p) {
  return x == 0 ? kInfVal : valuation(x, p);
}

struct Piece {
  long long exponent;
  int kind;  // 0: u x^2, 1: xy, 2: x^2+xy+y^2
  int col_a = -1, col_b = -1;
  Rat unit;  // kind 0: p-unit with piece = p^exponent * unit * x^2
  RMat m2;   // kind 1/2: Hessian / p^exponent, even 2-unimodular
  Int canonical_unit;
};

IMat hessian_xy() { return IMat{{0, 1}, {1, 0}}; }
IMat hessian_hex() { return IMat{{2, 1}, {1, 2}}; }

// Witness search for T^T m T = target mod 8 over the 2x2 matrices with odd
// determinant; exists whenever m and target are equivalent even 2-unimodular forms.
IMat find_binary_witness_mod8(const IMat& m, const IMat& target) {
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      for (int c = 0; c < 8; ++c)
        for (int d = 0; d < 8; ++d) {
          if (((a * d - b * c) & 1) == 0) continue;
          IMat t{{a, b}, {c, d}};
          IMat g = t.transpose() * m * t;
          bool ok = true;
          for (int i = 0; i < 2 && ok; ++i)
            for (int j = 0; j < 2 && ok; ++j)
              if (mod_floor(g(i, j) - target(i, j), 8) != 0) ok = false;
          if (ok) return t;
        }
  throw std::logic_error("binary block witness not found mod 8");
}

// Lift T^T m T = target mod 2^k to mod 2^K (target unimodular at 2, k >= 3).
IMat lift_binary_witness(const IMat& m, const IMat& target, IMat t, int k, int cap) {
  Int adj_det = target(0, 0) * target(1, 1) - target(0, 1) * target(1, 0);
  IMat adj{{target(1, 1), -target(0, 1)}, {-target(1, 0), target(0, 0)}};
  Int inv_det4 = mod_inverse(adj_det, 16);
  while (k < cap) {
    Int mod_cur = Int(1) << k, mod_next = Int(1) << (k + 1);
    IMat f = t.transpose() * m * t;
    IMat g(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Int diff = f(i, j) - target(i, j);
        if (mod_floor(diff, mod_cur) != 0) throw std::logic_error("witness lift lost congruence");
        g(i, j) = diff >> k;
      }
    // correction t += 2^{k-1} t x with x = -target^{-1} g (mod 4)
    IMat x(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Int v = -(adj(i, 0) * g(0, j) + adj(i, 1) * g(1, j)) * inv_det4;
        x(i, j) = mod_floor(v, 4);
      }
    IMat tx = t * x;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) t(i, j) = mod_floor(t(i, j) + (tx(i, j) << (k - 1)), mod_next);
    ++k;
  }
  return t;
}

}  // namespace

JordanDecomposition jordan_decompose(const QuadraticForm& q, const Int& p, int precision) {
  if (p < 2 || !is_probable_prime(p)) throw PreconditionError("jordan_decompose: p must be prime");
  if (!q.is_nondegenerate()) throw PreconditionError("jordan_decompose: degenerate form");
  const int n = q.n();
  if (precision <= 0)
    precision = static_cast<int>(valuation(q.det_hessian(), p)) + (p == 2 ? 8 : 6);
  Int pk = 1;
  for (int i = 0; i < precision; ++i) pk *= p;

  // a = E^T H E over rationals with p-unit denominators.
  RMat a = q.hessian().cast<Rat>();
  RMat e = RMat::identity(n);
  auto add_col = [&](int dst, int src, const Rat& f) {
    for (int r = 0; r < n; ++r) a(r, dst) += f * a(r, src);
    for (int r = 0; r < n; ++r) a(dst, r) += f * a(src, r);
    for (int r = 0; r < n; ++r) e(r, dst) += f * e(r, src);
  };

  std::vector<bool> active(static_cast<size_t>(n), true);
  std::vector<Piece> pieces;

  int remaining = n;
  while (remaining > 0) {
    long long vmin = kInfVal;
    int bi = -1, bj = -1;
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (int j = i; j < n; ++j) {
        if (!active[j]) continue;
        long long v = val_or_inf(a(i, j), p);
        if (v < vmin) { vmin = v; bi = i; bj = j; }
      }
    }
    if (bi < 0) throw std::logic_error("jordan: active block vanished");

    int diag = -1;
    for (int i = 0; i < n; ++i)
      if (active[i] && val_or_inf(a(i, i), p) == vmin) { diag = i; break; }

    if (diag < 0 && p != 2) {
      // p odd: e_i += e_j pulls the minimal off-diagonal valuation onto the diagonal
      add_col(bi, bj, 1);
      diag = bi;
    }

    if (diag >= 0) {
      for (int k = 0; k < n; ++k) {
        if (!active[k] || k == diag || a(diag, k) == 0) continue;
        add_col(k, diag, -a(diag, k) / a(diag, diag));
      }
      Piece pc;
      pc.kind = 0;
      pc.col_a = diag;
      Rat qval = a(diag, diag) / 2;  // piece is qval * x^2
      pc.exponent = valuation(qval, p);
      Rat pe = 1;
      for (long long t = 0; t < pc.exponent; ++t) pe *= Rat(p);
      pc.unit = qval / pe;
      pieces.push_back(std::move(pc));
      active[static_cast<size_t>(diag)] = false;
      remaining -= 1;
    } else {
      // p = 2, minimal scale only off-diagonal: split the even binary (bi, bj)
      RMat m{{a(bi, bi), a(bi, bj)}, {a(bi, bj), a(bj, bj)}};
      Rat det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
      RMat minv{{m(1, 1) / det, -m(0, 1) / det}, {-m(1, 0) / det, m(0, 0) / det}};
      for (int k = 0; k < n; ++k) {
        if (!active[k] || k == bi || k == bj) continue;
        Rat c1 = minv(0, 0) * a(bi, k) + minv(0, 1) * a(bj, k);
        Rat c2 = minv(1, 0) * a(bi, k) + minv(1, 1) * a(bj, k);
        if (c1 != 0) add_col(k, bi, -c1);
        if (c2 != 0) add_col(k, bj, -c2);
      }
      Piece pc;
      pc.col_a = bi;
      pc.col_b = bj;
      pc.exponent = vmin;
      Rat pe = 1;
      for (long long t = 0; t < vmin; ++t) pe *= Rat(p);
      pc.m2 = RMat{{a(bi, bi) / pe, a(bi, bj) / pe}, {a(bi, bj) / pe, a(bj, bj) / pe}};
      Rat d2 = pc.m2(0, 0) * pc.m2(1, 1) - pc.m2(0, 1) * pc.m2(1, 0);
      Int dm8 = rat_mod(d2, 8);
      if (dm8 == 7) pc.kind = 1;
      else if (dm8 == 3) pc.kind = 2;
      else throw std::logic_error("even binary block with determinant not -1 or 3 mod 8");
      pieces.push_back(std::move(pc));
      active[static_cast<size_t>(bi)] = false;
      active[static_cast<size_t>(bj)] = false;
      remaining -= 2;
    }
  }

  // canonical unit representatives
  Int lnr = p == 2 ? Int(0) : least_nonresidue(p);
  for (Piece& pc : pieces) {
    if (pc.kind != 0) continue;
    if (p == 2) pc.canonical_unit = rat_mod(pc.unit, 8);
    else pc.canonical_unit = legendre_rat_unit(pc.unit, p) == 1 ? Int(1) : lnr;
  }

  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) {
    if (x.exponent != y.exponent) return x.exponent < y.exponent;
    if (x.kind != y.kind) return x.kind < y.kind;
    return x.canonical_unit < y.canonical_unit;
  });

  // assemble blocks and the mod-p^K witness column by column
  JordanDecomposition out;
  out.p = p;
  out.n = n;
  out.precision = precision;
  RMat w(n, n);
  int col = 0;
  std::vector<std::pair<long long, IMat>> scaled;  // (exponent, canonical hessian piece)
  for (const Piece& pc : pieces) {
    if (pc.kind == 0) {
      // rescale witness s with s^2 * unit = canonical mod p^K
      Rat ratio = Rat(pc.canonical_unit) / pc.unit;
      Int s;
      if (!sqrt_mod_prime_power(rat_mod(ratio, pk), p, precision, s))
        throw std::logic_error("unit canonicalization is not a square");
      for (int r = 0; r < n; ++r) w(r, col) = e(r, pc.col_a) * s;
      IMat h1(1, 1);
      h1(0, 0) = 2 * pc.canonical_unit;
      scaled.emplace_back(pc.exponent, std::move(h1));
      col += 1;
    } else {
      IMat target = pc.kind == 1 ? hessian_xy() : hessian_hex();
      IMat m_int(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m_int(i, j) = rat_mod(pc.m2(i, j), pk);
      IMat t = find_binary_witness_mod8(m_int, target);
      t = lift_binary_witness(m_int, target, t, 3, precision);
      for (int r = 0; r < n; ++r) {
        w(r, col) = e(r, pc.col_a) * t(0, 0) + e(r, pc.col_b) * t(1, 0);
        w(r, col + 1) = e(r, pc.col_a) * t(0, 1) + e(r, pc.col_b) * t(1, 1);
      }
      scaled.emplace_back(pc.exponent, std::move(target));
      col += 2;
    }
  }

  // group consecutive pieces of equal exponent into blocks
  for (size_t i = 0; i < scaled.size();) {
    long long ex = scaled[i].first;
    QuadraticForm blk{scaled[i].second};
    size_t j = i + 1;
    while (j < scaled.size() && scaled[j].first == ex) {
      blk = blk.direct_sum(QuadraticForm(scaled[j].second));
      ++j;
    }
    out.blocks.push_back({ex, std::move(blk)});
    i = j;
  }

  IMat witness(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) witness(i, j) = rat_mod(w(i, j), pk);
  out.witness = std::move(witness);

  // verify the congruence and unimodularity claims before returning
  QuadraticForm reassembled = jordan_reassemble(out);
  IMat lhs = out.witness.transpose() * q.hessian() * out.witness;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (mod_floor(lhs(i, j) - reassembled.hessian()(i, j), pk) != 0)
        throw std::logic_error("jordan witness congruence failed");
  if (mod_floor(det_bareiss(out.witness), p) == 0)
    throw std::logic_error("jordan witness not invertible mod p");
  return out;
}

QuadraticForm jordan_reassemble(const JordanDecomposition& d) {
  std::optional<QuadraticForm> acc;
  for (const JordanBlock& b : d.blocks) {
    Int pe = 1;
    for (long long t = 0; t < b.exponent; ++t) pe *= d.p;
    QuadraticForm scaled = b.block.scale(pe);
    acc = acc ? acc->direct_sum(scaled) : scaled;
  }
  return *acc;
}

std::vector<std::tuple<long long, int, Int, int>> jordan_profile(const QuadraticForm& q, const Int& p) {
  JordanDecomposition d = jordan_decompose(q, p);
  std::vector<std::tuple<long long, int, Int, int>> out;
  // per-scale unit determinants at 2 are only basis-free when no odd
  // constituent exists anywhere (sign walking needs one)
  bool all_even = true;
  if (p == 2)
    for (const JordanBlock& b : d.blocks)
      all_even = all_even && valuation(b.block.det_hessian(), 2) == 0;
  for (const JordanBlock& b : d.blocks) {
    Int det = b.block.det_hessian();
    Int det_data;
    int extra;
    if (p == 2) {
      long long v2 = valuation(det, 2);  // = number of u x^2 constituents
      det_data = all_even ? mod_floor(unit_part(det, 2), 8) : Int(0);
      extra = static_cast<int>(v2);
    } else {
      det_data = legendre(det, p);
      extra = 0;
    }
    out.emplace_back(b.exponent, b.block.n(), det_data, extra);
  }
  return out;
}

}  // namespace qf
