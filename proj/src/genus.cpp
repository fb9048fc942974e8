#include "quadforms/genus.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "quadforms/matrix.hpp"
#include "quadforms/numbers.hpp"
#include "quadforms/theta.hpp"

namespace qf {

namespace {

/// Depth-first search over basis images with matching norms and products.
struct IsoSearch {
  const QuadraticForm& a;
  const QuadraticForm& b;
  Budget* budget;
  int n;
  bool count_all;
  std::vector<std::vector<std::vector<Int>>> cand;
  std::vector<std::vector<Int>> chosen;
  std::vector<std::vector<Int>> hb_chosen;  // H_b * image, for O(n) product checks
  Int count = 0;
  bool improper = false;
  std::optional<IMat> found;

  IsoSearch(const QuadraticForm& a_, const QuadraticForm& b_, bool all, Budget* bud)
      : a(a_), b(b_), budget(bud), n(a_.n()), count_all(all) {
    std::map<Int, std::vector<std::vector<Int>>> by_norm;
    for (int i = 0; i < n; ++i) {
      Int norm = a.coeff(i, i);
      auto it = by_norm.find(norm);
      if (it == by_norm.end())
        it = by_norm.emplace(norm, representation_vectors(b, norm, budget)).first;
      cand.push_back(it->second);
    }
  }

  void rec(int k) {
    if (k == n) {
      IMat mat(n, n);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) mat(i, j) = chosen[j][i];
      Int d = det_bareiss(mat);
      if (d != 1 && d != -1) return;  // Gram match without a basis of the full lattice
      ++count;
      if (d == -1) improper = true;
      if (!found) found = mat;
      return;
    }
    for (const auto& v : cand[k]) {
      if (budget) budget->charge();
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) {
        Int dot = 0;
        for (int i = 0; i < n; ++i) dot += hb_chosen[j][i] * v[i];
        if (dot != a.coeff(k, j)) ok = false;
      }
      if (!ok) continue;
      chosen.push_back(v);
      hb_chosen.push_back(b.hessian() * v);
      rec(k + 1);
      chosen.pop_back();
      hb_chosen.pop_back();
      if (!count_all && found) return;
    }
  }
};

std::vector<Int> theta_screen_of(const QuadraticForm& f, long long len) {
  return theta_coefficients(f, len);
}

}  // namespace

Rat GenusCatalog::mass() const {
  Rat m = 0;
  for (const auto& r : reps) m += Rat(1) / Rat(r.aut_order);
  return m;
}

std::pair<Int, bool> automorphism_count(const QuadraticForm& q, Budget* budget) {
  if (!q.is_positive_definite())
    throw PreconditionError("automorphism count requires a positive definite form");
  IsoSearch s(q, q, true, budget);
  s.rec(0);
  return {s.count, s.improper};
}

std::optional<IMat> isometry_Z(const QuadraticForm& a, const QuadraticForm& b, Budget* budget) {
  if (a.n() != b.n()) return std::nullopt;
  if (!a.is_positive_definite() || !b.is_positive_definite())
    throw PreconditionError("isometry search requires positive definite forms");
  if (a.det_hessian() != b.det_hessian()) return std::nullopt;
  IsoSearch s(a, b, false, budget);
  s.rec(0);
  return s.found;
}

bool is_isometric_Z(const QuadraticForm& a, const QuadraticForm& b, Budget* budget) {
  if (a.n() != b.n() || a.det_hessian() != b.det_hessian()) return false;
  if (a.level() != b.level()) return false;
  if (theta_screen_of(a, 16) != theta_screen_of(b, 16)) return false;
  return isometry_Z(a, b, budget).has_value();
}

std::vector<std::vector<Int>> isotropic_points_mod_p(const QuadraticForm& q, const Int& p,
                                                     Budget* budget) {
  if (p == 2 || !is_probable_prime(p)) throw PreconditionError("p must be an odd prime");
  int n = q.n();
  std::vector<std::vector<Int>> out;
  for (int lead = 0; lead < n; ++lead) {
    std::vector<Int> v(n, 0);
    v[lead] = 1;
    while (true) {
      if (budget) budget->charge();
      if (mod_floor(q.evaluate(v), p) == 0) {
        std::vector<Int> hv = q.hessian() * v;
        bool nonsingular = false;
        for (const Int& c : hv)
          if (mod_floor(c, p) != 0) nonsingular = true;
        if (nonsingular) out.push_back(v);
      }
      int k = lead + 1;
      while (k < n && ++v[k] == p) v[k++] = 0;
      if (k == n) break;
    }
  }
  return out;
}

NeighborResult p_neighbor(const QuadraticForm& q, const std::vector<Int>& x, const Int& p) {
  if (p == 2 || !is_probable_prime(p)) throw PreconditionError("p must be an odd prime");
  int n = q.n();
  if (static_cast<int>(x.size()) != n) throw PreconditionError("point dimension mismatch");
  Int content = 0;  // gcd of the coefficients of Q; imprimitive forms are rejected
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      content = boost::multiprecision::gcd(content, q.coeff(i, j));
  if (content != 1) throw PreconditionError("form must be primitive (unit coefficient gcd)");
  Int qx = q.evaluate(x);
  if (mod_floor(qx, p) != 0) throw PreconditionError("point is not isotropic mod p");
  std::vector<Int> hx = q.hessian() * x;
  int t = -1;
  for (int i = 0; i < n && t < 0; ++i)
    if (mod_floor(hx[i], p) != 0) t = i;
  if (t < 0) throw PreconditionError("singular isotropic point");

  // lift to Q(w) = 0 mod p^2 by w = x + p c e_t
  std::vector<Int> w = x;
  if (mod_floor(qx, p * p) != 0) {
    Int c = mod_floor(-(qx / p) * mod_inverse(hx[t], p), p);
    w[t] += p * c;
  }
  Int qw = q.evaluate(w);
  if (mod_floor(qw, p * p) != 0) throw std::logic_error("isotropy lift failed");
  std::vector<Int> hw = q.hessian() * w;
  Int inv_t = mod_inverse(hw[t], p);

  // rows generate p L' = Z w + p K
  IMat rows(n + 1, n);
  for (int j = 0; j < n; ++j) rows(0, j) = w[j];
  int r = 1;
  for (int j = 0; j < n; ++j) {
    if (j == t) continue;
    Int cj = mod_floor(hw[j] * inv_t, p);
    rows(r, j) = p;
    rows(r, t) -= p * cj;
    ++r;
  }
  rows(r, t) = p * p;

  IMat basis_rows = hnf_row_basis(rows);
  IMat scaled = basis_rows * q.hessian() * basis_rows.transpose();
  Int p2 = p * p;
  IMat hess(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (scaled(i, j) % p2 != 0) throw std::logic_error("neighbor Hessian not integral");
      hess(i, j) = scaled(i, j) / p2;
    }
  RMat basis(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) basis(i, j) = Rat(basis_rows(j, i), p);
  return NeighborResult{QuadraticForm(hess), basis, w, t};
}

std::vector<QuadraticForm> all_p_neighbors(const QuadraticForm& q, const Int& p, Budget* budget) {
  std::vector<QuadraticForm> out;
  for (const auto& x : isotropic_points_mod_p(q, p, budget)) {
    if (budget) budget->charge();
    out.push_back(p_neighbor(q, x, p).form);
  }
  return out;
}

namespace {

struct RepScreens {
  Int level;
  std::vector<Int> theta;
};

int classify(const QuadraticForm& f, const std::vector<GenusRepresentative>& reps,
             const std::vector<RepScreens>& screens, const RepScreens& fs, Budget* budget) {
  for (size_t j = 0; j < reps.size(); ++j) {
    if (screens[j].level != fs.level || screens[j].theta != fs.theta) continue;
    if (isometry_Z(reps[j].form, f, budget)) return static_cast<int>(j);
  }
  return -1;
}

}  // namespace

GenusCatalog genus_enumerate(const QuadraticForm& q, const GenusOptions& opts) {
  if (!q.is_positive_definite())
    throw PreconditionError("genus enumeration requires a positive definite form");
  int n = q.n();
  std::vector<Int> primes = opts.primes;
  if (primes.empty()) {
    for (Int p = 3; static_cast<int>(primes.size()) < 2; p += 2)
      if (is_probable_prime(p) && q.det_hessian() % p != 0) primes.push_back(p);
  }
  for (const Int& p : primes)
    if (p == 2 || !is_probable_prime(p) || q.det_hessian() % p == 0)
      throw PreconditionError("neighbor primes must be odd and coprime to the determinant");

  GenusCatalog cat;
  cat.primes_used = primes;
  std::vector<RepScreens> screens;
  Rat mass_acc = 0;

  auto add_rep = [&](const QuadraticForm& f, const RepScreens& fs) {
    auto [aut, improper] = automorphism_count(f, opts.budget);
    cat.reps.push_back({f, aut, improper});
    screens.push_back(fs);
    mass_acc += Rat(1) / Rat(aut);
  };

  add_rep(q, {q.level(), theta_screen_of(q, opts.theta_screen)});
  std::deque<size_t> queue{0};
  bool target_hit = opts.mass_target && mass_acc == *opts.mass_target;

  while (!queue.empty() && !target_hit) {
    size_t i = queue.front();
    queue.pop_front();
    QuadraticForm base = cat.reps[i].form;
    for (const Int& p : primes) {
      if (target_hit) break;
      for (const auto& x : isotropic_points_mod_p(base, p, opts.budget)) {
        QuadraticForm nb = p_neighbor(base, x, p).form;
        RepScreens fs{nb.level(), theta_screen_of(nb, opts.theta_screen)};
        if (classify(nb, cat.reps, screens, fs, opts.budget) >= 0) continue;
        if (static_cast<long long>(cat.reps.size()) >= opts.max_classes)
          throw BudgetExceededError("genus class bound exceeded");
        add_rep(nb, fs);
        queue.push_back(cat.reps.size() - 1);
        if (opts.mass_target && mass_acc == *opts.mass_target) {
          target_hit = true;
          break;
        }
      }
    }
  }

  if (target_hit)
    cat.completeness_certified = true;
  else if (opts.mass_target)
    cat.completeness_certified = false;  // closed without reaching the stated mass
  else
    cat.completeness_certified = n >= 3 && primes.size() >= 2;
  return cat;
}

NeighborGraph neighbor_graph(const GenusCatalog& catalog, const Int& p, Budget* budget) {
  size_t h = catalog.reps.size();
  NeighborGraph g{p, std::vector<std::vector<long long>>(h, std::vector<long long>(h, 0))};
  std::vector<RepScreens> screens;
  for (const auto& r : catalog.reps) screens.push_back({r.form.level(), theta_screen_of(r.form, 16)});
  for (size_t i = 0; i < h; ++i) {
    for (const auto& f : all_p_neighbors(catalog.reps[i].form, p, budget)) {
      RepScreens fs{f.level(), theta_screen_of(f, 16)};
      int j = classify(f, catalog.reps, screens, fs, budget);
      if (j < 0) throw UnsupportedError("neighbor falls outside the catalog");
      ++g.edges[i][static_cast<size_t>(j)];
    }
  }
  return g;
}

}  // namespace qf
