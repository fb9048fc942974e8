#include "quadforms/theta.hpp"

#include <boost/integer/common_factor_rt.hpp>
#include <cmath>
#include <thread>

#include "quadforms/numbers.hpp"

namespace qf {

namespace {

// Scaled completed-squares data: Bcom * Q(x) = sum_i alpha_i * (S_i x_i + C_i)^2
// with C_i = sum_{j>i} N_ij x_j; everything integral, alpha_i > 0.
struct ScaledLdl {
  int n;
  Int bcom;
  std::vector<Int> s, alpha;
  std::vector<std::vector<Int>> nmat;  // nmat[i][j], j > i
  Int work_bound;                      // max magnitude any engine value can reach
};

ScaledLdl build_scaled_ldl(const QuadraticForm& q, const Int& max_m) {
  if (!q.is_positive_definite())
    throw PreconditionError("representation enumeration requires a positive definite form");
  const int n = q.n();
  RMat a = q.gram();
  std::vector<Rat> d(static_cast<size_t>(n));
  std::vector<std::vector<Rat>> mu(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n)));
  for (int k = 0; k < n; ++k) {
    d[k] = a(k, k);
    if (d[k] <= 0) throw PreconditionError("form is not positive definite");
    for (int j = k + 1; j < n; ++j) mu[k][j] = a(k, j) / d[k];
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a(i, j) -= a(k, i) * a(k, j) / d[k];
  }
  ScaledLdl out;
  out.n = n;
  out.s.resize(n);
  out.alpha.resize(n);
  out.nmat.assign(n, std::vector<Int>(static_cast<size_t>(n)));
  std::vector<Rat> w(static_cast<size_t>(n));
  out.bcom = 1;
  for (int i = 0; i < n; ++i) {
    Int s = 1;
    for (int j = i + 1; j < n; ++j) s = boost::integer::lcm(s, den(mu[i][j]));
    out.s[i] = s;
    for (int j = i + 1; j < n; ++j) out.nmat[i][j] = num(mu[i][j]) * (s / den(mu[i][j]));
    w[i] = d[i] / Rat(s * s);
    out.bcom = boost::integer::lcm(out.bcom, den(w[i]));
  }
  for (int i = 0; i < n; ++i) out.alpha[i] = num(w[i]) * (out.bcom / den(w[i]));

  // conservative magnitude bounds for integer-type selection
  Int mb = out.bcom * (max_m < 0 ? Int(0) : max_m);
  Int bound = mb + 1;
  std::vector<Int> xmax(static_cast<size_t>(n)), cmax(static_cast<size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    Int y = isqrt_floor(mb / out.alpha[i]) + 1;
    Int c = 0;
    for (int j = i + 1; j < n; ++j) c += boost::multiprecision::abs(out.nmat[i][j]) * xmax[j];
    cmax[i] = c;
    xmax[i] = (y + c) / out.s[i] + 1;
    Int reach = out.s[i] * xmax[i] + c;
    bound = std::max(bound, std::max(Int(reach * reach), Int(c + y)));
    bound = std::max(bound, Int(mb + 2 * out.alpha[i]));  // headroom for alpha*y*y partials
  }
  out.work_bound = bound;
  return out;
}

template <class I>
I to_engine(const Int& v) {
  if constexpr (std::is_same_v<I, Int>) return v;
  else if constexpr (std::is_same_v<I, long long>) return static_cast<long long>(v);
  else {  // __int128
    bool neg = v < 0;
    Int av = neg ? Int(-v) : v;
    I hi = static_cast<long long>(av >> 62);
    I lo = static_cast<long long>(av & ((Int(1) << 62) - 1));
    I r = (hi << 62) + lo;
    return neg ? -r : r;
  }
}

template <class I>
Int from_engine(const I& v) {
  if constexpr (std::is_same_v<I, Int>) return v;
  else if constexpr (std::is_same_v<I, long long>) return Int(v);
  else {
    bool neg = v < 0;
    unsigned __int128 av = static_cast<unsigned __int128>(neg ? -v : v);
    Int r = (Int(static_cast<uint64_t>(av >> 64)) << 64) + Int(static_cast<uint64_t>(av));
    return neg ? -r : r;
  }
}

template <class I>
I isqrt_engine(const I& v) {
  if constexpr (std::is_same_v<I, Int>) {
    return isqrt_floor(v);
  } else {
    if (v < 0) throw std::logic_error("isqrt of negative");
    I r = static_cast<I>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
  }
}

template <class I>
struct Engine {
  int n;
  I bcom, mb;
  std::vector<I> s, alpha;
  std::vector<std::vector<I>> nmat;
  std::vector<I> x;
  Budget* budget;

  // histogram mode
  std::vector<long long>* hist = nullptr;
  // exact-value mode
  bool exact_mode = false;
  I target = 0;
  long long exact_count = 0;
  std::vector<std::vector<Int>>* vecs = nullptr;

  Engine(const ScaledLdl& ldl, const Int& max_m, Budget* b) : budget(b) {
    n = ldl.n;
    bcom = to_engine<I>(ldl.bcom);
    Int mm = max_m < 0 ? Int(0) : max_m;
    mb = to_engine<I>(ldl.bcom * mm);
    s.resize(n);
    alpha.resize(n);
    nmat.assign(n, std::vector<I>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) {
      s[i] = to_engine<I>(ldl.s[i]);
      alpha[i] = to_engine<I>(ldl.alpha[i]);
      for (int j = i + 1; j < n; ++j) nmat[i][j] = to_engine<I>(ldl.nmat[i][j]);
    }
    x.assign(n, I(0));
  }

  std::pair<I, I> range(int level, const I& acc, I& c_out) {
    I c = 0;
    for (int j = level + 1; j < n; ++j) c += nmat[level][j] * x[j];
    c_out = c;
    I rem = mb - acc;
    I ymax = isqrt_engine<I>(rem / alpha[level]);
    // x in [ceil((-c-ymax)/s), floor((-c+ymax)/s)]
    I a = -c - ymax, b = -c + ymax;
    I lo = a / s[level], hi = b / s[level];
    if (lo * s[level] < a) ++lo;  // ceil for positive s
    if (hi * s[level] > b) --hi;
    return {lo, hi};
  }

  void leaf(const I& acc, const I& c) {
    I rem = mb - acc;
    I ymax = isqrt_engine<I>(rem / alpha[0]);
    I a = -c - ymax, b = -c + ymax;
    I lo = a / s[0], hi = b / s[0];
    if (lo * s[0] < a) ++lo;
    if (hi * s[0] > b) --hi;
    if (lo > hi) return;
    if (budget) budget->charge(static_cast<long long>(hi - lo) + 1);
    for (I xi = lo; xi <= hi; ++xi) {
      I y = s[0] * xi + c;
      I v = acc + alpha[0] * y * y;
      if (hist) {
        ++(*hist)[static_cast<size_t>(static_cast<long long>(v / bcom))];
      } else if (exact_mode && v == target) {
        ++exact_count;
        if (vecs) {
          x[0] = xi;
          std::vector<Int> out(static_cast<size_t>(n));
          for (int k = 0; k < n; ++k) out[k] = from_engine<I>(x[k]);
          vecs->push_back(std::move(out));
        }
      }
    }
  }

  void rec(int level, const I& acc) {
    if (level == 0) {
      I c;
      {
        I cc = 0;
        for (int j = 1; j < n; ++j) cc += nmat[0][j] * x[j];
        c = cc;
      }
      leaf(acc, c);
      return;
    }
    if (budget) budget->charge();
    I c;
    auto [lo, hi] = range(level, acc, c);
    for (I xi = lo; xi <= hi; ++xi) {
      x[level] = xi;
      I y = s[level] * xi + c;
      rec(level - 1, acc + alpha[level] * y * y);
    }
  }

  // full run, optionally restricted to a top-level slice (for threading)
  void run() {
    if (n == 1) {
      leaf(I(0), I(0));
      return;
    }
    rec(n - 1, I(0));
  }

  void run_slice(const I& top_lo, const I& top_hi) {
    if (n == 1) {
      leaf(I(0), I(0));
      return;
    }
    for (I xi = top_lo; xi <= top_hi; ++xi) {
      x[n - 1] = xi;
      I y = s[n - 1] * xi;
      rec(n - 2, alpha[n - 1] * y * y);
    }
  }
};

constexpr int kLongLongBits = 61;
constexpr int kInt128Bits = 125;

int bits_of(const Int& v) {
  return static_cast<int>(boost::multiprecision::msb(v < 0 ? Int(-v) : v + (v == 0 ? 1 : 0))) + 1;
}

template <class Fn>
void with_engine(const QuadraticForm& q, const Int& max_m, Budget* budget, Fn&& fn) {
  ScaledLdl ldl = build_scaled_ldl(q, max_m);
  int bits = bits_of(ldl.work_bound);
  if (bits <= kLongLongBits) {
    Engine<long long> e(ldl, max_m, budget);
    fn(e, ldl);
  } else if (bits <= kInt128Bits) {
    Engine<__int128> e(ldl, max_m, budget);
    fn(e, ldl);
  } else {
    Engine<Int> e(ldl, max_m, budget);
    fn(e, ldl);
  }
}

}  // namespace

Int count_representations(const QuadraticForm& q, const Int& m, Budget* budget) {
  if (m < 0) return 0;
  Int result = 0;
  with_engine(q, m, budget, [&](auto& e, const ScaledLdl& ldl) {
    e.exact_mode = true;
    e.target = e.bcom * to_engine<std::decay_t<decltype(e.bcom)>>(m);
    (void)ldl;
    e.run();
    result = e.exact_count;
  });
  return result;
}

std::vector<std::vector<Int>> representation_vectors(const QuadraticForm& q, const Int& m,
                                                     Budget* budget) {
  std::vector<std::vector<Int>> out;
  if (m < 0) return out;
  with_engine(q, m, budget, [&](auto& e, const ScaledLdl& ldl) {
    e.exact_mode = true;
    e.target = e.bcom * to_engine<std::decay_t<decltype(e.bcom)>>(m);
    e.vecs = &out;
    (void)ldl;
    e.run();
  });
  return out;
}

std::vector<Int> theta_coefficients(const QuadraticForm& q, long long max_m, int threads,
                                    Budget* budget) {
  if (max_m < 0) throw PreconditionError("theta_coefficients: negative bound");
  std::vector<long long> hist(static_cast<size_t>(max_m) + 1, 0);
  with_engine(q, Int(max_m), budget, [&](auto& e, const ScaledLdl& ldl) {
    using I = std::decay_t<decltype(e.bcom)>;
    if (threads <= 1 || q.n() == 1) {
      e.hist = &hist;
      e.run();
      return;
    }
    // split the outermost coordinate range across workers
    I c_unused;
    auto [lo, hi] = e.range(q.n() - 1, I(0), c_unused);
    if (lo > hi) return;
    long long total = static_cast<long long>(hi - lo) + 1;
    int nw = static_cast<int>(std::min<long long>(threads, total));
    std::vector<std::vector<long long>> parts(static_cast<size_t>(nw),
                                              std::vector<long long>(hist.size(), 0));
    std::vector<Budget> part_budgets(static_cast<size_t>(nw));
    if (budget)
      for (auto& pb : part_budgets) pb.max_nodes = budget->max_nodes / nw;
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(nw));
    for (int t = 0; t < nw; ++t) {
      workers.emplace_back([&, t]() {
        try {
          Engine<I> w(ldl, Int(max_m), budget ? &part_budgets[static_cast<size_t>(t)] : nullptr);
          w.hist = &parts[static_cast<size_t>(t)];
          I a = lo + I(t) * (I(total) / nw) + I(std::min<long long>(t, total % nw));
          I b = a + I(total / nw) - 1 + I(t < total % nw ? 1 : 0);
          w.run_slice(a, b);
        } catch (...) {
          errors[static_cast<size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
    for (const auto& part : parts)
      for (size_t i = 0; i < hist.size(); ++i) hist[i] += part[i];
    if (budget)
      for (const auto& pb : part_budgets) budget->used += pb.used;
  });
  std::vector<Int> out(hist.size());
  for (size_t i = 0; i < hist.size(); ++i) out[i] = hist[i];
  return out;
}

ModularMetadata modular_metadata(const QuadraticForm& q) {
  if (!q.is_nondegenerate()) throw PreconditionError("modular metadata of degenerate form");
  ModularMetadata md;
  md.weight = Rat(q.n(), 2);
  md.level = q.level();
  Rat disc = q.det_gram();
  if ((q.n() / 2) % 2 == 1) disc = -disc;
  md.character_disc = squarefree_part(disc);
  md.half_integral = q.n() % 2 == 1;
  return md;
}

int character_value(const Int& squarefree_disc, const Int& d) {
  Int fd = squarefree_disc;
  if (mod_floor(fd, 4) != 1) fd *= 4;  // fundamental discriminant attached to sqrt(D)
  return kronecker(fd, d);
}

}  // namespace qf
