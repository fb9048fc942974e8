#pragma once

#include <optional>

#include "quadforms/forms.hpp"

namespace qf {

struct GenusRepresentative {
  QuadraticForm form;
  Int aut_order;                   // |O(L)|, proper and improper together
  bool has_improper_automorphism;  // some isometry of determinant -1
};

struct GenusCatalog {
  std::vector<GenusRepresentative> reps;
  std::vector<Int> primes_used;
  bool completeness_certified = false;

  /// sum over classes of 1/|Aut|
  Rat mass() const;
};

/// |O(L)| for positive definite Q, plus whether a determinant -1 isometry
/// exists, by backtracking over images of the basis vectors.
std::pair<Int, bool> automorphism_count(const QuadraticForm& q, Budget* budget = nullptr);

/// Integral isometry between two positive definite forms, if one exists
/// (columns of the result map the basis of a onto vectors of b).
std::optional<IMat> isometry_Z(const QuadraticForm& a, const QuadraticForm& b,
                               Budget* budget = nullptr);
bool is_isometric_Z(const QuadraticForm& a, const QuadraticForm& b, Budget* budget = nullptr);

/// Projective points x mod p with Q(x) = 0 mod p and Hx != 0 mod p, one
/// representative each (first nonzero coordinate 1).  p odd.
std::vector<std::vector<Int>> isotropic_points_mod_p(const QuadraticForm& q, const Int& p,
                                                     Budget* budget = nullptr);

/// L' = Z(w/p) + {v in L : H(v, w) = 0 mod p} on a distinguished basis.
struct NeighborResult {
  QuadraticForm form;
  RMat basis;               // columns: basis of L' in the coordinates of L
  std::vector<Int> lifted;  // w = x + p z with Q(w) = 0 mod p^2
  int pivot;                // index t with (Hw)_t != 0 mod p
};

/// The p-neighbor at the isotropic line through x.  Requires p odd,
/// Q(x) = 0 mod p, and Hx != 0 mod p.
NeighborResult p_neighbor(const QuadraticForm& q, const std::vector<Int>& x, const Int& p);

/// One neighbor per nonsingular projective isotropic point.
std::vector<QuadraticForm> all_p_neighbors(const QuadraticForm& q, const Int& p,
                                           Budget* budget = nullptr);

struct GenusOptions {
  std::vector<Int> primes;  // neighbor primes; smallest two good odd primes if empty
  std::optional<Rat> mass_target;
  long long max_classes = 10000;
  long long theta_screen = 16;  // coefficients compared before the full isometry search
  Budget* budget = nullptr;
};

/// Closure of the p-neighbor step from q, deduplicated up to Z-isometry.
/// completeness_certified holds when dim >= 3 with at least two good primes,
/// or when the stated mass target is reached exactly.
GenusCatalog genus_enumerate(const QuadraticForm& q, const GenusOptions& opts = {});

/// edges[i][j] = number of p-neighbors of rep i that land in class j.
struct NeighborGraph {
  Int p;
  std::vector<std::vector<long long>> edges;
};
NeighborGraph neighbor_graph(const GenusCatalog& catalog, const Int& p, Budget* budget = nullptr);

}  // namespace qf
