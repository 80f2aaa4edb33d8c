#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "freesum/matrix.hpp"
#include "freesum/numbers.hpp"

namespace freesum {

struct HnfResult {
  IntMatrix h;  // row Hermite normal form of the input
  IntMatrix u;  // unimodular, u * m = h
};

/// Row Hermite normal form. Pivots are positive, entries above a pivot are
/// nonnegative and strictly smaller than the pivot, zero rows sink to the
/// bottom.
HnfResult hnf(const IntMatrix& m);

struct SnfResult {
  IntMatrix s;  // diagonal, d1 | d2 | ..., nonnegative
  IntMatrix u;  // unimodular, u * m * v = s
  IntMatrix v;  // unimodular
};

/// Smith normal form with transformation matrices.
SnfResult snf(const IntMatrix& m);

/// Nonzero diagonal entries of snf(m).s.
IntVector invariant_factors(const IntMatrix& m);

/// Basis of {x : x * m = 0} as rows; the basis spans a saturated sublattice.
IntMatrix kernel_rows(const IntMatrix& m);

/// One integer solution of y * m = rhs, if any.
std::optional<IntVector> solve_integer_row(const IntMatrix& m,
                                           const IntVector& rhs);

/// Full-rank sublattice of Z^ambient, basis kept in row Hermite normal form.
class Lattice {
 public:
  explicit Lattice(std::size_t ambient_dim)
      : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  static Lattice from_vectors(std::size_t ambient_dim,
                              const std::vector<IntVector>& vs);
  /// The full lattice Z^n.
  static Lattice full(std::size_t n);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  IntVector basis_row(std::size_t i) const { return basis_.row(i); }

  bool contains(const IntVector& v) const;
  /// Coordinates of v in the basis; nullopt when v is not in the lattice.
  std::optional<IntVector> coordinates_of(const IntVector& v) const;
  /// v from coordinates: coords * basis.
  IntVector from_coordinates(const IntVector& coords) const;

  bool operator==(const Lattice& o) const = default;

 private:
  std::size_t ambient_;
  IntMatrix basis_;
};

/// {v in Z^ambient : k*v in l for some k >= 1}.
Lattice saturate(const Lattice& l);

Lattice intersect(const Lattice& a, const Lattice& b);
Lattice lattice_sum(const Lattice& a, const Lattice& b);

/// Whether v extends to a basis of l; MembershipError when v is outside l.
bool is_unimodular_element(const IntVector& v, const Lattice& l);

/// Whether l / <vs> is torsionfree; each vs[i] must lie in l.
bool quotient_is_torsionfree(const Lattice& l, const std::vector<IntVector>& vs);

/// Whether the map l -> Z^n, v |-> (forms[i] . v), is surjective.
/// Forms are ambient functionals restricted to l.
bool forms_surject(const std::vector<IntVector>& forms, const Lattice& l);

/// Whether an integer row map given by its matrix on a basis hits all of Z^n
/// (n = columns): rank n and all invariant factors 1.
bool matrix_surjects(const IntMatrix& value_matrix);

/// Integer functional w with w . g >= 1 for every g in gens, via
/// Fourier-Motzkin elimination; nullopt when the configuration is not
/// pointed. Zero generators are ignored.
std::optional<IntVector> find_positive_grading(
    const std::vector<IntVector>& gens);

/// Nonnegative integer solution c of sum c_i gens[i] = target, if any.
/// Requires a positive grading on the generators (found internally);
/// UnsupportedError otherwise. Search is exhaustive within the degree bound,
/// so absence is definitive.
std::optional<IntVector> solve_nonneg_integral(
    const std::vector<IntVector>& gens, const IntVector& target);

/// Same search with caller-supplied degrees: deg(gens[i]) = gen_degrees[i]
/// must be positive for nonzero generators; target_degree = deg(target).
std::optional<IntVector> solve_nonneg_integral(
    const std::vector<IntVector>& gens, const IntVector& target,
    const IntVector& gen_degrees, const Int& target_degree);

}  // namespace freesum
