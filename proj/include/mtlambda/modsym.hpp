#pragma once

// Modular symbols of weight k for Gamma_0(N), presented by Manin symbols
// [X^i Y^{k-2-i}, (c:d)] modulo the two- and three-term relations.
//
// Conventions: GL2 acts on polynomials on the left by
//   (g P)(X, Y) = P(d X - b Y, -c X + a Y),
// the Manin symbol [P, g] is g (P {0, oo}), and a functional L on the plus
// quotient is paired with the form through L(P {alpha, beta}) ~ int P(z, 1) f(z) dz.

#include "mtlambda/exactnum.hpp"
#include "mtlambda/linalg.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace mtlambda {

/// Coefficients c_i of X^i Y^{deg-i}, i = 0..deg.
using IntPoly = std::vector<Integer>;

struct HomogeneousPoly {
  std::vector<Rational> coeffs;  // coefficient of X^i Y^{k-2-i}
  friend bool operator==(const HomogeneousPoly&, const HomogeneousPoly&) = default;
};

/// P(a X + b Y, c X + d Y).
IntPoly substitute(const IntPoly& p, const Integer& a, const Integer& b, const Integer& c, const Integer& d);
/// Left action (g P)(X, Y) = P(d X - b Y, -c X + a Y).
IntPoly act_left(const Mat2& g, const IntPoly& p);
IntPoly monomial(unsigned degree, unsigned i);

/// P^1(Z/N) with a dense lookup table (N <= kMaxLevel).
class P1List {
 public:
  static constexpr std::uint64_t kMaxLevel = 2048;
  explicit P1List(std::uint64_t n);

  std::uint64_t level() const { return n_; }
  std::size_t size() const { return reps_.size(); }
  std::pair<std::uint64_t, std::uint64_t> operator[](std::size_t i) const { return reps_[i]; }
  /// Index of (c : d); requires gcd(c, d, N) = 1.
  std::size_t index(const Integer& c, const Integer& d) const;
  std::size_t index_u64(std::uint64_t c, std::uint64_t d) const;
  /// A matrix in SL2(Z) whose bottom row reduces to the i-th point.
  Mat2 lift(std::size_t i) const;

 private:
  std::uint64_t n_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> reps_;
  std::vector<std::int32_t> table_;  // (c mod N) * N + (d mod N) -> index, -1 if not primitive
};

/// Gamma_0(N)-equivalence of cusps.
bool cusps_equivalent(const Cusp& a, const Cusp& b, std::uint64_t n);
/// Number of Gamma_0(N) cusp classes, by direct enumeration.
std::size_t count_cusp_classes(std::uint64_t n);

class ManinSymbolSpace {
 public:
  ManinSymbolSpace(std::uint64_t level, unsigned weight);

  std::uint64_t level() const { return level_; }
  unsigned weight() const { return weight_; }
  const P1List& p1() const { return *p1_; }
  std::shared_ptr<const P1List> p1_shared() const { return p1_; }

  std::size_t num_generators() const { return (weight_ - 1) * p1_->size(); }
  std::size_t generator_id(unsigned i, std::size_t p1_index) const { return i * p1_->size() + p1_index; }

  std::size_t dimension() const { return full_basis_.size(); }
  std::size_t plus_dimension() const { return plus_basis_.size(); }
  const std::vector<std::size_t>& basis() const { return full_basis_; }
  const std::vector<std::size_t>& plus_basis() const { return plus_basis_; }

  /// Coordinates of a generator in the full (resp. plus) basis, indexed by basis position.
  SparseVec coordinates(std::size_t generator) const;
  SparseVec plus_coordinates(std::size_t generator) const;

  /// Right action of g on a generator, as a combination of generators.
  std::vector<std::pair<std::size_t, Integer>> right_act(std::size_t generator, const Mat2& g) const;

  /// The involution induced by diag(-1, 1) on the full quotient, columns = images.
  RationalMatrix plus_involution() const;

  /// Dimensions of the cuspidal subspaces (kernel of the boundary map).
  std::size_t cuspidal_dimension() const;
  std::size_t cuspidal_plus_dimension() const;

  /// P {alpha, beta} as a combination of generators (unreduced).
  void expand(const IntPoly& p, const Cusp& alpha, const Cusp& beta,
              std::vector<std::pair<std::size_t, Integer>>& out) const;
  /// P {alpha, beta} in the plus basis.
  std::vector<Rational> plus_symbol(const IntPoly& p, const Cusp& alpha, const Cusp& beta) const;

  /// T_ell on the plus quotient (U_ell when ell | N), columns = images of basis vectors.
  RationalMatrix hecke_matrix(std::uint64_t ell) const;

 private:
  void expand_from_infinity(const IntPoly& p, const Cusp& r, const Integer& sign,
                            std::vector<std::pair<std::size_t, Integer>>& out) const;
  std::size_t boundary_rank(bool plus) const;

  std::uint64_t level_;
  unsigned weight_;
  std::shared_ptr<const P1List> p1_;
  std::unique_ptr<SparseEchelon> full_;
  std::unique_ptr<SparseEchelon> plus_;
  std::vector<std::size_t> full_basis_;
  std::vector<std::size_t> plus_basis_;
  std::vector<std::int64_t> full_pos_;  // generator -> basis position or -1
  std::vector<std::int64_t> plus_pos_;
};

/// A normalized Hecke eigen-functional on the plus quotient, realizing
/// phi_f / Omega_f^+. Values on every Manin generator are integers with
/// gcd 1; the first nonzero one is positive.
struct EigenSymbol {
  std::uint64_t level = 0;
  unsigned weight = 0;
  std::shared_ptr<const P1List> p1;
  std::vector<Integer> coordinates;       // on the plus basis
  std::vector<Integer> generator_values;  // on every Manin generator
  std::map<std::uint64_t, Integer> eigenvalues;

  /// L(P {alpha, beta}).
  Integer pair(const IntPoly& p, const Cusp& alpha, const Cusp& beta) const;
  /// L(P {oo, r}).
  Integer pair_from_infinity(const IntPoly& p, const Cusp& r) const;
  /// Coefficient of Y^{k-2} in phi({oo} - {r}), i.e. L(Y^{k-2} {r, oo}).
  Integer value_at_01(const Rational& r) const;
};

constexpr std::uint64_t kDefaultEigenPrimeBound = 50;

/// Intersects ker(T_l^t - a_l) over the supplied primes (in increasing
/// order, stopping at `prime_bound`) until the eigenspace is a line.
/// Throws std::runtime_error("not rank one") or ("no eigenvector").
EigenSymbol eigen_symbol(const ManinSymbolSpace& space, const std::map<std::uint64_t, Integer>& eigen_data,
                         std::uint64_t prime_bound = kDefaultEigenPrimeBound);

/// Rebuilds the derived fields from cached generator values.
EigenSymbol eigen_symbol_from_values(std::uint64_t level, unsigned weight, std::vector<Integer> generator_values,
                                     std::vector<Integer> coordinates, std::map<std::uint64_t, Integer> eigenvalues);

/// phi({oo} - {r}): coefficient of X^j Y^{k-2-j} is binom(k-2, j) L(X^j Y^{k-2-j} {r, oo}).
HomogeneousPoly evaluate(const EigenSymbol& phi, const Rational& r);
/// phi({beta} - {alpha}) for the path alpha -> beta.
HomogeneousPoly evaluate_path(const EigenSymbol& phi, const Cusp& alpha, const Cusp& beta);

}  // namespace mtlambda
