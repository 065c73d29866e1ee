#pragma once

// Mazur-Tate elements in (Z/p^M)[X]/((1+X)^{p^n} - 1) and their Iwasawa invariants.

#include "mtlambda/exactnum.hpp"
#include "mtlambda/modsym.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace mtlambda {

/// a -> C_a over the units a mod p^{n+1} (odd p) or 2^{n+shift} (p = 2).
struct RawTheta {
  std::uint64_t p = 0;
  unsigned n = 0;
  std::uint64_t modulus = 0;
  /// Level of the group ring the element projects to: log_p of the size of
  /// the image of (Z/modulus)^x modulo the torsion (omega) part.
  unsigned ring_level = 0;
  std::vector<std::uint64_t> units;  // increasing
  std::vector<Integer> values;       // values[i] = C_{units[i]}

  bool is_exactly_zero() const;
};

/// Exponent e with modulus 2^e at p = 2 is n + shift.
constexpr unsigned kDefaultTwoAdicShift = 1;

std::uint64_t theta_modulus(std::uint64_t p, unsigned n, unsigned two_adic_shift = kDefaultTwoAdicShift);

constexpr std::uint64_t kDefaultEvaluationBudget = 1000000;

/// C_a = phi({oo} - {a/m}) at (X, Y) = (0, 1). Parallel over a.
/// Throws std::length_error when phi(m) exceeds the budget.
RawTheta theta_raw(const EigenSymbol& phi, std::uint64_t p, unsigned n, unsigned threads = 0,
                   std::uint64_t budget = kDefaultEvaluationBudget,
                   unsigned two_adic_shift = kDefaultTwoAdicShift);
/// C_a from any callable, for tests and constructed inputs.
RawTheta raw_theta_from(std::uint64_t p, unsigned n, const std::function<Integer(std::uint64_t)>& value,
                        unsigned two_adic_shift = kDefaultTwoAdicShift);

/// How C_a is attached to the group element (1+X)^{a'}.
enum class ThetaProjection {
  /// sum C_a (1+X)^{a'}; for p = 2 only a = 1 mod 4 is summed.
  norm,
  /// sum C_a omega(a)^{-1} (1+X)^{a'}.
  teichmuller_twist,
};

class GroupRingElement {
 public:
  GroupRingElement(std::uint64_t p, unsigned n, unsigned precision);
  /// From coefficients of (1+X)^j, j < p^n (reduced mod p^M).
  static GroupRingElement from_gamma_basis(std::uint64_t p, unsigned n, unsigned precision,
                                           const std::vector<Integer>& b);
  /// From a polynomial in X of degree < p^n (shorter vectors are zero-padded).
  static GroupRingElement from_x_basis(std::uint64_t p, unsigned n, unsigned precision,
                                       const std::vector<Integer>& a);
  static GroupRingElement one(std::uint64_t p, unsigned n, unsigned precision);
  /// omega_m = (1+X)^{p^m} - 1 inside the level-n ring (m <= n).
  static GroupRingElement omega(std::uint64_t p, unsigned n, unsigned precision, unsigned m);

  std::uint64_t prime() const { return p_; }
  unsigned level() const { return n_; }
  unsigned precision() const { return precision_; }
  std::size_t size() const { return coeffs_.size(); }
  const Integer& modulus() const { return modulus_; }
  /// Coefficient of X^i in [0, p^M).
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  std::vector<Integer> gamma_coefficients() const;

  bool is_zero() const;
  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement scaled(const Integer& c) const;
  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

 private:
  void check_compatible(const GroupRingElement& o) const;

  std::uint64_t p_;
  unsigned n_;
  unsigned precision_;
  Integer modulus_;
  std::vector<Integer> coeffs_;
};

GroupRingElement project_twist(const RawTheta& theta, unsigned precision,
                               ThetaProjection projection = ThetaProjection::norm);
/// The exact integer coefficients of (1+X)^j before reduction (norm projection only).
std::vector<Integer> project_exact_gamma(const RawTheta& theta);

struct IwasawaInvariants {
  ExtendedInt mu;
  ExtendedInt lambda;
  bool precision_certified = false;
  friend bool operator==(const IwasawaInvariants&, const IwasawaInvariants&) = default;
};

constexpr unsigned kDefaultGuard = 2;

IwasawaInvariants mu_lambda(const GroupRingElement& f, unsigned guard = kDefaultGuard);

/// f / p^mu(f) at precision M - mu: the scaled element whose coefficients are
/// not all divisible by p. Throws std::domain_error when f is zero.
GroupRingElement primitive_rescaling(const GroupRingElement& f);

struct ThetaResult {
  GroupRingElement element;
  IwasawaInvariants invariants;
  bool exact_zero = false;
};

/// Projects at M = n + 12 and doubles M until mu < M - guard, or reports an
/// exact zero as (inf, inf) certified.
ThetaResult theta_invariants(const RawTheta& theta, ThetaProjection projection = ThetaProjection::norm,
                             unsigned guard = kDefaultGuard, std::optional<unsigned> initial_precision = {});

/// Level n+1 -> level n: (1+X)^j -> (1+X)^{j mod p^n}.
GroupRingElement corestrict(const GroupRingElement& f);

/// G with F = G * omega_n for F at level n+1. Throws std::domain_error("not divisible").
GroupRingElement divide_by_augmentation_cycle(const GroupRingElement& f);

/// X -> (1+X)^u - 1 for a unit u.
GroupRingElement change_generator(const GroupRingElement& f, std::uint64_t u);

struct NormRelationReport {
  std::uint64_t p = 0;
  unsigned n = 0;
  unsigned precision = 0;
  Integer a_p;
  bool pass = false;
  bool lhs_zero = false;
  bool rhs_zero = false;
  std::optional<std::size_t> first_failure;
};

/// cor(theta_{n+1}) == a_p * theta_n coefficientwise mod p^M.
NormRelationReport check_norm_relation(const GroupRingElement& theta_next, const GroupRingElement& theta,
                                       const Integer& a_p);

struct LowerBoundReport {
  std::uint64_t p = 0;
  unsigned n = 0;
  ExtendedInt lambda;
  std::uint64_t bound = 0;
  bool pass = false;
};

LowerBoundReport check_lambda_lower_bound(const GroupRingElement& theta, unsigned guard = kDefaultGuard);

struct ThetaComparison {
  bool congruent_mod_p = false;
  bool f_nonzero_mod_p = false;
  bool g_nonzero_mod_p = false;
  IwasawaInvariants f_invariants;
  IwasawaInvariants g_invariants;
  bool lambda_equal = false;
  /// Congruent after scaling g by some unit mod p.
  bool congruent_up_to_unit = false;
};

ThetaComparison compare_theta_mod_p(const GroupRingElement& f, const GroupRingElement& g);

}  // namespace mtlambda
