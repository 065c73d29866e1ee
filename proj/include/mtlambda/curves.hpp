#pragma once

// Weierstrass models over Q: reduction mod primes, rational torsion,
// curve files and the tau congruence check.

#include "mtlambda/exactnum.hpp"
#include "mtlambda/qseries.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mtlambda {

struct WeierstrassCurve {
  std::string label;
  Integer a1, a2, a3, a4, a6;
  std::uint64_t conductor = 0;

  Integer b2() const;
  Integer b4() const;
  Integer b6() const;
  Integer b8() const;
  Integer c4() const;
  Integer c6() const;
  Integer discriminant() const;
  /// "[a1,a2,a3,a4,a6]"
  std::string ainvs_string() const;
};

/// Throws std::invalid_argument for a singular model or zero conductor.
WeierstrassCurve make_curve(std::string label, const std::vector<Integer>& ainvs, std::uint64_t conductor);

enum class ReductionType { good, split_multiplicative, nonsplit_multiplicative, additive };
std::string to_string(ReductionType t);

struct ReductionData {
  std::uint64_t ell;
  ReductionType type;
  long a;
};

constexpr std::uint64_t kDefaultEnumerationBound = 1000000;

/// Throws std::invalid_argument if ell is not prime, std::out_of_range if it
/// exceeds the enumeration bound.
ReductionData count_points(const WeierstrassCurve& e, std::uint64_t ell,
                           std::uint64_t enumeration_bound = kDefaultEnumerationBound);

// ---------------------------------------------------------------------------

struct RationalPoint {
  Rational x, y;
  bool infinity = false;
  static RationalPoint zero() { return {0, 0, true}; }
  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

bool on_curve(const WeierstrassCurve& e, const RationalPoint& p);
RationalPoint negate_point(const WeierstrassCurve& e, const RationalPoint& p);
RationalPoint add_points(const WeierstrassCurve& e, const RationalPoint& p, const RationalPoint& q);
RationalPoint multiply_point(const WeierstrassCurve& e, const RationalPoint& p, unsigned long n);

struct TorsionResult {
  bool found = false;
  std::optional<RationalPoint> witness;
  /// Why no point exists (which rational-root test failed), or how it was found.
  std::string explanation;
};

/// p in {2, 3}. A returned witness has exact order p.
TorsionResult has_rational_p_torsion(const WeierstrassCurve& e, std::uint64_t p);

/// p | c4 and p | discriminant of the supplied (assumed minimal) model.
bool is_additive_at(const WeierstrassCurve& e, std::uint64_t p);

// ---------------------------------------------------------------------------

struct ParseError {
  std::size_t line;
  std::string reason;
};

struct ParseResult {
  std::vector<WeierstrassCurve> curves;
  std::vector<ParseError> errors;
};

/// Lines `label [a1,a2,a3,a4,a6] conductor`; `#` starts a comment.
ParseResult parse_curves(std::string_view text);

// ---------------------------------------------------------------------------

struct TauCongruenceReport {
  std::string label;
  std::uint64_t p = 0;
  std::uint64_t bound = 0;
  bool hypothesis_holds = false;
  std::size_t primes_checked = 0;
  std::vector<std::uint64_t> mismatches;
  bool pass() const { return mismatches.empty(); }
};

/// Compares a_l(E) with tau(l) mod p for primes l <= bound, l not dividing
/// p * N_E (nor the model discriminant). `delta` must reach `bound` if given.
TauCongruenceReport verify_tau_congruence(const WeierstrassCurve& e, std::uint64_t p, std::uint64_t bound,
                                          const QSeries* delta = nullptr);

}  // namespace mtlambda
