#pragma once

// Exact integer, rational and Z/p^M arithmetic shared by every other module.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mtlambda {

using Integer = mpz_class;
using Rational = mpq_class;

/// A nonnegative integer or +infinity. Used for p-adic valuations and for
/// Iwasawa invariants, where the zero element is assigned infinity.
class ExtendedInt {
 public:
  constexpr ExtendedInt() = default;
  constexpr ExtendedInt(std::int64_t v) : value_(v) {}

  static constexpr ExtendedInt infinity() {
    ExtendedInt r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  std::int64_t value() const;

  /// Decimal digits, or "inf".
  std::string to_string() const;

  friend constexpr bool operator==(const ExtendedInt& a, const ExtendedInt& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const ExtendedInt& a, const ExtendedInt& b) {
    if (a.infinite_ || b.infinite_) {
      return a.infinite_ == b.infinite_ ? std::strong_ordering::equal
             : a.infinite_              ? std::strong_ordering::greater
                                        : std::strong_ordering::less;
    }
    return a.value_ <=> b.value_;
  }

 private:
  std::int64_t value_ = 0;
  bool infinite_ = false;
};

// ---------------------------------------------------------------------------
// Elementary number theory.

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
Integer binomial(unsigned long n, unsigned long k);
Integer ipow(const Integer& base, unsigned long e);
std::uint64_t ipow_u64(std::uint64_t base, unsigned e);

/// Prime factorization of |n| (n != 0) by trial division and Pollard rho,
/// sorted by prime.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n);
/// All positive divisors of |n| (n != 0), unsorted.
std::vector<Integer> positive_divisors(const Integer& n);

/// Least nonnegative residue of a mod m (m > 0).
Integer mod_floor(const Integer& a, const Integer& m);

/// p-adic valuation; +infinity for zero.
ExtendedInt ordp(const Integer& x, std::uint64_t p);
ExtendedInt ordp(const Rational& x, std::uint64_t p);

// ---------------------------------------------------------------------------
// Z/p^M.

/// An element of Z/p^M, always stored reduced into [0, p^M).
class Residue {
 public:
  Residue(std::uint64_t p, unsigned precision, const Integer& value);
  static Residue zero(std::uint64_t p, unsigned precision) { return Residue(p, precision, 0); }
  static Residue one(std::uint64_t p, unsigned precision) { return Residue(p, precision, 1); }

  std::uint64_t prime() const { return p_; }
  unsigned precision() const { return precision_; }
  const Integer& modulus() const { return modulus_; }
  const Integer& value() const { return value_; }

  bool is_zero() const { return value_ == 0; }
  bool is_unit() const;
  /// Valuation of the representative; +infinity when zero mod p^M.
  ExtendedInt valuation() const;

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;
  Residue& operator+=(const Residue& o);
  Residue& operator*=(const Residue& o);
  Residue pow(const Integer& e) const;
  /// Throws std::domain_error for non-units.
  Residue inverse() const;

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.p_ == b.p_ && a.precision_ == b.precision_ && a.value_ == b.value_;
  }

 private:
  void check_compatible(const Residue& o) const;

  std::uint64_t p_;
  unsigned precision_;
  Integer modulus_;
  Integer value_;
};

/// Teichmüller representative of a unit a. For odd p this is the unique
/// (p-1)-st root of unity mod p^M congruent to a mod p; for p = 2 it is
/// +1 or -1 according to a mod 4.
Residue teichmuller(const Integer& a, std::uint64_t p, unsigned precision);

/// Exponent a' in [0, p^n) with gamma^{a'} = a / omega(a), where gamma = 1+p
/// (odd p, computed mod p^{n+1}) or gamma = 5 (p = 2, computed mod 2^{n+2}
/// modulo {+1,-1}). Throws std::domain_error if a is not a unit.
std::uint64_t cyclotomic_dlog(const Integer& a, std::uint64_t p, unsigned n);

/// The fixed topological generator: 1+p for odd p, 5 for p = 2.
std::uint64_t cyclotomic_generator(std::uint64_t p);

// ---------------------------------------------------------------------------
// Cusps and unimodular paths.

/// A point of P^1(Q) stored as num/den with gcd 1 and den >= 0; infinity is 1/0.
struct Cusp {
  Integer num = 1;
  Integer den = 0;

  Cusp() = default;
  Cusp(const Integer& n, const Integer& d);
  explicit Cusp(const Rational& r) : Cusp(r.get_num(), r.get_den()) {}
  static Cusp infinity() { return Cusp(); }

  bool is_infinity() const { return den == 0; }
  friend bool operator==(const Cusp& a, const Cusp& b) { return a.num == b.num && a.den == b.den; }
};

/// Integer 2x2 matrix (a b; c d) acting on cusps by Möbius transformation.
struct Mat2 {
  Integer a, b, c, d;

  Integer det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const;
  Cusp apply(const Cusp& z) const;
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// A matrix of determinant +-1; the geodesic it represents runs from g(0) to g(oo).
using UnimodularPath = Mat2;

/// Manin's continued-fraction decomposition: paths g_1..g_t with g_1(0) = oo,
/// g_i(oo) = g_{i+1}(0) and g_t(oo) = r. All returned matrices have det +1.
std::vector<UnimodularPath> cfrac_paths(const Rational& r);

/// Any g in SL2(Z) with g(oo) = z.
Mat2 sl2_moving_infinity_to(const Cusp& z);

}  // namespace mtlambda
