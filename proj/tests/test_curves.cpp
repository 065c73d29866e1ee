#include "mtlambda/curves.hpp"
#include "mtlambda/qseries.hpp"
#include "mtlambda/tables.hpp"

#include <doctest.h>

#include "support.hpp"

using namespace mtlambda;

namespace {

WeierstrassCurve short_curve(long a4, long a6) { return make_curve("t", {0, 0, 0, a4, a6}, 1); }

// #E(F_l) - 1 by trying every (x, y).
long brute_affine_points(const WeierstrassCurve& e, long l) {
  auto m = [l](const Integer& v) { return static_cast<long>(mod_floor(v, l).get_si()); };
  const long a1 = m(e.a1), a2 = m(e.a2), a3 = m(e.a3), a4 = m(e.a4), a6 = m(e.a6);
  long count = 0;
  for (long x = 0; x < l; ++x)
    for (long y = 0; y < l; ++y) {
      const long lhs = (y * y + a1 * x * y + a3 * y) % l;
      const long rhs = (((x * x % l) * x) + a2 * x % l * x + a4 * x + a6) % l;
      if ((lhs - rhs) % l == 0) ++count;
    }
  return count;
}

}  // namespace

TEST_CASE("parse curve lines") {
  auto r = parse_curves("27a1 [0,0,1,0,-7] 27\n");
  REQUIRE(r.curves.size() == 1);
  CHECK(r.errors.empty());
  CHECK(r.curves[0].a3 == 1);
  CHECK(r.curves[0].a6 == -7);
  CHECK(r.curves[0].discriminant() == -ipow(Integer(3), 9));
  CHECK(parse_curves("").curves.empty());
  CHECK(parse_curves("# only a comment\n\n").curves.empty());
  r = parse_curves("27a1 [0,0,1] 27\n");
  CHECK(r.curves.empty());
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].line == 1);
  CHECK(r.errors[0].reason.find("expected 5 coefficients") != std::string::npos);
  CHECK_FALSE(parse_curves("x [0,0,0,0,0] 1\n").errors.empty());
  CHECK_THROWS_AS(make_curve("s", {0, 0, 0, 0, 0}, 1), std::invalid_argument);
}

TEST_CASE("point counts") {
  const auto e = short_curve(1, 0);
  CHECK(count_points(e, 3).a == 0);
  CHECK(brute_affine_points(e, 3) + 1 == 4);
  CHECK(count_points(short_curve(0, 1), 5).a == 0);
  const auto r = count_points(testing::curve("27a1"), 3);
  CHECK(r.type == ReductionType::additive);
  CHECK(r.a == 0);
  const auto s = count_points(testing::curve("11a1"), 11);
  CHECK(s.type == ReductionType::split_multiplicative);
  CHECK(s.a == 1);
  CHECK(count_points(testing::curve("11a1"), 2).a == -2);
  CHECK_THROWS_AS(count_points(e, 9), std::invalid_argument);
}

TEST_CASE("point counts match enumeration") {
  for (const char* label : {"11a1", "27a1", "32a1", "153a1", "441e1"}) {
    const auto& e = testing::curve(label);
    for (std::uint64_t l : primes_up_to(97)) {
      const auto r = count_points(e, l);
      if (r.type != ReductionType::good) continue;
      CHECK_MESSAGE(r.a == static_cast<long>(l) - brute_affine_points(e, static_cast<long>(l)), label << " l=" << l);
      CHECK(r.a * r.a <= 4 * static_cast<long>(l));
    }
  }
}

TEST_CASE("group law") {
  const auto e = testing::curve("11a1");
  const RationalPoint p{5, 5};
  REQUIRE(on_curve(e, p));
  CHECK(multiply_point(e, p, 5).infinity);
  CHECK_FALSE(multiply_point(e, p, 4).infinity);
  CHECK(add_points(e, p, negate_point(e, p)).infinity);
  CHECK(add_points(e, p, RationalPoint::zero()) == p);
}

TEST_CASE("rational p-torsion") {
  auto t = has_rational_p_torsion(short_curve(0, 1), 2);
  CHECK(t.found);
  REQUIRE(t.witness);
  CHECK(*t.witness == RationalPoint{-1, 0});
  const auto e27a3 = make_curve("27a3", {0, 0, 1, 0, 0}, 27);
  t = has_rational_p_torsion(e27a3, 3);
  CHECK(t.found);
  REQUIRE(t.witness);
  CHECK(multiply_point(e27a3, *t.witness, 3).infinity);
  t = has_rational_p_torsion(short_curve(0, -2), 2);
  CHECK_FALSE(t.found);
  CHECK_FALSE(t.explanation.empty());
  CHECK_FALSE(has_rational_p_torsion(short_curve(0, -2), 3).found);
  CHECK(has_rational_p_torsion(testing::curve("27a1"), 3).found);
  CHECK(has_rational_p_torsion(testing::curve("32a1"), 2).found);
}

TEST_CASE("additive reduction") {
  CHECK(is_additive_at(testing::curve("27a1"), 3));
  CHECK_FALSE(is_additive_at(short_curve(1, 0), 5));
  CHECK_FALSE(is_additive_at(testing::curve("11a1"), 11));
  CHECK_FALSE(is_additive_at(testing::curve("27a1"), 5));
}

TEST_CASE("bundled curves are consistent with their conductors") {
  for (const auto& e : testing::bundled_curves()) {
    CAPTURE(e.label);
    // Bad primes of the model are the primes of N; p^2 | N exactly at additive primes.
    for (std::uint64_t l : prime_divisors(e.conductor)) {
      CHECK(e.discriminant() % l == 0);
      CHECK(is_additive_at(e, l) == (e.conductor % (l * l) == 0));
    }
    Integer d = abs(e.discriminant());
    for (std::uint64_t l : prime_divisors(e.conductor))
      while (d % l == 0) d /= l;
    CHECK(d == 1);
    // Each tabulated class is additive at its prime.
    for (std::uint64_t p : {2u, 3u, 5u, 7u})
      if (find_published_row(e.label, p)) CHECK(is_additive_at(e, p));
  }
}

TEST_CASE("a_l against tau(l)") {
  const QSeries delta = delta_qexp(1000);
  auto r = verify_tau_congruence(testing::curve("27a1"), 3, 1000, &delta);
  CHECK(r.pass());
  CHECK(r.hypothesis_holds);
  CHECK(r.primes_checked > 100);
  r = verify_tau_congruence(testing::curve("32a1"), 2, 1000, &delta);
  CHECK(r.pass());
  const auto control = short_curve(0, -2);
  for (std::uint64_t p : {2u, 3u}) {
    r = verify_tau_congruence(control, p, 100, &delta);
    CHECK_FALSE(r.hypothesis_holds);
    REQUIRE_FALSE(r.mismatches.empty());
    CHECK(r.mismatches.front() < 100);
  }
}
