#include "mtlambda/curves.hpp"

#include <regex>
#include <sstream>
#include <stdexcept>

namespace mtlambda {

Integer WeierstrassCurve::b2() const { return a1 * a1 + 4 * a2; }
Integer WeierstrassCurve::b4() const { return 2 * a4 + a1 * a3; }
Integer WeierstrassCurve::b6() const { return a3 * a3 + 4 * a6; }
Integer WeierstrassCurve::b8() const {
  return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
}
Integer WeierstrassCurve::c4() const { return b2() * b2() - 24 * b4(); }
Integer WeierstrassCurve::c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
Integer WeierstrassCurve::discriminant() const {
  const Integer B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
  return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

std::string WeierstrassCurve::ainvs_string() const {
  return "[" + a1.get_str() + "," + a2.get_str() + "," + a3.get_str() + "," + a4.get_str() + "," +
         a6.get_str() + "]";
}

WeierstrassCurve make_curve(std::string label, const std::vector<Integer>& ainvs, std::uint64_t conductor) {
  if (ainvs.size() != 5) throw std::invalid_argument("expected 5 coefficients");
  WeierstrassCurve e{std::move(label), ainvs[0], ainvs[1], ainvs[2], ainvs[3], ainvs[4], conductor};
  if (e.discriminant() == 0) throw std::invalid_argument("singular model (zero discriminant)");
  if (conductor == 0) throw std::invalid_argument("conductor must be positive");
  return e;
}

std::string to_string(ReductionType t) {
  switch (t) {
    case ReductionType::good: return "good";
    case ReductionType::split_multiplicative: return "split multiplicative";
    case ReductionType::nonsplit_multiplicative: return "nonsplit multiplicative";
    case ReductionType::additive: return "additive";
  }
  return "?";
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t reduce(const Integer& a, std::uint64_t ell) {
  return mpz_fdiv_ui(a.get_mpz_t(), ell);
}

ReductionData reduce_at_two(const WeierstrassCurve& e) {
  const unsigned a1 = reduce(e.a1, 2), a2 = reduce(e.a2, 2), a3 = reduce(e.a3, 2), a4 = reduce(e.a4, 2),
                 a6 = reduce(e.a6, 2);
  auto F = [&](unsigned x, unsigned y) { return (y * y + a1 * x * y + a3 * y + x * x * x + a2 * x * x + a4 * x + a6) % 2; };
  if (mpz_odd_p(e.discriminant().get_mpz_t())) {
    long affine = 0;
    for (unsigned x = 0; x < 2; ++x)
      for (unsigned y = 0; y < 2; ++y)
        if (F(x, y) == 0) ++affine;
    return {2, ReductionType::good, 3 - (affine + 1)};
  }
  for (unsigned x = 0; x < 2; ++x) {
    for (unsigned y = 0; y < 2; ++y) {
      const unsigned fx = (a1 * y + 3 * x * x + 2 * a2 * x + a4) % 2;
      const unsigned fy = (2 * y + a1 * x + a3) % 2;
      if (F(x, y) != 0 || fx != 0 || fy != 0) continue;
      // Tangent cone at the singular point: v^2 + a1 uv + (a2 + x) u^2 over F_2.
      if (a1 == 0) return {2, ReductionType::additive, 0};
      return (a2 + x) % 2 == 0 ? ReductionData{2, ReductionType::split_multiplicative, 1}
                               : ReductionData{2, ReductionType::nonsplit_multiplicative, -1};
    }
  }
  throw std::logic_error("count_points: no singular point mod 2 on a singular reduction");
}

}  // namespace

ReductionData count_points(const WeierstrassCurve& e, std::uint64_t ell, std::uint64_t enumeration_bound) {
  if (!is_prime(ell)) throw std::invalid_argument("count_points: ell must be prime");
  if (ell > enumeration_bound) {
    throw std::out_of_range("count_points: ell = " + std::to_string(ell) + " exceeds the enumeration bound " +
                            std::to_string(enumeration_bound));
  }
  if (ell == 2) return reduce_at_two(e);

  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
  const std::uint64_t b2 = reduce(e.b2(), ell), b4 = reduce(e.b4(), ell), b6 = reduce(e.b6(), ell);
  auto f = [&](std::uint64_t x) {
    std::uint64_t v = (4 * x + b2) % ell;
    v = (v * x + 2 * b4) % ell;
    return (v * x + b6) % ell;
  };
  std::vector<signed char> chi(ell, -1);
  chi[0] = 0;
  for (std::uint64_t y = 1; y < ell; ++y) chi[(y * y) % ell] = 1;

  if (!mpz_divisible_ui_p(e.discriminant().get_mpz_t(), ell)) {
    long sum = 0;
    for (std::uint64_t x = 0; x < ell; ++x) sum += chi[f(x)];
    return {ell, ReductionType::good, -sum};
  }
  for (std::uint64_t x = 0; x < ell; ++x) {
    const std::uint64_t df = ((12 * x % ell) * x + 2 * b2 * x + 2 * b4) % ell;
    if (f(x) != 0 || df != 0) continue;
    // Tangent cone Y^2 = (12 x0 + b2) (x - x0)^2.
    const std::uint64_t t = (12 * x + b2) % ell;
    if (t == 0) return {ell, ReductionType::additive, 0};
    return chi[t] == 1 ? ReductionData{ell, ReductionType::split_multiplicative, 1}
                       : ReductionData{ell, ReductionType::nonsplit_multiplicative, -1};
  }
  throw std::logic_error("count_points: no singular point on a singular reduction");
}

bool is_additive_at(const WeierstrassCurve& e, std::uint64_t p) {
  return mpz_divisible_ui_p(e.c4().get_mpz_t(), p) && mpz_divisible_ui_p(e.discriminant().get_mpz_t(), p);
}

// ---------------------------------------------------------------------------

bool on_curve(const WeierstrassCurve& e, const RationalPoint& p) {
  if (p.infinity) return true;
  const Rational& x = p.x;
  const Rational& y = p.y;
  Rational lhs = y * y + Rational(e.a1) * x * y + Rational(e.a3) * y;
  Rational rhs = x * x * x + Rational(e.a2) * x * x + Rational(e.a4) * x + Rational(e.a6);
  return lhs == rhs;
}

RationalPoint negate_point(const WeierstrassCurve& e, const RationalPoint& p) {
  if (p.infinity) return p;
  Rational y = -p.y - Rational(e.a1) * p.x - Rational(e.a3);
  return {p.x, y, false};
}

RationalPoint add_points(const WeierstrassCurve& e, const RationalPoint& p, const RationalPoint& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  const Rational a1(e.a1), a2(e.a2), a3(e.a3), a4(e.a4), a6(e.a6);
  Rational lambda, nu;
  if (p.x != q.x) {
    lambda = (q.y - p.y) / (q.x - p.x);
    nu = (p.y * q.x - q.y * p.x) / (q.x - p.x);
  } else {
    Rational denom = p.y + q.y + a1 * q.x + a3;
    if (denom == 0) return RationalPoint::zero();
    const Rational& x = p.x;
    lambda = (3 * x * x + 2 * a2 * x + a4 - a1 * p.y) / denom;
    nu = (-x * x * x + a4 * x + 2 * a6 - a3 * p.y) / denom;
  }
  Rational x3 = lambda * lambda + a1 * lambda - a2 - p.x - q.x;
  Rational y3 = -(lambda + a1) * x3 - nu - a3;
  return {x3, y3, false};
}

RationalPoint multiply_point(const WeierstrassCurve& e, const RationalPoint& p, unsigned long n) {
  RationalPoint acc = RationalPoint::zero();
  RationalPoint base = p;
  while (n > 0) {
    if (n & 1) acc = add_points(e, acc, base);
    base = add_points(e, base, base);
    n >>= 1;
  }
  return acc;
}

namespace {

Rational eval_poly(const std::vector<Integer>& coeffs, const Rational& x) {
  // coeffs from highest degree down.
  Rational v = 0;
  for (const Integer& c : coeffs) v = v * x + Rational(c);
  return v;
}

// Rational roots of an integer polynomial (highest degree first, nonzero leading coefficient).
std::vector<Rational> rational_roots(std::vector<Integer> coeffs) {
  std::vector<Rational> roots;
  // Strip zero roots.
  while (!coeffs.empty() && coeffs.back() == 0) {
    coeffs.pop_back();
    if (roots.empty()) roots.emplace_back(0);
  }
  if (coeffs.size() <= 1) return roots;
  const std::vector<Integer> nums = positive_divisors(coeffs.back());
  const std::vector<Integer> dens = positive_divisors(coeffs.front());
  std::vector<Rational> seen;
  for (const Integer& d : dens) {
    for (const Integer& r : nums) {
      for (int sign : {1, -1}) {
        Rational x(sign * r, d);
        x.canonicalize();
        if (std::find(seen.begin(), seen.end(), x) != seen.end()) continue;
        seen.push_back(x);
        if (eval_poly(coeffs, x) == 0) roots.push_back(x);
      }
    }
  }
  return roots;
}

bool rational_sqrt(const Rational& v, Rational& out) {
  if (v < 0) return false;
  Integer n = v.get_num(), d = v.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  Integer sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  out = Rational(sn, sd);
  out.canonicalize();
  return true;
}

}  // namespace

TorsionResult has_rational_p_torsion(const WeierstrassCurve& e, std::uint64_t p) {
  if (p != 2 && p != 3) throw std::invalid_argument("has_rational_p_torsion: p must be 2 or 3");
  const Integer b2 = e.b2(), b4 = e.b4(), b6 = e.b6(), b8 = e.b8();
  const Rational a1(e.a1), a3(e.a3);
  TorsionResult res;
  if (p == 2) {
    for (const Rational& x : rational_roots({4, b2, 2 * b4, b6})) {
      RationalPoint pt{x, -(a1 * x + a3) / 2, false};
      res.found = true;
      res.witness = pt;
      res.explanation = "rational root x = " + x.get_str() + " of 4x^3 + b2 x^2 + 2 b4 x + b6";
      return res;
    }
    res.explanation = "4x^3 + b2 x^2 + 2 b4 x + b6 has no rational root (rational-root test)";
    return res;
  }
  const std::vector<Rational> roots = rational_roots({3, b2, 3 * b4, 3 * b6, b8});
  for (const Rational& x : roots) {
    Rational f = 4 * x * x * x + Rational(b2) * x * x + 2 * Rational(b4) * x + Rational(b6);
    Rational s;
    if (f == 0 || !rational_sqrt(f, s)) continue;
    RationalPoint pt{x, (s - a1 * x - a3) / 2, false};
    res.found = true;
    res.witness = pt;
    res.explanation = "rational root x = " + x.get_str() + " of the 3-division polynomial with rational y";
    return res;
  }
  res.explanation = roots.empty() ? "3-division polynomial has no rational root (rational-root test)"
                                  : "no rational root of the 3-division polynomial gives a rational y";
  return res;
}

// ---------------------------------------------------------------------------

ParseResult parse_curves(std::string_view text) {
  static const std::regex line_re(R"(^(\S+)\s*\[([^\]]*)\]\s*(\S*)\s*$)");
  ParseResult out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);

    std::smatch m;
    if (!std::regex_match(line, m, line_re)) {
      out.errors.push_back({lineno, "expected `label [a1,a2,a3,a4,a6] conductor`"});
      continue;
    }
    std::vector<Integer> ainvs;
    std::string bad;
    std::stringstream coeffs(m[2].str());
    std::string tok;
    while (std::getline(coeffs, tok, ',')) {
      tok.erase(0, tok.find_first_not_of(" \t"));
      tok.erase(tok.find_last_not_of(" \t") + 1);
      Integer v;
      if (tok.empty() || v.set_str(tok, 10) != 0) {
        bad = tok;
        break;
      }
      ainvs.push_back(v);
    }
    if (!bad.empty() || (ainvs.empty() && !m[2].str().empty())) {
      out.errors.push_back({lineno, "invalid integer coefficient '" + bad + "'"});
      continue;
    }
    if (ainvs.size() != 5) {
      out.errors.push_back({lineno, "expected 5 coefficients"});
      continue;
    }
    const std::string cond = m[3].str();
    if (cond.empty()) {
      out.errors.push_back({lineno, "missing conductor"});
      continue;
    }
    if (cond.find_first_not_of("0123456789") != std::string::npos || cond.size() > 18) {
      out.errors.push_back({lineno, "invalid conductor '" + cond + "'"});
      continue;
    }
    try {
      out.curves.push_back(make_curve(m[1].str(), ainvs, std::stoull(cond)));
    } catch (const std::invalid_argument& ex) {
      out.errors.push_back({lineno, ex.what()});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

TauCongruenceReport verify_tau_congruence(const WeierstrassCurve& e, std::uint64_t p, std::uint64_t bound,
                                          const QSeries* delta) {
  TauCongruenceReport r;
  r.label = e.label;
  r.p = p;
  r.bound = bound;
  r.hypothesis_holds = has_rational_p_torsion(e, p).found;
  QSeries local;
  if (delta == nullptr || delta->bound() < bound) {
    local = delta_qexp(bound);
    delta = &local;
  }
  const Integer disc = e.discriminant();
  for (std::uint64_t l : primes_up_to(bound)) {
    if (l == p || e.conductor % l == 0 || mpz_divisible_ui_p(disc.get_mpz_t(), l)) continue;
    ++r.primes_checked;
    const long a = count_points(e, l).a;
    Integer diff = (*delta)[l] - a;
    if (!mpz_divisible_ui_p(diff.get_mpz_t(), p)) r.mismatches.push_back(l);
  }
  return r;
}

}  // namespace mtlambda
