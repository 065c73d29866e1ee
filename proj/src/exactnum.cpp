#include "mtlambda/exactnum.hpp"

#include <algorithm>
#include <stdexcept>

namespace mtlambda {

std::int64_t ExtendedInt::value() const {
  if (infinite_) throw std::logic_error("ExtendedInt::value() on infinity");
  return value_;
}

std::string ExtendedInt::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % q == 0) return n == q;
  }
  if (n < 37 * 37) return true;
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::uint64_t ipow_u64(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

namespace {

Integer pollard_rho(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](const Integer& v) { return mod_floor(v * v + c, n); };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      Integer diff = abs(x - y);
      d = gcd(diff, n);
    }
    if (d != n) return d;
  }
}

void factor_into(Integer n, std::vector<Integer>& primes) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
    primes.push_back(n);
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n) {
  if (n == 0) throw std::invalid_argument("factor_integer: zero");
  Integer m = abs(n);
  std::vector<Integer> primes;
  for (unsigned long q = 2; q < 10000 && q * q <= m; ++q) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
      primes.emplace_back(q);
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), q);
    }
  }
  factor_into(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Integer, unsigned>> out;
  for (const Integer& q : primes) {
    if (!out.empty() && out.back().first == q) {
      ++out.back().second;
    } else {
      out.emplace_back(q, 1);
    }
  }
  return out;
}

std::vector<Integer> positive_divisors(const Integer& n) {
  std::vector<Integer> divs{1};
  for (const auto& [q, e] : factor_integer(n)) {
    const std::size_t count = divs.size();
    Integer power = 1;
    for (unsigned i = 1; i <= e; ++i) {
      power *= q;
      for (std::size_t j = 0; j < count; ++j) divs.push_back(divs[j] * power);
    }
  }
  return divs;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

ExtendedInt ordp(const Integer& x, std::uint64_t p) {
  if (x == 0) return ExtendedInt::infinity();
  Integer t = x;
  std::int64_t v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

ExtendedInt ordp(const Rational& x, std::uint64_t p) {
  if (x == 0) return ExtendedInt::infinity();
  // Reduced form: at most one of numerator and denominator is divisible by p.
  ExtendedInt num = ordp(x.get_num(), p);
  ExtendedInt den = ordp(x.get_den(), p);
  return num.value() - den.value();
}

// ---------------------------------------------------------------------------

Residue::Residue(std::uint64_t p, unsigned precision, const Integer& value)
    : p_(p), precision_(precision) {
  if (p < 2) throw std::invalid_argument("Residue: p must be prime");
  if (precision == 0) throw std::invalid_argument("Residue: precision must be >= 1");
  modulus_ = ipow(Integer(static_cast<unsigned long>(p)), precision);
  value_ = mod_floor(value, modulus_);
}

void Residue::check_compatible(const Residue& o) const {
  if (p_ != o.p_ || precision_ != o.precision_) {
    throw std::invalid_argument("Residue: mismatched rings");
  }
}

bool Residue::is_unit() const { return !mpz_divisible_ui_p(value_.get_mpz_t(), p_); }

ExtendedInt Residue::valuation() const { return ordp(value_, p_); }

Residue Residue::operator+(const Residue& o) const {
  check_compatible(o);
  return Residue(p_, precision_, value_ + o.value_);
}

Residue Residue::operator-(const Residue& o) const {
  check_compatible(o);
  return Residue(p_, precision_, value_ - o.value_);
}

Residue Residue::operator*(const Residue& o) const {
  check_compatible(o);
  return Residue(p_, precision_, value_ * o.value_);
}

Residue Residue::operator-() const { return Residue(p_, precision_, -value_); }

Residue& Residue::operator+=(const Residue& o) {
  check_compatible(o);
  value_ += o.value_;
  if (value_ >= modulus_) value_ -= modulus_;
  return *this;
}

Residue& Residue::operator*=(const Residue& o) {
  check_compatible(o);
  value_ = mod_floor(value_ * o.value_, modulus_);
  return *this;
}

Residue Residue::pow(const Integer& e) const {
  Integer r;
  if (e < 0) return inverse().pow(-e);
  mpz_powm(r.get_mpz_t(), value_.get_mpz_t(), e.get_mpz_t(), modulus_.get_mpz_t());
  return Residue(p_, precision_, r);
}

Residue Residue::inverse() const {
  Integer r;
  if (!is_unit() || mpz_invert(r.get_mpz_t(), value_.get_mpz_t(), modulus_.get_mpz_t()) == 0) {
    throw std::domain_error("Residue::inverse: not a unit");
  }
  return Residue(p_, precision_, r);
}

// ---------------------------------------------------------------------------

Residue teichmuller(const Integer& a, std::uint64_t p, unsigned precision) {
  if (mpz_divisible_ui_p(a.get_mpz_t(), p)) {
    throw std::domain_error("teichmuller: argument is not a unit");
  }
  if (p == 2) {
    Integer r = mod_floor(a, 4);
    return Residue(2, precision, r == 1 ? 1 : -1);
  }
  // a -> a^p converges to the root of unity in at most `precision` steps.
  Residue w(p, precision, a);
  const Integer exponent(static_cast<unsigned long>(p));
  for (unsigned i = 0; i <= precision; ++i) {
    Residue next = w.pow(exponent);
    if (next == w) return w;
    w = next;
  }
  return w;
}

std::uint64_t cyclotomic_generator(std::uint64_t p) { return p == 2 ? 5 : p + 1; }

std::uint64_t cyclotomic_dlog(const Integer& a, std::uint64_t p, unsigned n) {
  if (mpz_divisible_ui_p(a.get_mpz_t(), p)) {
    throw std::domain_error("cyclotomic_dlog: argument is not a unit");
  }
  // Working modulus p^{n+1} (odd p) or 2^{n+2}; the principal units there form
  // a cyclic group of order p^n generated by gamma.
  const unsigned shift = p == 2 ? 2 : 1;
  const Integer pz(static_cast<unsigned long>(p));
  const Integer modulus = ipow(pz, n + shift);
  const Residue omega = teichmuller(a, p, n + shift);
  const Integer target = mod_floor(a * omega.inverse().value(), modulus);
  const Integer gamma(static_cast<unsigned long>(cyclotomic_generator(p)));

  // Solve gamma^x = target one p-adic digit at a time: at step i the exponent
  // is correct modulo p^i, which determines target modulo p^{i+shift}.
  std::uint64_t x = 0;
  std::uint64_t place = 1;
  Integer check;
  for (unsigned i = 1; i <= n; ++i) {
    const Integer mod_i = ipow(pz, i + shift);
    const Integer want = mod_floor(target, mod_i);
    bool found = false;
    for (std::uint64_t digit = 0; digit < p; ++digit) {
      const std::uint64_t candidate = x + digit * place;
      mpz_powm_ui(check.get_mpz_t(), gamma.get_mpz_t(), candidate, mod_i.get_mpz_t());
      if (check == want) {
        x = candidate;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("cyclotomic_dlog: no digit found");
    place *= p;
  }
  return x;
}

// ---------------------------------------------------------------------------

Cusp::Cusp(const Integer& n, const Integer& d) : num(n), den(d) {
  if (num == 0 && den == 0) throw std::invalid_argument("Cusp: 0/0");
  Integer g = gcd(num, den);
  num /= g;
  den /= g;
  if (den < 0 || (den == 0 && num < 0)) {
    num = -num;
    den = -den;
  }
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Cusp Mat2::apply(const Cusp& z) const { return Cusp(a * z.num + b * z.den, c * z.num + d * z.den); }

std::vector<UnimodularPath> cfrac_paths(const Rational& r) {
  // Convergents p_k/q_k with p_{-1}/q_{-1} = 1/0; path k runs from
  // p_{k-1}/q_{k-1} to p_k/q_k and is (p_k, +-p_{k-1}; q_k, +-q_{k-1}).
  std::vector<UnimodularPath> paths;
  Integer num = r.get_num();
  Integer den = r.get_den();
  Integer p_prev = 1, q_prev = 0;
  Integer p_prev2 = 0, q_prev2 = 1;
  while (den != 0) {
    Integer quot;
    mpz_fdiv_q(quot.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Integer rem = num - quot * den;
    Integer pk = quot * p_prev + p_prev2;
    Integer qk = quot * q_prev + q_prev2;
    Mat2 g{pk, p_prev, qk, q_prev};
    if (g.det() < 0) {
      g.b = -g.b;
      g.d = -g.d;
    }
    paths.push_back(g);
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = pk;
    q_prev = qk;
    num = den;
    den = rem;
  }
  return paths;
}

Mat2 sl2_moving_infinity_to(const Cusp& z) {
  if (z.is_infinity()) return {1, 0, 0, 1};
  // Need (a b; c d) with a/c = z and ad - bc = 1.
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), z.num.get_mpz_t(), z.den.get_mpz_t());
  // s*num + t*den = 1  ->  a = num, c = den, d = s, b = -t.
  return {z.num, -t, z.den, s};
}

}  // namespace mtlambda
