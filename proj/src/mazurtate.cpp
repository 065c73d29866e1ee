#include "mtlambda/mazurtate.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace mtlambda {

namespace {

constexpr unsigned kPrecisionCap = 4096;

unsigned modulus_exponent(std::uint64_t p, unsigned n, unsigned two_adic_shift) {
  if (p == 2) {
    if (n + two_adic_shift < 2) throw std::invalid_argument("theta: 2-adic modulus below 4");
    return n + two_adic_shift;
  }
  return n + 1;
}

unsigned ring_level_for(std::uint64_t p, unsigned exponent) { return p == 2 ? exponent - 2 : exponent - 1; }

Integer prime_power(std::uint64_t p, unsigned e) { return ipow(Integer(static_cast<unsigned long>(p)), e); }

std::size_t group_size(std::uint64_t p, unsigned n) {
  std::uint64_t s = ipow_u64(p, n);
  if (s > (std::uint64_t{1} << 24)) throw std::length_error("group ring too large");
  return static_cast<std::size_t>(s);
}

void reduce(std::vector<Integer>& v, const Integer& m) {
  for (Integer& x : v) x = mod_floor(x, m);
}

// a -> a' with a = torsion * gamma^{a'}, over the units mod p^e.
std::unordered_map<std::uint64_t, std::uint64_t> exponent_table(std::uint64_t p, unsigned e) {
  const std::uint64_t m = ipow_u64(p, e);
  const unsigned r = ring_level_for(p, e);
  const std::uint64_t len = ipow_u64(p, r);
  const std::uint64_t gamma = cyclotomic_generator(p) % m;

  // Torsion part: {+1, -1} for p = 2, the (p-1)-st roots of unity otherwise.
  std::vector<std::uint64_t> torsion;
  if (p == 2) {
    torsion = {1, m - 1};
    if (m == 2) torsion = {1};
  } else {
    for (std::uint64_t a = 1; a < p; ++a) {
      Residue w = teichmuller(Integer(static_cast<unsigned long>(a)), p, e);
      torsion.push_back(w.value().get_ui());
    }
  }
  std::unordered_map<std::uint64_t, std::uint64_t> table;
  table.reserve(static_cast<std::size_t>(len * torsion.size()));
  unsigned __int128 g = 1;
  for (std::uint64_t j = 0; j < len; ++j) {
    for (std::uint64_t t : torsion) {
      const auto u = static_cast<std::uint64_t>((g * t) % m);
      table.emplace(u, j);
    }
    g = (g * gamma) % m;
  }
  return table;
}

unsigned exponent_of(const RawTheta& t) {
  unsigned e = 0;
  for (std::uint64_t m = t.modulus; m > 1; m /= t.p) ++e;
  return e;
}

// b_j (1+X)^j  ->  sum a_i X^i, all degrees < L, by Horner in (1+X).
std::vector<Integer> gamma_to_x(const std::vector<Integer>& b, const Integer& m) {
  const std::size_t len = b.size();
  std::vector<Integer> f(len, 0);
  if (len == 0) return f;
  std::size_t deg = 0;
  f[0] = b[len - 1];
  for (std::size_t j = len - 1; j-- > 0;) {
    // f <- f * (1 + X) + b_j
    for (std::size_t i = deg + 1; i > 0; --i) {
      f[i] += f[i - 1];
      if (f[i] >= m) f[i] -= m;
    }
    ++deg;
    f[0] += b[j];
    f[0] = mod_floor(f[0], m);
  }
  return f;
}

std::vector<Integer> x_to_gamma(const std::vector<Integer>& a, const Integer& m) {
  const std::size_t len = a.size();
  std::vector<Integer> g(len, 0);
  if (len == 0) return g;
  std::size_t deg = 0;
  g[0] = a[len - 1];
  for (std::size_t i = len - 1; i-- > 0;) {
    // g <- g * (T - 1) + a_i, with T the shift.
    for (std::size_t j = deg + 1; j > 0; --j) {
      g[j] = g[j - 1] - g[j];
      if (g[j] < 0) g[j] += m;
    }
    g[0] = mod_floor(a[i] - g[0], m);
    ++deg;
  }
  return g;
}

}  // namespace

bool RawTheta::is_exactly_zero() const {
  return std::all_of(values.begin(), values.end(), [](const Integer& v) { return v == 0; });
}

std::uint64_t theta_modulus(std::uint64_t p, unsigned n, unsigned two_adic_shift) {
  if (!is_prime(p)) throw std::invalid_argument("theta: p must be prime");
  return ipow_u64(p, modulus_exponent(p, n, two_adic_shift));
}

RawTheta raw_theta_from(std::uint64_t p, unsigned n, const std::function<Integer(std::uint64_t)>& value,
                        unsigned two_adic_shift) {
  RawTheta t;
  t.p = p;
  t.n = n;
  t.modulus = theta_modulus(p, n, two_adic_shift);
  t.ring_level = ring_level_for(p, modulus_exponent(p, n, two_adic_shift));
  for (std::uint64_t a = 1; a < t.modulus; ++a)
    if (a % p != 0) t.units.push_back(a);
  t.values.reserve(t.units.size());
  for (std::uint64_t a : t.units) t.values.push_back(value(a));
  return t;
}

RawTheta theta_raw(const EigenSymbol& phi, std::uint64_t p, unsigned n, unsigned threads, std::uint64_t budget,
                   unsigned two_adic_shift) {
  RawTheta t;
  t.p = p;
  t.n = n;
  t.modulus = theta_modulus(p, n, two_adic_shift);
  t.ring_level = ring_level_for(p, modulus_exponent(p, n, two_adic_shift));
  const std::uint64_t count = t.modulus / p * (p - 1);
  if (count > budget)
    throw std::length_error("theta: " + std::to_string(count) + " evaluations exceed the budget of " +
                            std::to_string(budget));
  t.units.reserve(count);
  for (std::uint64_t a = 1; a < t.modulus; ++a)
    if (a % p != 0) t.units.push_back(a);
  t.values.assign(t.units.size(), 0);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, t.units.size() / 64)));
  const Integer m(static_cast<unsigned long>(t.modulus));
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < t.units.size(); i += step)
      t.values[i] = phi.value_at_01(Rational(Integer(static_cast<unsigned long>(t.units[i])), m));
  };
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work, i, threads);
    for (auto& th : pool) th.join();
  }
  return t;
}

// ---------------------------------------------------------------------------

GroupRingElement::GroupRingElement(std::uint64_t p, unsigned n, unsigned precision)
    : p_(p), n_(n), precision_(precision), modulus_(prime_power(p, precision)), coeffs_(group_size(p, n), 0) {
  if (!is_prime(p)) throw std::invalid_argument("GroupRingElement: p must be prime");
  if (precision == 0) throw std::invalid_argument("GroupRingElement: precision must be positive");
}

GroupRingElement GroupRingElement::from_gamma_basis(std::uint64_t p, unsigned n, unsigned precision,
                                                    const std::vector<Integer>& b) {
  GroupRingElement r(p, n, precision);
  if (b.size() != r.size()) throw std::invalid_argument("from_gamma_basis: wrong length");
  std::vector<Integer> red = b;
  reduce(red, r.modulus_);
  r.coeffs_ = gamma_to_x(red, r.modulus_);
  return r;
}

GroupRingElement GroupRingElement::from_x_basis(std::uint64_t p, unsigned n, unsigned precision,
                                                const std::vector<Integer>& a) {
  GroupRingElement r(p, n, precision);
  if (a.size() > r.size()) throw std::invalid_argument("from_x_basis: degree too large");
  std::copy(a.begin(), a.end(), r.coeffs_.begin());
  reduce(r.coeffs_, r.modulus_);
  return r;
}

GroupRingElement GroupRingElement::one(std::uint64_t p, unsigned n, unsigned precision) {
  GroupRingElement r(p, n, precision);
  r.coeffs_[0] = 1;
  return r;
}

GroupRingElement GroupRingElement::omega(std::uint64_t p, unsigned n, unsigned precision, unsigned m) {
  if (m > n) throw std::invalid_argument("omega: m exceeds the level");
  GroupRingElement r(p, n, precision);
  const std::uint64_t deg = ipow_u64(p, m);
  if (m == n) return r;  // (1+X)^{p^n} - 1 is zero in the ring
  for (std::uint64_t i = 1; i <= deg; ++i) r.coeffs_[i] = mod_floor(binomial(deg, i), r.modulus_);
  return r;
}

std::vector<Integer> GroupRingElement::gamma_coefficients() const { return x_to_gamma(coeffs_, modulus_); }

bool GroupRingElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& v) { return v == 0; });
}

void GroupRingElement::check_compatible(const GroupRingElement& o) const {
  if (p_ != o.p_ || n_ != o.n_ || precision_ != o.precision_)
    throw std::invalid_argument("GroupRingElement: incompatible operands");
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  check_compatible(o);
  GroupRingElement r = *this;
  for (std::size_t i = 0; i < size(); ++i) {
    r.coeffs_[i] += o.coeffs_[i];
    if (r.coeffs_[i] >= modulus_) r.coeffs_[i] -= modulus_;
  }
  return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  check_compatible(o);
  GroupRingElement r = *this;
  for (std::size_t i = 0; i < size(); ++i) {
    r.coeffs_[i] -= o.coeffs_[i];
    if (r.coeffs_[i] < 0) r.coeffs_[i] += modulus_;
  }
  return r;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  check_compatible(o);
  // Cyclic convolution in the group basis.
  const std::vector<Integer> f = gamma_coefficients();
  const std::vector<Integer> g = o.gamma_coefficients();
  const std::size_t len = size();
  std::vector<Integer> h(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < len; ++j) {
      if (g[j] == 0) continue;
      std::size_t k = i + j;
      if (k >= len) k -= len;
      h[k] += f[i] * g[j];
    }
  }
  return from_gamma_basis(p_, n_, precision_, h);
}

GroupRingElement GroupRingElement::scaled(const Integer& c) const {
  GroupRingElement r = *this;
  for (Integer& x : r.coeffs_) x = mod_floor(x * c, modulus_);
  return r;
}

// ---------------------------------------------------------------------------

std::vector<Integer> project_exact_gamma(const RawTheta& theta) {
  const unsigned e = exponent_of(theta);
  const auto table = exponent_table(theta.p, e);
  std::vector<Integer> b(group_size(theta.p, theta.ring_level), 0);
  for (std::size_t i = 0; i < theta.units.size(); ++i) {
    const std::uint64_t a = theta.units[i];
    if (theta.p == 2 && a % 4 != 1) continue;
    b[table.at(a)] += theta.values[i];
  }
  return b;
}

GroupRingElement project_twist(const RawTheta& theta, unsigned precision, ThetaProjection projection) {
  if (projection == ThetaProjection::norm)
    return GroupRingElement::from_gamma_basis(theta.p, theta.ring_level, precision, project_exact_gamma(theta));

  const unsigned e = exponent_of(theta);
  const auto table = exponent_table(theta.p, e);
  const Integer m = prime_power(theta.p, precision);
  std::vector<Integer> b(group_size(theta.p, theta.ring_level), 0);
  for (std::size_t i = 0; i < theta.units.size(); ++i) {
    if (theta.values[i] == 0) continue;
    const Integer a(static_cast<unsigned long>(theta.units[i]));
    const Residue w = teichmuller(a, theta.p, precision).inverse();
    Integer& slot = b[table.at(theta.units[i])];
    slot = mod_floor(slot + theta.values[i] * w.value(), m);
  }
  return GroupRingElement::from_gamma_basis(theta.p, theta.ring_level, precision, b);
}

IwasawaInvariants mu_lambda(const GroupRingElement& f, unsigned guard) {
  IwasawaInvariants r{ExtendedInt::infinity(), ExtendedInt::infinity(), false};
  const auto& c = f.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const ExtendedInt v = ordp(c[i], f.prime());
    if (v < r.mu) {
      r.mu = v;
      r.lambda = static_cast<std::int64_t>(i);
    }
  }
  r.precision_certified =
      r.mu.is_finite() && r.mu.value() + static_cast<std::int64_t>(guard) < static_cast<std::int64_t>(f.precision());
  return r;
}

GroupRingElement primitive_rescaling(const GroupRingElement& f) {
  const IwasawaInvariants inv = mu_lambda(f, 0);
  if (inv.mu.is_infinite()) throw std::domain_error("primitive_rescaling: zero element");
  const auto mu = static_cast<unsigned>(inv.mu.value());
  const Integer scale = prime_power(f.prime(), mu);
  std::vector<Integer> a = f.coefficients();
  for (Integer& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), scale.get_mpz_t());
  return GroupRingElement::from_x_basis(f.prime(), f.level(), f.precision() - mu, a);
}

ThetaResult theta_invariants(const RawTheta& theta, ThetaProjection projection, unsigned guard,
                             std::optional<unsigned> initial_precision) {
  unsigned precision = initial_precision.value_or(theta.n + 12);
  if (precision == 0) precision = 1;

  bool exact_zero = theta.is_exactly_zero();
  if (!exact_zero && projection == ThetaProjection::norm) {
    const auto b = project_exact_gamma(theta);
    exact_zero = std::all_of(b.begin(), b.end(), [](const Integer& v) { return v == 0; });
  }
  if (exact_zero) {
    return {GroupRingElement(theta.p, theta.ring_level, precision),
            {ExtendedInt::infinity(), ExtendedInt::infinity(), true},
            true};
  }
  for (;;) {
    GroupRingElement element = project_twist(theta, precision, projection);
    IwasawaInvariants inv = mu_lambda(element, guard);
    if (inv.precision_certified || precision >= kPrecisionCap) return {std::move(element), inv, false};
    precision = std::min(precision * 2, kPrecisionCap);
  }
}

GroupRingElement corestrict(const GroupRingElement& f) {
  if (f.level() == 0) throw std::invalid_argument("corestrict: level 0");
  const std::vector<Integer> b = f.gamma_coefficients();
  const std::size_t len = group_size(f.prime(), f.level() - 1);
  std::vector<Integer> out(len, 0);
  for (std::size_t j = 0; j < b.size(); ++j) out[j % len] += b[j];
  return GroupRingElement::from_gamma_basis(f.prime(), f.level() - 1, f.precision(), out);
}

GroupRingElement divide_by_augmentation_cycle(const GroupRingElement& f) {
  if (f.level() == 0) throw std::invalid_argument("divide_by_augmentation_cycle: level 0");
  const std::uint64_t p = f.prime();
  const std::size_t deg = group_size(p, f.level() - 1);
  const Integer& m = f.modulus();
  std::vector<Integer> w(deg + 1);
  for (std::size_t i = 0; i <= deg; ++i) w[i] = mod_floor(binomial(deg, i), m);
  w[0] = 0;

  std::vector<Integer> rem = f.coefficients();
  std::vector<Integer> quot(f.size(), 0);
  for (std::size_t top = rem.size(); top-- > deg;) {
    const Integer q = rem[top];
    if (q == 0) continue;
    const std::size_t shift = top - deg;
    quot[shift] = q;
    for (std::size_t i = 0; i <= deg; ++i) {
      if (w[i] == 0) continue;
      rem[shift + i] = mod_floor(rem[shift + i] - q * w[i], m);
    }
  }
  for (std::size_t i = 0; i < deg; ++i)
    if (rem[i] != 0) throw std::domain_error("not divisible");
  return GroupRingElement::from_x_basis(p, f.level(), f.precision(), quot);
}

GroupRingElement change_generator(const GroupRingElement& f, std::uint64_t u) {
  if (u % f.prime() == 0) throw std::invalid_argument("change_generator: u must be a unit");
  const std::vector<Integer> b = f.gamma_coefficients();
  const std::size_t len = b.size();
  std::vector<Integer> out(len, 0);
  for (std::size_t j = 0; j < len; ++j) {
    const auto k = static_cast<std::size_t>((static_cast<unsigned __int128>(u % len) * j) % len);
    out[k] += b[j];
  }
  return GroupRingElement::from_gamma_basis(f.prime(), f.level(), f.precision(), out);
}

NormRelationReport check_norm_relation(const GroupRingElement& theta_next, const GroupRingElement& theta,
                                       const Integer& a_p) {
  if (theta_next.prime() != theta.prime() || theta_next.level() != theta.level() + 1)
    throw std::invalid_argument("check_norm_relation: levels must be n+1 and n");
  NormRelationReport r;
  r.p = theta.prime();
  r.n = theta.level();
  r.precision = std::min(theta_next.precision(), theta.precision());
  r.a_p = a_p;
  const Integer m = prime_power(r.p, r.precision);
  std::vector<Integer> lhs = corestrict(theta_next).coefficients();
  std::vector<Integer> rhs = theta.coefficients();
  reduce(lhs, m);
  for (Integer& x : rhs) x = mod_floor(x * a_p, m);
  r.lhs_zero = std::all_of(lhs.begin(), lhs.end(), [](const Integer& v) { return v == 0; });
  r.rhs_zero = std::all_of(rhs.begin(), rhs.end(), [](const Integer& v) { return v == 0; });
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] != rhs[i]) {
      r.first_failure = i;
      break;
    }
  }
  r.pass = !r.first_failure.has_value();
  return r;
}

LowerBoundReport check_lambda_lower_bound(const GroupRingElement& theta, unsigned guard) {
  LowerBoundReport r;
  r.p = theta.prime();
  r.n = theta.level();
  r.lambda = mu_lambda(theta, guard).lambda;
  r.bound = r.n == 0 ? 0 : ipow_u64(r.p, r.n - 1);
  r.pass = r.lambda >= ExtendedInt(static_cast<std::int64_t>(r.bound));
  return r;
}

ThetaComparison compare_theta_mod_p(const GroupRingElement& f, const GroupRingElement& g) {
  if (f.prime() != g.prime() || f.level() != g.level())
    throw std::invalid_argument("compare_theta_mod_p: different rings");
  const std::uint64_t p = f.prime();
  const Integer pz(static_cast<unsigned long>(p));
  std::vector<Integer> fr = f.coefficients(), gr = g.coefficients();
  reduce(fr, pz);
  reduce(gr, pz);
  auto nonzero = [](const std::vector<Integer>& v) {
    return std::any_of(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
  };
  ThetaComparison c;
  c.f_nonzero_mod_p = nonzero(fr);
  c.g_nonzero_mod_p = nonzero(gr);
  c.congruent_mod_p = fr == gr;
  c.f_invariants = mu_lambda(f);
  c.g_invariants = mu_lambda(g);
  c.lambda_equal = c.f_invariants.lambda == c.g_invariants.lambda;
  for (std::uint64_t u = 1; u < p && !c.congruent_up_to_unit; ++u) {
    bool ok = true;
    for (std::size_t i = 0; i < fr.size() && ok; ++i)
      ok = fr[i] == mod_floor(gr[i] * Integer(static_cast<unsigned long>(u)), pz);
    c.congruent_up_to_unit = ok;
  }
  return c;
}

}  // namespace mtlambda
