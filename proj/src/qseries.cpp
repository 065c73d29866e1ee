#include "mtlambda/qseries.hpp"

#include <stdexcept>

namespace mtlambda {

namespace {

using Series = std::vector<Integer>;  // index = power of q, 0..len-1
using Sparse = std::vector<std::pair<std::size_t, long>>;

// prod (1 - q^{d n}) via the pentagonal number theorem, ascending powers.
Sparse euler_factor(unsigned d, std::size_t len) {
  Sparse out{{0, 1}};
  for (long k = 1;; ++k) {
    const long sign = (k % 2 == 0) ? 1 : -1;
    const std::size_t lo = static_cast<std::size_t>(k * (3 * k - 1) / 2) * d;
    const std::size_t hi = static_cast<std::size_t>(k * (3 * k + 1) / 2) * d;
    if (lo >= len) break;
    out.emplace_back(lo, sign);
    if (hi < len) out.emplace_back(hi, sign);
  }
  return out;
}

// prod (1 - q^{d n})^3 via Jacobi: sum (-1)^k (2k+1) q^{k(k+1)/2}.
Sparse jacobi_factor(unsigned d, std::size_t len) {
  Sparse out;
  for (long k = 0;; ++k) {
    const std::size_t pos = static_cast<std::size_t>(k * (k + 1) / 2) * d;
    if (pos >= len) break;
    out.emplace_back(pos, (k % 2 == 0 ? 1 : -1) * (2 * k + 1));
  }
  return out;
}

void multiply_sparse(Series& s, const Sparse& f) {
  // In place, high to low, so lower entries are still unmodified when read.
  for (std::size_t n = s.size(); n-- > 0;) {
    Integer acc = 0;
    for (const auto& [pos, c] : f) {
      if (pos > n) break;
      if (s[n - pos] != 0) acc += c * s[n - pos];
    }
    s[n] = acc;
  }
}

void divide_sparse(Series& s, const Sparse& f) {
  // f has constant term 1.
  for (std::size_t n = 0; n < s.size(); ++n) {
    for (const auto& [pos, c] : f) {
      if (pos == 0) continue;
      if (pos > n) break;
      if (s[n - pos] != 0) s[n] -= c * s[n - pos];
    }
  }
}

Series product_series(const std::vector<EtaFactor>& spec, std::size_t len) {
  Series s(len, 0);
  if (len > 0) s[0] = 1;
  for (const EtaFactor& f : spec) {
    if (f.scale == 0) throw std::invalid_argument("eta quotient: scale must be positive");
    const unsigned e = static_cast<unsigned>(f.exponent < 0 ? -f.exponent : f.exponent);
    const Sparse j = jacobi_factor(f.scale, len);
    const Sparse p = euler_factor(f.scale, len);
    for (unsigned i = 0; i < e / 3; ++i) f.exponent > 0 ? multiply_sparse(s, j) : divide_sparse(s, j);
    for (unsigned i = 0; i < e % 3; ++i) f.exponent > 0 ? multiply_sparse(s, p) : divide_sparse(s, p);
  }
  return s;
}

}  // namespace

QSeries eta_quotient_qexp(const std::vector<EtaFactor>& spec, std::size_t bound) {
  long weight = 0;
  for (const EtaFactor& f : spec) weight += static_cast<long>(f.scale) * f.exponent;
  if (weight <= 0 || weight % 24 != 0) {
    throw std::invalid_argument("eta quotient: leading power sum(d*e)/24 is not a positive integer");
  }
  const std::size_t shift = static_cast<std::size_t>(weight / 24);
  std::vector<Integer> coeffs(bound, 0);
  if (bound >= shift) {
    Series s = product_series(spec, bound - shift + 1);
    for (std::size_t n = shift; n <= bound; ++n) coeffs[n - 1] = s[n - shift];
  }
  return QSeries(std::move(coeffs));
}

QSeries delta_qexp(std::size_t bound) { return eta_quotient_qexp({{1, 24}}, bound); }

const std::vector<EtaFactor>& eta_spec_f27() {
  static const std::vector<EtaFactor> spec{{3, 2}, {9, 2}};
  return spec;
}

const std::vector<EtaFactor>& eta_spec_f32() {
  static const std::vector<EtaFactor> spec{{4, 2}, {8, 2}};
  return spec;
}

CongruenceReport check_congruence_qexp(const QSeries& f, const QSeries& g, std::uint64_t p) {
  if (f.bound() != g.bound()) throw std::invalid_argument("check_congruence_qexp: bounds differ");
  CongruenceReport r{p, f.bound(), true, std::nullopt};
  for (std::size_t n = 1; n <= f.bound(); ++n) {
    Integer diff = f[n] - g[n];
    if (!mpz_divisible_ui_p(diff.get_mpz_t(), p)) {
      r.pass = false;
      r.first_failure = n;
      break;
    }
  }
  return r;
}

TauLemmaReport check_tau_lemma(std::uint64_t p, const QSeries& delta) {
  TauLemmaReport r{p, delta.bound(), 0, {}};
  for (std::uint64_t l : primes_up_to(delta.bound())) {
    if (l == p) continue;
    ++r.primes_checked;
    Integer diff = delta[l] - 1 - Integer(static_cast<unsigned long>(l));
    if (!mpz_divisible_ui_p(diff.get_mpz_t(), p)) r.failures.push_back(l);
  }
  return r;
}

TauLemmaReport check_tau_lemma(std::uint64_t p, std::size_t bound) {
  return check_tau_lemma(p, delta_qexp(bound));
}

}  // namespace mtlambda
