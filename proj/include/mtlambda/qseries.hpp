#pragma once

// Truncated q-expansions of Delta and eta quotients.

#include "mtlambda/exactnum.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace mtlambda {

/// Coefficients of q^1 .. q^B.
class QSeries {
 public:
  QSeries() = default;
  explicit QSeries(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients)) {}

  std::size_t bound() const { return coeffs_.size(); }
  /// Coefficient of q^n, 1 <= n <= bound().
  const Integer& operator[](std::size_t n) const { return coeffs_.at(n - 1); }
  const std::vector<Integer>& coefficients() const { return coeffs_; }

  friend bool operator==(const QSeries&, const QSeries&) = default;

 private:
  std::vector<Integer> coeffs_;
};

QSeries delta_qexp(std::size_t bound);

/// One factor eta(d z)^e of an eta quotient.
struct EtaFactor {
  unsigned scale;
  int exponent;
};

/// prod eta(d z)^e through q^bound. Throws std::invalid_argument unless
/// sum d*e is a positive multiple of 24.
QSeries eta_quotient_qexp(const std::vector<EtaFactor>& spec, std::size_t bound);

const std::vector<EtaFactor>& eta_spec_f27();  // eta(3z)^2 eta(9z)^2
const std::vector<EtaFactor>& eta_spec_f32();  // eta(4z)^2 eta(8z)^2

struct CongruenceReport {
  std::uint64_t p;
  std::size_t bound;
  bool pass;
  std::optional<std::size_t> first_failure;
};

/// Throws std::invalid_argument when the bounds differ.
CongruenceReport check_congruence_qexp(const QSeries& f, const QSeries& g, std::uint64_t p);

struct TauLemmaReport {
  std::uint64_t p;
  std::size_t bound;
  std::size_t primes_checked;
  std::vector<std::uint64_t> failures;
  bool pass() const { return failures.empty(); }
};

/// tau(l) = 1 + l mod p for every prime l <= bound, l != p.
TauLemmaReport check_tau_lemma(std::uint64_t p, std::size_t bound);
TauLemmaReport check_tau_lemma(std::uint64_t p, const QSeries& delta);

}  // namespace mtlambda
