#pragma once

// Randomized structural checks shared by the unit tests and the acceptance run.
// Each returns the number of cases tried and the failures seen.

#include "support.hpp"

#include <random>
#include <sstream>

namespace testing {

struct PropertyOutcome {
  std::size_t cases = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty() && cases > 0; }
};

inline mtlambda::Integer random_int(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline mtlambda::Cusp random_cusp(std::mt19937_64& rng) {
  if (rng() % 17 == 0) return mtlambda::Cusp::infinity();
  const mtlambda::Integer den = random_int(rng, 1, 400);
  const mtlambda::Integer num = random_int(rng, -2000, 2000);
  return mtlambda::Cusp(num, den);
}

// A random element of Gamma_0(N).
inline mtlambda::Mat2 random_gamma0(std::mt19937_64& rng, std::uint64_t n) {
  for (;;) {
    const mtlambda::Integer c = random_int(rng, -12, 12) * static_cast<unsigned long>(n);
    const mtlambda::Integer d = random_int(rng, -60, 60);
    mtlambda::Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t());
    if (g != 1) continue;
    // a d - b c = 1 with a = s, b = -t.
    const mtlambda::Integer k = random_int(rng, -5, 5);
    return mtlambda::Mat2{s + k * c, -t + k * d, c, d};
  }
}

inline PropertyOutcome hecke_commutativity(std::size_t pairs = 20, std::uint64_t seed = 11) {
  std::mt19937_64 rng(seed);
  const auto primes = mtlambda::primes_up_to(37);
  PropertyOutcome out;
  std::map<std::pair<std::uint64_t, unsigned>, std::unique_ptr<mtlambda::ManinSymbolSpace>> spaces;
  while (out.cases < pairs) {
    const std::uint64_t n = 1 + rng() % 32;
    const unsigned k = (rng() % 3 == 0) ? 4 : 2;
    const std::uint64_t l1 = primes[rng() % primes.size()];
    const std::uint64_t l2 = primes[rng() % primes.size()];
    if (l1 == l2) continue;
    auto& space = spaces[{n, k}];
    if (!space) space = std::make_unique<mtlambda::ManinSymbolSpace>(n, k);
    if (space->plus_dimension() == 0) continue;
    ++out.cases;
    const auto t1 = space->hecke_matrix(l1);
    const auto t2 = space->hecke_matrix(l2);
    if (!(t1 * t2 == t2 * t1)) {
      std::ostringstream msg;
      msg << "N=" << n << " k=" << k << " T" << l1 << " T" << l2;
      out.failures.push_back(msg.str());
    }
  }
  return out;
}

inline PropertyOutcome eigenvalue_consistency(std::uint64_t bound = 50) {
  PropertyOutcome out;
  for (const char* name : {"11a1", "20a1", "24a1", "27a1", "32a1", "36a1", "45a1", "49a1", "64a1"}) {
    const auto f = form(name);
    const mtlambda::ManinSymbolSpace space(f.level, 2);
    const auto& phi = symbol(name);
    for (std::uint64_t l : mtlambda::primes_up_to(bound)) {
      ++out.cases;
      const mtlambda::Integer a(mtlambda::count_points(*f.curve, l).a);
      if (!is_hecke_eigen(space, phi, l, a)) out.failures.push_back(std::string(name) + " l=" + std::to_string(l));
    }
  }
  return out;
}

inline mtlambda::IntPoly random_poly(std::mt19937_64& rng, unsigned degree) {
  mtlambda::IntPoly p(degree + 1);
  for (auto& c : p) c = random_int(rng, -3, 3);
  return p;
}

inline PropertyOutcome path_additivity(std::size_t count = 200, std::uint64_t seed = 23) {
  std::mt19937_64 rng(seed);
  PropertyOutcome out;
  const std::vector<const char*> names = {"delta", "27a1", "11a1", "32a1"};
  for (std::size_t i = 0; i < count; ++i) {
    const auto& phi = symbol(names[i % names.size()]);
    const mtlambda::Cusp r = random_cusp(rng), s = random_cusp(rng), t = random_cusp(rng);
    ++out.cases;
    // {r, t} = {r, s} + {s, t} as homogeneous polynomials.
    const auto rt = mtlambda::evaluate_path(phi, r, t);
    const auto rs = mtlambda::evaluate_path(phi, r, s);
    const auto st = mtlambda::evaluate_path(phi, s, t);
    bool ok = rt.coeffs.size() == rs.coeffs.size();
    for (std::size_t j = 0; ok && j < rt.coeffs.size(); ++j) ok = rt.coeffs[j] == rs.coeffs[j] + st.coeffs[j];
    // The pairing itself is additive too.
    const auto p = random_poly(rng, phi.weight - 2);
    ok = ok && phi.pair(p, r, t) == phi.pair(p, r, s) + phi.pair(p, s, t);
    if (!ok) out.failures.push_back(names[i % names.size()]);
  }
  return out;
}

inline PropertyOutcome gamma0_invariance(std::size_t count = 200, std::uint64_t seed = 31) {
  std::mt19937_64 rng(seed);
  PropertyOutcome out;
  const std::vector<const char*> names = {"delta", "27a1", "11a1", "32a1", "36a1"};
  for (std::size_t i = 0; i < count; ++i) {
    const char* name = names[i % names.size()];
    const auto& phi = symbol(name);
    const mtlambda::Mat2 g = random_gamma0(rng, phi.level);
    const mtlambda::Cusp a = random_cusp(rng), b = random_cusp(rng);
    const auto p = random_poly(rng, phi.weight - 2);
    ++out.cases;
    if (phi.pair(p, a, b) != phi.pair(mtlambda::act_left(g, p), g.apply(a), g.apply(b)))
      out.failures.push_back(name);
  }
  return out;
}

inline PropertyOutcome invariance_under_units() {
  PropertyOutcome out;
  struct Job {
    const char* name;
    std::uint64_t p;
    unsigned n;
  };
  const std::vector<Job> jobs = {{"delta", 3, 1}, {"delta", 3, 2}, {"delta", 3, 3}, {"27a1", 3, 3},  {"36a1", 3, 3},
                                 {"45a1", 3, 2},  {"delta", 2, 4}, {"32a1", 2, 5},  {"24a1", 2, 6}, {"delta", 5, 1},
                                 {"delta", 5, 2}, {"50a1", 5, 2},  {"delta", 7, 2}, {"49a1", 7, 2}};
  for (const Job& job : jobs) {
    const auto c = theta(job.name, job.p, job.n);
    const auto& f = c.result.element;
    const std::uint64_t size = f.size();
    if (size > 81 || c.result.exact_zero) continue;
    const auto base = mtlambda::mu_lambda(f);
    const std::uint64_t mod = f.prime() == 2 ? 4 * size : f.prime() * size;
    for (std::uint64_t u = 1; u < mod; ++u) {
      if (u % job.p == 0) continue;
      out.cases += 2;
      if (!(mtlambda::mu_lambda(mtlambda::change_generator(f, u)) == base))
        out.failures.push_back(std::string(job.name) + " generator u=" + std::to_string(u));
      if (!(mtlambda::mu_lambda(f.scaled(mtlambda::Integer(static_cast<unsigned long>(u)))) == base))
        out.failures.push_back(std::string(job.name) + " scale u=" + std::to_string(u));
    }
  }
  return out;
}

}  // namespace testing
