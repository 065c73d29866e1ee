// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include "mtlambda/curves.hpp"
#include "mtlambda/mazurtate.hpp"
#include "mtlambda/qseries.hpp"

#include "properties.hpp"

#include <chrono>
#include <functional>
#include <iostream>

using namespace mtlambda;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string show(const std::vector<ExtendedInt>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

std::vector<ExtendedInt> lambdas(const std::string& form, std::uint64_t p, unsigned from, unsigned to) {
  std::vector<ExtendedInt> out;
  for (unsigned n = from; n <= to; ++n) out.push_back(testing::theta(form, p, n).result.invariants.lambda);
  return out;
}

Verdict check_rows(const std::vector<std::tuple<std::string, std::uint64_t, unsigned, std::vector<ExtendedInt>>>& rows) {
  Verdict v;
  for (const auto& [form, p, from, expected] : rows) {
    const auto got = lambdas(form, p, from, from + static_cast<unsigned>(expected.size()) - 1);
    v.require(got == expected, form + " p=" + std::to_string(p) + " got " + show(got) + " want " + show(expected));
  }
  return v;
}

const ExtendedInt kInf = ExtendedInt::infinity();

Verdict criterion1() {
  Verdict v;
  const auto t0 = Clock::now();
  const QSeries d = delta_qexp(10000);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  v.require(d[2] == -24 && d[3] == 252 && d[11] == 534612, "tau values");
  v.require(secs < 5, "runtime " + std::to_string(secs) + " s");
  return v;
}

Verdict criterion2() {
  Verdict v;
  const auto t0 = Clock::now();
  const QSeries d = delta_qexp(10000);
  for (std::uint64_t p : {2u, 3u}) {
    const auto r = check_tau_lemma(p, d);
    v.require(r.pass(), "p=" + std::to_string(p) + " failures " + std::to_string(r.failures.size()));
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  v.require(secs < 10, "runtime " + std::to_string(secs) + " s");
  return v;
}

Verdict criterion3() {
  Verdict v;
  const auto t0 = Clock::now();
  const QSeries d = delta_qexp(1000);
  v.require(verify_tau_congruence(testing::curve("27a1"), 3, 1000, &d).pass(), "27a1 at 3");
  v.require(verify_tau_congruence(testing::curve("32a1"), 2, 1000, &d).pass(), "32a1 at 2");
  const auto control = testing::curve("x3m2");
  for (std::uint64_t p : {2u, 3u}) {
    const auto r = verify_tau_congruence(control, p, 100, &d);
    v.require(!r.hypothesis_holds && !r.mismatches.empty() && r.mismatches.front() < 100,
              "control at p=" + std::to_string(p));
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  v.require(secs < 10, "runtime " + std::to_string(secs) + " s");
  return v;
}

Verdict criterion4() {
  Verdict v;
  const auto t0 = Clock::now();
  const QSeries d = delta_qexp(500);
  v.require(check_congruence_qexp(d, eta_quotient_qexp(eta_spec_f27(), 500), 3).pass, "mod 3");
  v.require(check_congruence_qexp(d, eta_quotient_qexp(eta_spec_f32(), 500), 2).pass, "mod 2");
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  v.require(secs < 5, "runtime " + std::to_string(secs) + " s");
  return v;
}

Verdict criterion5() {
  const auto t0 = Clock::now();
  Verdict v = check_rows({{"delta", 2, 1, {0, 1, 3}},
                          {"delta", 3, 1, {1, 7, 25}},
                          {"delta", 5, 1, {4, 24}},
                          {"delta", 7, 1, {6, 48}}});
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  v.require(secs < 600, "runtime " + std::to_string(secs) + " s");
  return v;
}

Verdict criterion6() {
  const auto t0 = Clock::now();
  Verdict v = check_rows({{"27a1", 3, 1, {1, 7, 25}},
                          {"36a1", 3, 1, {2, 8, 26}},
                          {"45a1", 3, 1, {1, 3, 9}},
                          {"99c1", 3, 1, {kInf, 6, 18}}});
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  v.require(secs < 600, "runtime " + std::to_string(secs) + " s");
  return v;
}

Verdict criterion7() { return check_rows({{"32a1", 2, 1, {kInf, 1, 2, 6}}, {"24a1", 2, 2, {1, 3, 7}}}); }

Verdict criterion8() {
  Verdict v;
  for (unsigned n = 1; n <= 2; ++n) {
    const auto d = testing::theta("delta", 3, n).result;
    const auto e = testing::theta("27a1", 3, n).result;
    const auto c = compare_theta_mod_p(primitive_rescaling(d.element), primitive_rescaling(e.element));
    const std::string tag = "n=" + std::to_string(n);
    v.require(c.congruent_up_to_unit, tag + " rescaled elements not congruent mod 3");
    v.require(c.f_invariants.mu == ExtendedInt(0) && c.g_invariants.mu == ExtendedInt(0), tag + " mu");
    v.require(c.lambda_equal, tag + " lambda");
    v.detail += (v.detail.empty() ? "" : "; ") + tag + " raw mu " + d.invariants.mu.to_string() + "/" +
                e.invariants.mu.to_string();
  }
  return v;
}

Verdict criterion9() {
  Verdict v;
  const std::vector<std::pair<std::string, std::uint64_t>> pairs = {{"27a1", 3}, {"36a1", 3}, {"45a1", 3},
                                                                     {"99c1", 3}, {"32a1", 2}, {"24a1", 2}};
  for (const auto& [form, p] : pairs) {
    for (unsigned n = 1; n <= 2; ++n) {
      const auto upper = testing::theta(form, p, n + 1);
      const std::string tag = form + " n=" + std::to_string(n);
      // Exact corestriction of the integer coefficients.
      const auto b = project_exact_gamma(upper.raw);
      const std::size_t len = b.size() / p;
      std::vector<Integer> folded(len, 0);
      for (std::size_t j = 0; j < b.size(); ++j) folded[j % len] += b[j];
      v.require(std::all_of(folded.begin(), folded.end(), [](const Integer& x) { return x == 0; }),
                tag + " corestriction nonzero");
      if (upper.result.exact_zero) continue;
      try {
        const auto q = divide_by_augmentation_cycle(upper.result.element);
        const auto lu = mu_lambda(upper.result.element).lambda;
        const auto lq = mu_lambda(q).lambda;
        const std::int64_t step = static_cast<std::int64_t>(ipow_u64(p, upper.result.element.level() - 1));
        v.require(lu.is_finite() && lq.is_finite() && lu.value() - lq.value() == step, tag + " lambda step");
      } catch (const std::domain_error&) {
        v.require(false, tag + " not divisible by omega");
      }
    }
    for (unsigned n = 1; n <= (p == 2 ? 4u : 3u); ++n) {
      const auto r = check_lambda_lower_bound(testing::theta(form, p, n).result.element);
      v.require(r.pass, form + " n=" + std::to_string(n) + " lambda " + r.lambda.to_string() + " < " +
                            std::to_string(r.bound));
    }
  }
  const auto& phi = testing::symbol("11a1");
  const auto lo = theta_raw(phi, 11, 1), hi = theta_raw(phi, 11, 2);
  const auto r = check_norm_relation(project_twist(hi, 10), project_twist(lo, 10), 1);
  v.require(r.pass && !r.lhs_zero && !r.rhs_zero, "11a1 norm relation");
  return v;
}

Verdict criterion10() {
  Verdict v;
  auto add = [&v](const char* name, const testing::PropertyOutcome& r) {
    v.require(r.pass(), std::string(name) + ": " + std::to_string(r.failures.size()) + " of " +
                            std::to_string(r.cases) + " failed");
  };
  add("Hecke commutativity", testing::hecke_commutativity(20));
  add("eigenvalues", testing::eigenvalue_consistency(50));
  add("path additivity", testing::path_additivity(200));
  add("Gamma_0(N) invariance", testing::gamma0_invariance(200));
  add("generator and unit invariance", testing::invariance_under_units());
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"tau values", criterion1},
      {"tau(l) = 1 + l mod 2, 3 for l <= 10^4", criterion2},
      {"a_l(E) = tau(l) mod p for 27a1, 32a1; control curve fails", criterion3},
      {"delta = f27 mod 3, delta = f32 mod 2 through q^500", criterion4},
      {"lambda(theta_n, delta) for p = 2, 3, 5, 7", criterion5},
      {"lambda rows at p = 3 for 27a, 36a, 45a, 99c", criterion6},
      {"lambda rows at p = 2 for 32a, 24a", criterion7},
      {"theta(delta) = theta(27a) mod 3 with mu = 0, n = 1, 2", criterion8},
      {"corestriction, division by omega_n, lambda lower bound, norm relation", criterion9},
      {"property suites", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failed;
    std::cout << "criterion " << (i + 1) << ": " << (v.pass ? "PASS" : "FAIL") << "  " << criteria[i].first;
    if (!v.detail.empty()) std::cout << "  [" << v.detail << "]";
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
