#pragma once

#include "mtlambda/pipeline.hpp"

#include <map>
#include <mutex>
#include <string>

namespace testing {

inline const std::vector<mtlambda::WeierstrassCurve>& bundled_curves() {
  static const auto curves = mtlambda::load_curves(mtlambda::default_curves_path());
  return curves;
}

inline mtlambda::FormSource form(const std::string& name) { return mtlambda::resolve_form(name, bundled_curves()); }

inline mtlambda::WeierstrassCurve curve(const std::string& name) { return *form(name).curve; }

inline std::map<std::uint64_t, mtlambda::Integer> eigen_data_for(const std::string& name) {
  return mtlambda::eigen_data(form(name), mtlambda::kDefaultEigenPrimeBound);
}

// Eigen-symbols are built once per test binary.
inline const mtlambda::EigenSymbol& symbol(const std::string& name) {
  static std::map<std::string, mtlambda::EigenSymbol> memo;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto it = memo.find(name);
  if (it == memo.end()) it = memo.emplace(name, mtlambda::eigen_symbol_for(form(name), {}).phi).first;
  return it->second;
}

inline mtlambda::ThetaComputation theta(const std::string& name, std::uint64_t p, unsigned n) {
  return mtlambda::compute_theta(symbol(name), p, n, {});
}

inline std::int64_t lambda_of(const std::string& name, std::uint64_t p, unsigned n) {
  const auto inv = theta(name, p, n).result.invariants;
  return inv.lambda.is_finite() ? inv.lambda.value() : -1;
}

// True when the functional satisfies L o T_ell = a L on the plus quotient.
inline bool is_hecke_eigen(const mtlambda::ManinSymbolSpace& space, const mtlambda::EigenSymbol& phi, std::uint64_t ell,
                           const mtlambda::Integer& a) {
  const mtlambda::RationalMatrix t = space.hecke_matrix(ell);
  for (std::size_t j = 0; j < t.cols(); ++j) {
    mtlambda::Rational s = 0;
    for (std::size_t i = 0; i < t.rows(); ++i) s += t(i, j) * phi.coordinates[i];
    if (s != a * phi.coordinates[j]) return false;
  }
  return true;
}

}  // namespace testing
