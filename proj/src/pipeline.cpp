#include "mtlambda/pipeline.hpp"

#include "mtlambda/qseries.hpp"

#include <fstream>
#include <sstream>

namespace mtlambda {

std::filesystem::path default_curves_path() { return std::filesystem::path(MTLAMBDA_DATA_DIR) / "curves.txt"; }

std::vector<WeierstrassCurve> load_curves(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open curve file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  ParseResult parsed = parse_curves(text.str());
  if (!parsed.errors.empty()) {
    const ParseError& e = parsed.errors.front();
    throw std::runtime_error(path.string() + ":" + std::to_string(e.line) + ": " + e.reason);
  }
  return std::move(parsed.curves);
}

FormSource resolve_form(const std::string& name, const std::vector<WeierstrassCurve>& curves) {
  FormSource f;
  if (name == "delta" || name == "Delta") {
    f.name = "delta";
    f.is_delta = true;
    return f;
  }
  const WeierstrassCurve* hit = nullptr;
  for (const WeierstrassCurve& c : curves)
    if (c.label == name) hit = &c;
  if (hit == nullptr) {
    for (const WeierstrassCurve& c : curves) {
      if (isogeny_class_of(c.label) == name) {
        hit = &c;
        break;
      }
    }
  }
  if (hit == nullptr) {
    std::string available = "delta";
    for (const WeierstrassCurve& c : curves) available += ", " + c.label;
    throw UnknownFormError("unknown form '" + name + "'; available: " + available);
  }
  f.name = hit->label;
  f.curve = *hit;
  f.level = hit->conductor;
  f.weight = 2;
  return f;
}

std::map<std::uint64_t, Integer> eigen_data(const FormSource& form, std::uint64_t prime_bound) {
  std::map<std::uint64_t, Integer> out;
  if (form.is_delta) {
    const QSeries delta = delta_qexp(static_cast<std::size_t>(std::max<std::uint64_t>(prime_bound, 2)));
    for (std::uint64_t ell : primes_up_to(prime_bound)) out[ell] = delta[ell];
    return out;
  }
  for (std::uint64_t ell : primes_up_to(prime_bound)) out[ell] = Integer(count_points(*form.curve, ell).a);
  return out;
}

EigenSymbolResult eigen_symbol_for(const FormSource& form, const PipelineOptions& options) {
  const auto data = eigen_data(form, options.prime_bound);
  EigenSymbolResult r;
  r.fingerprint = eigen_fingerprint(form.level, form.weight, data);
  std::optional<EigenCache> cache;
  if (options.cache_dir) cache.emplace(*options.cache_dir);
  if (cache) {
    if (auto hit = cache->load(form.level, form.weight, r.fingerprint)) {
      r.phi = std::move(*hit);
      r.cache_hit = true;
      return r;
    }
  }
  ManinSymbolSpace space(form.level, form.weight);
  r.phi = eigen_symbol(space, data, options.prime_bound);
  if (cache) cache->store(r.phi, r.fingerprint);
  return r;
}

ThetaComputation compute_theta(const EigenSymbol& phi, std::uint64_t p, unsigned n, const PipelineOptions& options) {
  RawTheta raw = theta_raw(phi, p, n, options.threads, options.budget, options.two_adic_shift);
  ThetaResult result = theta_invariants(raw, options.projection, options.guard, options.precision);
  return {std::move(raw), std::move(result)};
}

LambdaTableRow lambda_row(const FormSource& form, const EigenSymbol& phi, std::uint64_t p, unsigned n_max,
                          const PipelineOptions& options) {
  LambdaTableRow row;
  row.form = form.name;
  row.p = p;
  row.normalization = kNormalizationTag;
  if (auto known = find_published_row(form.name, p)) row.pattern = known->pattern;
  for (unsigned n = 1; n <= n_max; ++n) {
    const ThetaComputation c = compute_theta(phi, p, n, options);
    row.entries.push_back({n, c.result.invariants.mu, c.result.invariants.lambda,
                           c.result.invariants.precision_certified, c.result.exact_zero,
                           c.result.element.precision()});
  }
  return row;
}

std::string to_string(ThetaProjection projection) {
  return projection == ThetaProjection::norm ? "norm" : "teichmuller-twist";
}

}  // namespace mtlambda
