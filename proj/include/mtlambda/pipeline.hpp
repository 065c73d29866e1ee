#pragma once

// Form resolution, eigen-data, cache-aware eigen-symbols, and the theta/lambda pipeline.

#include "mtlambda/cache.hpp"
#include "mtlambda/curves.hpp"
#include "mtlambda/mazurtate.hpp"
#include "mtlambda/modsym.hpp"
#include "mtlambda/tables.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtlambda {

inline constexpr const char* kNormalizationTag = "content-1 on plus Manin generators";

class UnknownFormError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FormSource {
  std::string name;  // "delta" or the curve label
  bool is_delta = false;
  std::optional<WeierstrassCurve> curve;
  std::uint64_t level = 1;
  unsigned weight = 12;
};

std::filesystem::path default_curves_path();

/// Parses a curve file. Throws std::runtime_error naming the first bad line.
std::vector<WeierstrassCurve> load_curves(const std::filesystem::path& path);

/// "delta", an exact label, or an isogeny class ("27a" picks the first member
/// listed). Throws UnknownFormError listing the available labels.
FormSource resolve_form(const std::string& name, const std::vector<WeierstrassCurve>& curves);

/// a_l for primes l <= bound: tau(l) for delta, point counts (U_l eigenvalue at bad l) for curves.
std::map<std::uint64_t, Integer> eigen_data(const FormSource& form, std::uint64_t prime_bound);

struct PipelineOptions {
  std::optional<std::filesystem::path> cache_dir;
  std::uint64_t prime_bound = kDefaultEigenPrimeBound;
  unsigned threads = 0;
  std::uint64_t budget = kDefaultEvaluationBudget;
  unsigned two_adic_shift = kDefaultTwoAdicShift;
  ThetaProjection projection = ThetaProjection::norm;
  std::optional<unsigned> precision;
  unsigned guard = kDefaultGuard;
};

struct EigenSymbolResult {
  EigenSymbol phi;
  std::string fingerprint;
  bool cache_hit = false;
};

EigenSymbolResult eigen_symbol_for(const FormSource& form, const PipelineOptions& options);

struct ThetaComputation {
  RawTheta raw;
  ThetaResult result;
};

ThetaComputation compute_theta(const EigenSymbol& phi, std::uint64_t p, unsigned n, const PipelineOptions& options);

LambdaTableRow lambda_row(const FormSource& form, const EigenSymbol& phi, std::uint64_t p, unsigned n_max,
                          const PipelineOptions& options);

std::string to_string(ThetaProjection projection);

}  // namespace mtlambda
