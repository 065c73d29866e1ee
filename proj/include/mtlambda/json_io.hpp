#pragma once

// JSON and CSV emission. Key order is fixed; infinity is the string "inf";
// integers outside int64 are written as decimal strings.

#include "mtlambda/exactnum.hpp"
#include "mtlambda/mazurtate.hpp"
#include "mtlambda/tables.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace mtlambda {

using Json = nlohmann::ordered_json;

Json integer_to_json(const Integer& v);
/// Accepts a JSON integer or a decimal string. Throws std::invalid_argument otherwise.
Integer integer_from_json(const Json& j);
Json extended_to_json(const ExtendedInt& v);
ExtendedInt extended_from_json(const Json& j);

Json invariants_to_json(const IwasawaInvariants& inv);

struct ThetaExport {
  std::string form;
  const GroupRingElement* element = nullptr;
  IwasawaInvariants invariants;
  unsigned n = 0;
  std::uint64_t modulus = 0;
  bool exact_zero = false;
  std::string projection;
  std::string normalization;
};

/// {"p","n","M","basis","coefficients","mu","lambda","precision_certified", ...metadata}
Json theta_to_json(const ThetaExport& t);

Json lambda_row_to_json(const LambdaTableRow& row);
Json lambda_rows_to_json(const std::vector<LambdaTableRow>& rows);

/// RFC 4180: header form,n=1..n=K,pattern,mu,precision,normalization; CRLF line ends.
std::string lambda_rows_to_csv(const std::vector<LambdaTableRow>& rows, unsigned n_max);

std::string csv_escape(const std::string& field);

}  // namespace mtlambda
