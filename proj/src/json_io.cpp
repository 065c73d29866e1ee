#include "mtlambda/json_io.hpp"

#include <stdexcept>

namespace mtlambda {

Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("not a decimal integer: " + j.dump());
    return v;
  }
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

Json extended_to_json(const ExtendedInt& v) {
  if (v.is_infinite()) return Json("inf");
  return Json(v.value());
}

ExtendedInt extended_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExtendedInt::infinity();
  if (j.is_number_integer()) return ExtendedInt(j.get<std::int64_t>());
  throw std::invalid_argument("expected an integer or \"inf\", got " + j.dump());
}

Json invariants_to_json(const IwasawaInvariants& inv) {
  Json j;
  j["mu"] = extended_to_json(inv.mu);
  j["lambda"] = extended_to_json(inv.lambda);
  j["precision_certified"] = inv.precision_certified;
  return j;
}

Json theta_to_json(const ThetaExport& t) {
  if (t.element == nullptr) throw std::invalid_argument("theta_to_json: no element");
  const GroupRingElement& e = *t.element;
  Json j;
  j["p"] = e.prime();
  j["n"] = t.n;
  j["M"] = e.precision();
  j["basis"] = "X-power";
  Json coeffs = Json::array();
  for (const Integer& c : e.coefficients()) coeffs.push_back(integer_to_json(c));
  j["coefficients"] = std::move(coeffs);
  j["mu"] = extended_to_json(t.invariants.mu);
  j["lambda"] = extended_to_json(t.invariants.lambda);
  j["precision_certified"] = t.invariants.precision_certified;
  j["form"] = t.form;
  j["group_ring_level"] = e.level();
  j["modulus"] = t.modulus;
  j["exact_zero"] = t.exact_zero;
  j["projection"] = t.projection;
  j["normalization"] = t.normalization;
  return j;
}

Json lambda_row_to_json(const LambdaTableRow& row) {
  Json j;
  j["form"] = row.form;
  j["p"] = row.p;
  Json entries = Json::array();
  for (const LambdaEntry& e : row.entries) {
    Json x;
    x["n"] = e.n;
    x["mu"] = extended_to_json(e.mu);
    x["lambda"] = extended_to_json(e.lambda);
    x["precision"] = e.precision;
    x["precision_certified"] = e.precision_certified;
    x["exact_zero"] = e.exact_zero;
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  j["pattern"] = row.pattern;
  j["normalization"] = row.normalization;
  return j;
}

Json lambda_rows_to_json(const std::vector<LambdaTableRow>& rows) {
  Json j = Json::array();
  for (const LambdaTableRow& r : rows) j.push_back(lambda_row_to_json(r));
  return j;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string lambda_rows_to_csv(const std::vector<LambdaTableRow>& rows, unsigned n_max) {
  std::string out = "form";
  for (unsigned n = 1; n <= n_max; ++n) out += ",n=" + std::to_string(n);
  out += ",pattern,mu,precision,normalization\r\n";
  for (const LambdaTableRow& r : rows) {
    out += csv_escape(r.form);
    std::string mus, precisions;
    for (unsigned n = 1; n <= n_max; ++n) {
      const LambdaEntry* e = n <= r.entries.size() ? &r.entries[n - 1] : nullptr;
      out += ",";
      if (e != nullptr) {
        out += e->lambda.to_string();
        if (!mus.empty()) mus += ' ';
        mus += e->mu.to_string();
        if (!precisions.empty()) precisions += ' ';
        precisions += std::to_string(e->precision);
      }
    }
    out += "," + csv_escape(r.pattern) + "," + csv_escape(mus) + "," + csv_escape(precisions) + "," +
           csv_escape(r.normalization) + "\r\n";
  }
  return out;
}

}  // namespace mtlambda
