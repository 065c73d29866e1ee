#pragma once

// Reference lambda rows and the row type emitted by lambda-table.

#include "mtlambda/exactnum.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mtlambda {

struct KnownRow {
  int group = 0;  // rows sharing a prime and source; delta has its own group
  std::uint64_t p = 0;
  std::vector<std::string> forms;   // isogeny classes, or "delta"
  std::vector<ExtendedInt> lambdas;  // n = 1, 2, ...
  std::string pattern;
};

const std::vector<KnownRow>& published_rows();

/// Strips an isogeny-class member index: "27a1" -> "27a"; "delta" stays.
std::string isogeny_class_of(const std::string& label);

/// The published row for a form label (curve label or class) at p, if any.
std::optional<KnownRow> find_published_row(const std::string& label, std::uint64_t p);

struct LambdaEntry {
  unsigned n = 0;
  ExtendedInt mu;
  ExtendedInt lambda;
  bool precision_certified = false;
  bool exact_zero = false;
  unsigned precision = 0;
};

struct LambdaTableRow {
  std::string form;
  std::uint64_t p = 0;
  std::vector<LambdaEntry> entries;  // n = 1..n_max in order
  std::string pattern;               // empty when no published pattern
  std::string normalization;
};

}  // namespace mtlambda
