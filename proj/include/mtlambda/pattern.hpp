#pragma once

// Closed-form lambda patterns as written in the last column of the tables,
// e.g. "3^m - 2", "3 * 5^{m-1} + 3 q_{m-1} + 2 (m even); 3 * 5^{m-1} + 3 q_{m-1} + 1 (m odd)".

#include "mtlambda/exactnum.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace mtlambda {

class PatternError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// p^{m-1} - p^{m-2} + ... ending in (p - 1) for even m and (p^2 - p) for odd m.
/// q_0 = q_1 = 0 (empty sums). Throws std::invalid_argument for m < 0.
Integer q_value(std::uint64_t p, long m);

/// Evaluates a pattern at m. Grammar:
///   pattern := branch (';' branch)*
///   branch  := expr ['(' 'm' ('even'|'odd') ')']
///   expr    := ['-'] term (('+'|'-') term)*
///   term    := factor (('*'|'·'|'\cdot')? factor)*
///   factor  := atom ['^' (atom | '{' expr '}' | '(' expr ')')]
///   atom    := integer | 'm' | 'p' | 'q_' (index | '{' expr '}') | '(' expr ')'
/// Unicode minus is accepted. With parity branches the matching one is used.
/// Throws PatternError on malformed input, negative exponents or a missing branch.
Integer predict_lambda(std::string_view pattern, std::uint64_t p, long m);

/// True if the pattern has a branch for each parity (or no parity tags at all).
bool pattern_is_total(std::string_view pattern);

}  // namespace mtlambda
