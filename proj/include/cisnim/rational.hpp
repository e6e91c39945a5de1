// Exact-rational helpers shared by the report emitters: deterministic
// decimal rendering (truncated, fixed significant-digit budget) and
// parsing of "a/b" or integer literals from command-line flags.
#pragma once

#include <string>

#include <gmpxx.h>

namespace cisnim {

// Renders q as a decimal string with at most `sig_digits` significant
// digits, truncated toward zero, always containing a decimal point and at
// least one fractional digit (1 -> "1.0", 1/2 -> "0.5").  Digits stop
// early when the expansion terminates, so exact values render exactly.
std::string decimal_string(const mpq_class& q, int sig_digits = 20);

// Parses "a/b" (b > 0) or a plain integer.  Throws parse_error on
// malformed input or zero denominator.
mpq_class parse_rational(const std::string& text);

}  // namespace cisnim
