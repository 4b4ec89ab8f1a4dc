#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace tqftwb {

using Rational = mpq_class;
using BigInt = mpz_class;

/// "p/q" with q > 1, or "p" for integers. This is the replay format used in
/// reports.
std::string to_string(const Rational& q);

/// Parses the format produced by to_string. Throws InputError.
Rational parse_rational(std::string_view text);

std::vector<std::string> to_strings(const std::vector<Rational>& values);

}  // namespace tqftwb
