#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace dofbench {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or "p" (optional sign) into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  auto valid = !text.empty();
  std::size_t digits = 0;
  bool slash = false;
  for (std::size_t i = 0; i < text.size() && valid; ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      ++digits;
    } else if ((c == '-' || c == '+') && i == 0) {
    } else if (c == '/' && !slash && digits > 0) {
      slash = true;
      digits = 0;
    } else {
      valid = false;
    }
  }
  if (!valid || digits == 0) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  std::string body(text[0] == '+' ? text.substr(1) : text);
  Rational value;
  if (value.set_str(body, 10) != 0) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  if (value.get_den() == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  value.canonicalize();
  return value;
}

/// Canonical text: "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& value) { return value.get_str(); }

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace dofbench
