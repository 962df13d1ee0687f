#pragma once

// Exact rational scalar shared by every exact code path.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "circdet/error.hpp"

namespace circdet {

using exact = mpq_class;

inline exact make_exact(long num, long den = 1) {
  exact q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p" or "p/q" (base 10). Throws parse_error on anything else.
inline exact parse_exact(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw error(errc::parse_error, "empty scalar");
  if (s.front() == '+') s.erase(0, 1);
  exact q;
  if (q.set_str(s, 10) != 0) throw error(errc::parse_error, "not a rational: '" + std::string(text) + "'");
  if (q.get_den() == 0) throw error(errc::parse_error, "zero denominator: '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

/// Canonical decimal form, "p" for integers and "p/q" otherwise.
inline std::string to_string(const exact& q) { return q.get_str(10); }

inline exact pow(const exact& base, std::uint64_t e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  exact r(num, den);
  r.canonicalize();
  return r;
}

/// Number of decimal digits in the numerator (sign excluded).
inline std::size_t digit_count(const exact& q) {
  mpz_class a = abs(q.get_num());
  return a == 0 ? 1 : a.get_str(10).size();
}

inline bool is_integer(const exact& q) { return q.get_den() == 1; }

}  // namespace circdet
