#pragma once

// Two independent determinant oracles:
//  * det_bareiss  - exact fraction-free elimination over the rationals;
//  * det_spectral - product of the circulant eigenvalues
//                   lambda_k = sum_j a_{j+1} eps^{kj},  eps = exp(2 pi i / n),
//                   evaluated directly in O(n^2) at a chosen MPFR precision.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "circdet/circulant.hpp"
#include "circdet/error.hpp"
#include "circdet/matrix.hpp"
#include "circdet/mp_real.hpp"
#include "circdet/scalar.hpp"

namespace circdet {

inline constexpr unsigned default_precision_bits = 128;
inline constexpr double default_rel_tol = 1e-9;

// ---------------------------------------------------------------------------
// Exact oracle
// ---------------------------------------------------------------------------

/// Bareiss elimination with row pivoting on zero pivots. Integer input gives
/// an integer result; every division is exact.
inline exact det_bareiss(const dense_matrix& input) {
  const std::size_t n = input.size();
  if (n == 0) throw error(errc::order_too_small, "determinant of an empty matrix");
  dense_matrix m = input;
  exact prev = 1;
  int sign = 1;
  exact lhs, rhs;
  for (std::size_t k = 1; k < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p <= n && sgn(m(p, k)) == 0) ++p;
      if (p > n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i <= n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        lhs = m(i, j) * m(k, k);
        rhs = m(i, k) * m(k, j);
        lhs -= rhs;
        m(i, j) = lhs / prev;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  exact det = m(n, n);
  if (sign < 0) det = -det;
  return det;
}

// ---------------------------------------------------------------------------
// Spectral oracle
// ---------------------------------------------------------------------------

struct complex_float {
  mp_real re;
  mp_real im;
};

inline complex_float operator*(const complex_float& x, const complex_float& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

struct spectral_estimate {
  complex_float value;
  mp_real imag_residual;
  std::vector<complex_float> eigenvalues;  // lambda_0 .. lambda_{n-1}
  unsigned precision_bits = default_precision_bits;
};

inline spectral_estimate det_spectral(const circulant_matrix& mat, unsigned precision_bits = default_precision_bits) {
  if (precision_bits < 53)
    throw error(errc::precision_too_low, "requested " + std::to_string(precision_bits) + " bits, minimum is 53");
  const mpfr_prec_t bits = precision_bits;
  const std::size_t n = mat.order();
  std::vector<mp_real> row;
  row.reserve(n);
  for (const exact& a : mat.row()) row.emplace_back(a, bits);

  // Roots of unity indexed by (k*j) mod n so large exponents never lose accuracy.
  std::vector<complex_float> roots;
  roots.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    auto [c, s] = unit_root(r, n, bits);
    roots.push_back({std::move(c), std::move(s)});
  }

  spectral_estimate est{{mp_real(1.0, bits), mp_real(bits)}, mp_real(bits), {}, precision_bits};
  est.eigenvalues.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    complex_float lambda{mp_real(bits), mp_real(bits)};
    for (std::size_t j = 0; j < n; ++j) {
      const complex_float& w = roots[(k * j) % n];
      lambda.re += row[j] * w.re;
      lambda.im += row[j] * w.im;
    }
    est.value = est.value * lambda;
    est.eigenvalues.push_back(std::move(lambda));
  }
  est.imag_residual = abs(est.value.im);
  return est;
}

/// |approx - exact| <= tol * max(1, |exact|), and the same bound on the
/// imaginary residual.
inline bool crosscheck(const exact& expected, const spectral_estimate& approx, double rel_tol = default_rel_tol) {
  if (!(rel_tol > 0)) throw error(errc::parse_error, "rel_tol must be positive");
  const mpfr_prec_t bits = std::max<mpfr_prec_t>(approx.precision_bits, 64);
  const mp_real ref(expected, bits);
  mp_real scale = abs(ref);
  if (scale < mp_real(1.0, bits)) scale = mp_real(1.0, bits);
  const mp_real bound = mp_real(rel_tol, bits) * scale;
  return abs(approx.value.re - ref) <= bound && approx.imag_residual <= bound;
}

inline std::string format_float(const mp_real& x, int digits = 30) { return x.str(digits); }

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

enum class det_method { bareiss, spectral, lemma, closed_form };

enum class det_flag { alpha1_zero_fallback, float_approximation };

inline std::string to_string(det_flag f) {
  return f == det_flag::alpha1_zero_fallback ? "alpha1-zero-fallback" : "float-approximation";
}

struct det_report {
  std::variant<exact, spectral_estimate> value;
  det_method method = det_method::bareiss;
  std::string closed_form_name;  // set iff method == closed_form
  std::set<det_flag> flags;
  std::chrono::nanoseconds elapsed{0};

  bool is_exact() const noexcept { return std::holds_alternative<exact>(value); }
  const exact& exact_value() const { return std::get<exact>(value); }

  std::string method_name() const {
    switch (method) {
      case det_method::bareiss: return "bareiss";
      case det_method::spectral: return "spectral";
      case det_method::lemma: return "lemma";
      case det_method::closed_form: return "closed:" + closed_form_name;
    }
    return "unknown";
  }

  /// Exact values print as "p" or "p/q"; spectral values in scientific notation.
  std::string value_string() const {
    if (is_exact()) return to_string(exact_value());
    return format_float(std::get<spectral_estimate>(value).value.re);
  }
};

template <class F>
det_report timed(det_method method, F&& compute) {
  const auto start = std::chrono::steady_clock::now();
  det_report r{compute(), method, {}, {}, {}};
  r.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  if (method == det_method::spectral) r.flags.insert(det_flag::float_approximation);
  return r;
}

inline det_report report_bareiss(const circulant_matrix& m) {
  return timed(det_method::bareiss, [&] { return det_bareiss(m.materialize()); });
}

inline det_report report_spectral(const circulant_matrix& m, unsigned precision_bits = default_precision_bits) {
  return timed(det_method::spectral, [&] { return det_spectral(m, precision_bits); });
}

}  // namespace circdet
