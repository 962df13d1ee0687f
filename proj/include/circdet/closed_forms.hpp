#pragma once

// Specialized determinant formulas for circ(a_1..a_n):
//   second order U_n = p U_{n-1} + q U_{n-2}, U_1 = a, U_2 = b   (n > 3)
//   Fibonacci and Lucas in their original ratio-sum form        (n >= 3)
//   tribonacci (1, 1, 2, ...)                                    (n > 3)
//   geometric circ(a, a^2, ..., a^n) = a^n (1 - a^n)^{n-1}

#include <algorithm>
#include <string>

#include "circdet/error.hpp"
#include "circdet/oracle.hpp"
#include "circdet/reduction.hpp"
#include "circdet/scalar.hpp"
#include "circdet/sequence.hpp"

namespace circdet {

struct second_order_params {
  exact p, q, a, b;

  recurrence_spec spec() const { return from_family(family::second_order{p, q, a, b}); }
};

/// Which additive term multiplies U_n's companion factor (q U_n - b + ? a).
/// `pa` is the correct one; `qa` is kept for comparison only.
enum class eq2_variant { pa, qa };

inline std::string to_string(eq2_variant v) { return v == eq2_variant::pa ? "pa" : "qa"; }

inline exact det_second_order(const second_order_params& s, std::size_t n, eq2_variant variant = eq2_variant::pa) {
  if (n <= 3) throw error(errc::order_too_small, "second-order closed form needs n > 3");
  const sequence_window u = generate(s.spec(), n + 1);
  const exact head = s.a - u[n + 1];
  const exact tail = s.q * u[n] - s.b + (variant == eq2_variant::pa ? s.p : s.q) * s.a;

  exact det = (s.a * s.a - s.b * u[n]) * pow(head, n - 2);
  exact term;
  for (std::size_t k = 2; k + 1 <= n; ++k) {
    term = s.a * u[k + 1] - s.b * u[k];
    term *= pow(head, k - 2);
    term *= pow(tail, n - k);
    det += term;
  }
  return det;
}

inline exact det_fibonacci_shen(std::size_t n) {
  if (n < 3) throw error(errc::order_too_small, "Fibonacci formula needs n >= 3");
  const sequence_window f = generate(from_family(family::fibonacci{}), n + 1);
  const exact top = 1 - f[n + 1];
  const exact ratio = top / f[n];
  exact sum = 0, term;
  for (std::size_t k = 1; k + 1 <= n; ++k) {
    term = f[k] * pow(ratio, k - 1);
    sum += term;
  }
  return pow(top, n - 1) + pow(f[n], n - 2) * sum;
}

inline exact det_lucas_shen(std::size_t n) {
  if (n < 3) throw error(errc::order_too_small, "Lucas formula needs n >= 3");
  const sequence_window l = generate(from_family(family::lucas{}), n + 1);
  const exact top = 1 - l[n + 1];
  const exact shifted = l[n] - 2;
  const exact ratio = top / shifted;
  exact sum = 0, term;
  for (std::size_t k = 1; k + 1 <= n; ++k) {
    term = (l[k + 2] - 3 * l[k + 1]) * pow(ratio, k - 1);
    sum += term;
  }
  return pow(top, n - 1) + pow(shifted, n - 2) * sum;
}

/// Tribonacci terms with the a_0 = 0 convention, alpha and the first basis
/// sequence for one order n.
class tribonacci_context {
 public:
  explicit tribonacci_context(std::size_t n)
      : n_(n), terms_(generate(from_family(family::tribonacci{}), n + 1)) {
    if (n <= 3) throw error(errc::order_too_small, "tribonacci formula needs n > 3");
    alpha_.n = n;
    alpha_.values = {1 - a(n + 1), -a(n) - a(n - 1), -a(n)};
  }

  std::size_t n() const noexcept { return n_; }

  /// a_k for 0 <= k <= n+1; a_0 = 0.
  exact a(std::size_t k) const {
    if (k == 0) return 0;
    return terms_.at(k);
  }

  const alpha_vector& alpha() const noexcept { return alpha_; }

  exact discriminant() const { return alpha_[2] * alpha_[2] - 4 * alpha_[1] * alpha_[3]; }

 private:
  std::size_t n_;
  sequence_window terms_;
  alpha_vector alpha_;
};

inline exact det_tribonacci(std::size_t n) {
  const tribonacci_context ctx(n);
  const alpha_vector& al = ctx.alpha();
  if (sgn(al[3]) == 0) throw error(errc::degenerate_alpha, "alpha_3 = 0");
  const auto basis = basis_sequences(al, n);
  const basis_sequence& b = basis[0];
  auto a = [&](std::size_t k) { return ctx.a(k); };
  const exact r = al[3] / al[1];
  const exact r_inv = al[1] / al[3];

  exact sum = 0, term;
  for (std::size_t i = 2; i + 3 <= n; ++i) {
    for (std::size_t j = i + 1; j + 2 <= n; ++j) {
      term = a(i - 2) * a(j - 1) - a(i - 1) * a(j - 2);
      term *= pow(r, n - j - 1);
      term *= b[j - i + 2];
      sum += term;
    }
  }
  for (std::size_t i = 2; i + 2 <= n; ++i) {
    term = (a(i - 2) + a(i - 1)) + a(n - 1) * (a(i + 2) - 2 * a(i + 1)) + a(n) * (2 * a(i) - a(i + 2));
    term *= b[n - i + 1];
    sum += term;
  }
  for (std::size_t i = 2; i + 2 <= n; ++i) {
    term = -a(i - 1) + a(n) * (a(i + 2) - 2 * a(i + 1));
    term *= r_inv;
    term *= b[n - i + 2];
    sum += term;
  }
  sum += 2 * a(n) * a(n) - 2 * a(n) - a(n - 1) + 1;
  return pow(1 - a(n + 1), n - 3) * sum;
}

inline exact det_geometric(const exact& ratio, std::size_t n) {
  if (sgn(ratio) == 0) throw error(errc::zero_ratio, "geometric ratio must be nonzero");
  if (n == 0) throw error(errc::order_too_small, "n must be at least 1");
  const exact an = pow(ratio, n);
  return an * pow(1 - an, n - 1);
}

/// b^{(1)}_k b^{(2)}_t - b^{(1)}_t b^{(2)}_k == (alpha_3/alpha_1)^{t-2} b^{(1)}_{k-t+2}
/// for third-order alpha, evaluated exactly by iterating the basis recurrence.
inline bool binet_wronskian_identity(const alpha_vector& alpha, std::size_t k, std::size_t t) {
  if (alpha.order() != 3) throw error(errc::length_mismatch, "identity is stated for m = 3");
  if (t < 2 || k < t) throw error(errc::index_out_of_range, "requires k >= t >= 2");
  if (sgn(alpha[1]) == 0 || sgn(alpha[3]) == 0) throw error(errc::degenerate_alpha, "alpha_1 and alpha_3 must be nonzero");
  const auto b = basis_sequences(alpha, std::max<std::size_t>(k, 2));
  const exact lhs = b[0][k] * b[1][t] - b[0][t] * b[1][k];
  const exact rhs = pow(alpha[3] / alpha[1], t - 2) * b[0][k - t + 2];
  return lhs == rhs;
}

/// Picks the specialized formula matching `spec`, if any.
inline det_report det_closed(const recurrence_spec& spec, std::size_t n, eq2_variant variant = eq2_variant::pa) {
  std::string name;
  auto compute = [&]() -> exact {
    if (spec.order() == 1 && spec.coeff(1) == spec.initial(1)) {
      name = "geometric";
      return det_geometric(spec.coeff(1), n);
    }
    if (spec == from_family(family::fibonacci{})) {
      name = "fibonacci-shen";
      return det_fibonacci_shen(n);
    }
    if (spec == from_family(family::lucas{})) {
      name = "lucas-shen";
      return det_lucas_shen(n);
    }
    if (spec.order() == 2) {
      name = "second-order";
      return det_second_order({spec.coeff(1), spec.coeff(2), spec.initial(1), spec.initial(2)}, n, variant);
    }
    if (spec == from_family(family::tribonacci{})) {
      name = "tribonacci";
      return det_tribonacci(n);
    }
    throw error(errc::no_closed_form, "no specialized formula for this recurrence");
  };
  det_report rep = timed(det_method::closed_form, compute);
  rep.closed_form_name = name;
  return rep;
}

inline bool has_closed_form(const recurrence_spec& spec, std::size_t n) {
  if (spec.order() == 1) return spec.coeff(1) == spec.initial(1);
  if (spec == from_family(family::fibonacci{}) || spec == from_family(family::lucas{})) return n >= 3;
  if (spec.order() == 2) return n > 3;
  return spec == from_family(family::tribonacci{}) && n > 3;
}

}  // namespace circdet
