#pragma once

// Minimal RAII handle over an MPFR real with a fixed precision per value.
// Binary operations round to the precision of the left operand.

#include <mpfr.h>

#include <cstdio>
#include <string>
#include <utility>

#include "circdet/scalar.hpp"

namespace circdet {

class mp_real {
 public:
  explicit mp_real(mpfr_prec_t bits = 128) { mpfr_init2(v_, bits), mpfr_set_zero(v_, 1); }
  mp_real(double x, mpfr_prec_t bits) : mp_real(bits) { mpfr_set_d(v_, x, MPFR_RNDN); }
  mp_real(const exact& q, mpfr_prec_t bits) : mp_real(bits) { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }

  mp_real(const mp_real& o) : mp_real(o.precision()) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  mp_real(mp_real&& o) noexcept : mp_real(mpfr_prec_t{MPFR_PREC_MIN}) { mpfr_swap(v_, o.v_); }
  mp_real& operator=(mp_real o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~mp_real() { mpfr_clear(v_); }

  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }
  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }

  static mp_real pi(mpfr_prec_t bits) {
    mp_real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  mp_real& operator+=(const mp_real& o) { return mpfr_add(v_, v_, o.v_, MPFR_RNDN), *this; }
  mp_real& operator-=(const mp_real& o) { return mpfr_sub(v_, v_, o.v_, MPFR_RNDN), *this; }
  mp_real& operator*=(const mp_real& o) { return mpfr_mul(v_, v_, o.v_, MPFR_RNDN), *this; }

  friend mp_real operator+(mp_real a, const mp_real& b) { return a += b; }
  friend mp_real operator-(mp_real a, const mp_real& b) { return a -= b; }
  friend mp_real operator*(mp_real a, const mp_real& b) { return a *= b; }

  friend mp_real abs(const mp_real& a) {
    mp_real r(a.precision());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<=(const mp_real& a, const mp_real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator<(const mp_real& a, const mp_real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Scientific notation with `digits` significant digits.
  std::string str(int digits = 30) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

 private:
  mpfr_t v_;
};

/// cos and sin of 2*pi*num/den at the given precision.
inline std::pair<mp_real, mp_real> unit_root(std::size_t num, std::size_t den, mpfr_prec_t bits) {
  mp_real theta = mp_real::pi(bits + 16);
  mpfr_mul_ui(theta.get(), theta.get(), 2 * static_cast<unsigned long>(num), MPFR_RNDN);
  mpfr_div_ui(theta.get(), theta.get(), static_cast<unsigned long>(den), MPFR_RNDN);
  mp_real c(bits), s(bits);
  mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
  return {std::move(c), std::move(s)};
}

}  // namespace circdet
