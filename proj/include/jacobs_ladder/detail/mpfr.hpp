// Copyright 2026 The jacobs-ladder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <mpfr.h>

#include <cmath>
#include <memory>
#include <string>
#include <utility>

namespace jl::detail {

// Owning handle for an mpfr_t with a fixed precision chosen at construction.
// Only the handful of operations the reference evaluators need are wrapped;
// everything else goes through get() and the MPFR C API.
class MpReal {
 public:
  explicit MpReal(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  MpReal(mpfr_prec_t prec, double x) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  MpReal(const MpReal& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  MpReal(MpReal&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
  }
  MpReal& operator=(const MpReal& other) {
    if (this != &other) mpfr_set(v_, other.v_, MPFR_RNDN);
    return *this;
  }
  MpReal& operator=(MpReal&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Decimal text with `digits` significant digits, e.g. "-1.4603545088095868129".
  std::string to_string(int digits) const {
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t exp10 = 0;
    char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
    std::unique_ptr<char, void (*)(char*)> guard(raw, mpfr_free_str);
    std::string mantissa(raw);
    std::string sign;
    if (!mantissa.empty() && mantissa.front() == '-') {
      sign = "-";
      mantissa.erase(0, 1);
    }
    std::string out = sign + mantissa.substr(0, 1) + "." + mantissa.substr(1);
    if (exp10 - 1 != 0) out += "e" + std::to_string(exp10 - 1);
    return out;
  }

 private:
  mpfr_t v_;
};

struct MpComplex {
  MpReal re;
  MpReal im;

  explicit MpComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
  MpComplex(mpfr_prec_t prec, double r, double i) : re(prec, r), im(prec, i) {}
};

// out = a * b; `out` may alias neither argument. `scratch` avoids allocation
// in tight loops.
inline void mul(MpComplex& out, const MpComplex& a, const MpComplex& b, MpReal& scratch) {
  mpfr_mul(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(scratch.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(out.re.get(), out.re.get(), scratch.get(), MPFR_RNDN);
  mpfr_mul(out.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(scratch.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), out.im.get(), scratch.get(), MPFR_RNDN);
}

// a *= b
inline void mul_assign(MpComplex& a, const MpComplex& b, MpComplex& tmp, MpReal& scratch) {
  mul(tmp, a, b, scratch);
  mpfr_swap(a.re.get(), tmp.re.get());
  mpfr_swap(a.im.get(), tmp.im.get());
}

inline void add_assign(MpComplex& a, const MpComplex& b) {
  mpfr_add(a.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(a.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

// |a| into out.
inline void abs(MpReal& out, const MpComplex& a) {
  mpfr_hypot(out.get(), a.re.get(), a.im.get(), MPFR_RNDN);
}

// out = a / b
inline void div(MpComplex& out, const MpComplex& a, const MpComplex& b, MpReal& s1, MpReal& s2) {
  // denominator |b|^2
  mpfr_sqr(s1.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(s2.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(s1.get(), s1.get(), s2.get(), MPFR_RNDN);
  MpReal num(out.re.precision());
  mpfr_mul(num.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(s2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(num.get(), num.get(), s2.get(), MPFR_RNDN);
  MpReal num_im(out.re.precision());
  mpfr_mul(num_im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(s2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(num_im.get(), num_im.get(), s2.get(), MPFR_RNDN);
  mpfr_div(out.re.get(), num.get(), s1.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), num_im.get(), s1.get(), MPFR_RNDN);
}

// Working precision in bits for `digits` decimal digits, plus a 16-bit margin.
inline mpfr_prec_t bits_for_digits(double digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

}  // namespace jl::detail
