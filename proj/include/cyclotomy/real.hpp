/*
   Copyright 2026 The cyclotomy authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Thin value wrapper over an MPFR float, used as an independent
// high-precision reference for trigonometric values and period sums.

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>

namespace cyclotomy::numeric {

/// Binary precision comfortably above `digits` decimal digits.
mpfr_prec_t bits_for_digits(long digits);

class Real {
   public:
    explicit Real(mpfr_prec_t bits);
    Real(const mpq_class& q, mpfr_prec_t bits);
    Real(long v, mpfr_prec_t bits);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    mpfr_ptr get() noexcept { return value_; }
    mpfr_srcptr get() const noexcept { return value_; }
    mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

    Real& operator+=(const Real& b);
    Real& operator-=(const Real& b);
    Real& operator*=(const Real& b);
    Real& operator/=(const Real& b);
    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }
    Real operator-() const;

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return b < a; }
    int sign() const { return mpfr_sgn(value_); }

    Real abs() const;
    Real sqrt() const;

    /// floor / ceil of value * 10^scale.
    mpz_class floor_scaled(long scale) const;
    mpz_class ceil_scaled(long scale) const;
    /// Fixed-point rendering rounded to `digits` fractional digits.
    std::string to_fixed(int digits) const;
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

   private:
    mpfr_t value_;
};

/// cos(2*pi*turns) and sin(2*pi*turns).
Real cos_2pi(const mpq_class& turns, mpfr_prec_t bits);
Real sin_2pi(const mpq_class& turns, mpfr_prec_t bits);

/// 10^-k at the given precision.
Real tenth_power(long k, mpfr_prec_t bits);

/// A rational a/b with |a|, b <= height and |x - a/b| < tol, if one exists.
/// Found among the continued-fraction convergents of x, which is complete
/// whenever tol < 1 / (2 height^2).
std::optional<mpq_class> near_rational(const Real& x, const mpz_class& height, const Real& tol);

/// q >= 0 rounded up to two significant digits, e.g. "3.1e-52"; "0" for zero.
std::string scientific_ceiling(const mpq_class& q);

/// q in fixed point with `digits` fractional digits, rounded down or up.
std::string fixed_point(const mpq_class& q, long digits, bool round_up);

}  // namespace cyclotomy::numeric
