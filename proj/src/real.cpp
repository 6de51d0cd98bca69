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

#include "cyclotomy/real.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace cyclotomy::numeric {

mpfr_prec_t bits_for_digits(long digits) {
    return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 64;
}

Real::Real(mpfr_prec_t bits) {
    mpfr_init2(value_, bits);
    mpfr_set_zero(value_, 1);
}

Real::Real(const mpq_class& q, mpfr_prec_t bits) {
    mpfr_init2(value_, bits);
    mpfr_set_q(value_, q.get_mpq_t(), MPFR_RNDN);
}

Real::Real(long v, mpfr_prec_t bits) {
    mpfr_init2(value_, bits);
    mpfr_set_si(value_, v, MPFR_RNDN);
}

Real::Real(const Real& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

namespace {
void widen(mpfr_ptr v, mpfr_prec_t bits) {
    if (mpfr_get_prec(v) < bits) mpfr_prec_round(v, bits, MPFR_RNDN);
}
}  // namespace

Real& Real::operator+=(const Real& b) {
    widen(value_, b.precision());
    mpfr_add(value_, value_, b.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& b) {
    widen(value_, b.precision());
    mpfr_sub(value_, value_, b.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& b) {
    widen(value_, b.precision());
    mpfr_mul(value_, value_, b.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& b) {
    widen(value_, b.precision());
    mpfr_div(value_, value_, b.value_, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const {
    Real r(*this);
    mpfr_neg(r.value_, r.value_, MPFR_RNDN);
    return r;
}

Real Real::abs() const {
    Real r(*this);
    mpfr_abs(r.value_, r.value_, MPFR_RNDN);
    return r;
}

Real Real::sqrt() const {
    Real r(*this);
    mpfr_sqrt(r.value_, r.value_, MPFR_RNDN);
    return r;
}

namespace {
mpz_class scaled_round(mpfr_srcptr v, long scale, mpfr_rnd_t mode) {
    Real t(mpfr_get_prec(v) + 64);
    mpfr_set(t.get(), v, MPFR_RNDN);
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(scale));
    mpfr_mul_z(t.get(), t.get(), p.get_mpz_t(), MPFR_RNDN);
    mpz_class out;
    mpfr_get_z(out.get_mpz_t(), t.get(), mode);
    return out;
}
}  // namespace

mpz_class Real::floor_scaled(long scale) const { return scaled_round(value_, scale, MPFR_RNDD); }
mpz_class Real::ceil_scaled(long scale) const { return scaled_round(value_, scale, MPFR_RNDU); }

std::string Real::to_fixed(int digits) const {
    const mpz_class r = scaled_round(value_, digits, MPFR_RNDN);
    const bool negative = r < 0;
    mpz_class magnitude;
    mpz_abs(magnitude.get_mpz_t(), r.get_mpz_t());
    std::string s = magnitude.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return (negative ? "-" : "") + s;
}

namespace {
Real two_pi_times(const mpq_class& turns, mpfr_prec_t bits) {
    // reduce to [0, 1) first so the angle stays small
    mpq_class t = turns;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    t -= fl;
    Real angle(bits + 32);
    mpfr_const_pi(angle.get(), MPFR_RNDN);
    mpfr_mul_ui(angle.get(), angle.get(), 2, MPFR_RNDN);
    return angle * Real(t, bits + 32);
}
}  // namespace

Real cos_2pi(const mpq_class& turns, mpfr_prec_t bits) {
    Real a = two_pi_times(turns, bits);
    mpfr_cos(a.get(), a.get(), MPFR_RNDN);
    return a;
}

Real sin_2pi(const mpq_class& turns, mpfr_prec_t bits) {
    Real a = two_pi_times(turns, bits);
    mpfr_sin(a.get(), a.get(), MPFR_RNDN);
    return a;
}

Real tenth_power(long k, mpfr_prec_t bits) {
    Real r(10, bits);
    mpfr_pow_si(r.get(), r.get(), -k, MPFR_RNDN);
    return r;
}

std::optional<mpq_class> near_rational(const Real& x, const mpz_class& height, const Real& tol) {
    // convergents h/k of the continued fraction of x
    mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1;
    Real rest(x);
    for (int step = 0; step < 4096; ++step) {
        mpz_class a;
        mpfr_get_z(a.get_mpz_t(), rest.get(), MPFR_RNDD);
        mpz_class h_next = a * h_prev + h;
        mpz_class k_next = a * k_prev + k;
        h = std::exchange(h_prev, h_next);
        k = std::exchange(k_prev, k_next);
        if (k_prev > height || h_prev > height || h_prev < -height) return std::nullopt;
        const mpq_class candidate(h_prev, k_prev);
        if ((x - Real(candidate, x.precision())).abs() < tol) return candidate;
        Real frac = rest - Real(mpq_class(a), rest.precision());
        if (frac.sign() == 0) return std::nullopt;
        rest = Real(1L, rest.precision()) / frac;
    }
    return std::nullopt;
}

std::string scientific_ceiling(const mpq_class& value) {
    if (value <= 0) return "0";
    // scale into [10, 100), then round the two leading digits up
    mpq_class q = value;
    long k = 0;
    while (q < 10) {
        q *= 10;
        ++k;
    }
    while (q >= 100) {
        q /= 10;
        --k;
    }
    mpz_class m;
    mpz_cdiv_q(m.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (m == 100) {
        m = 10;
        --k;
    }
    const std::string d = m.get_str();
    return d.substr(0, 1) + "." + d.substr(1, 1) + "e" + std::to_string(1 - k);
}

std::string fixed_point(const mpq_class& q, long digits, bool round_up) {
    mpz_class unit;
    mpz_ui_pow_ui(unit.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const mpz_class num = q.get_num() * unit;
    mpz_class scaled;
    if (round_up)
        mpz_cdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
    else
        mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
    const bool negative = scaled < 0;
    std::string d = mpz_class(abs(scaled)).get_str();
    if (d.size() <= static_cast<std::size_t>(digits)) d.insert(0, static_cast<std::size_t>(digits) + 1 - d.size(), '0');
    std::string out = (negative ? "-" : "") + d.substr(0, d.size() - static_cast<std::size_t>(digits));
    if (digits > 0) out += "." + d.substr(d.size() - static_cast<std::size_t>(digits));
    return out;
}

}  // namespace cyclotomy::numeric
