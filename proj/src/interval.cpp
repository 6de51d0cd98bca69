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

#include "cyclotomy/interval.hpp"

#include <algorithm>

namespace cyclotomy::radix {

mpz_class isqrt_floor(const mpz_class& n) {
    if (n < 0) throw IntervalError("isqrt of a negative integer");
    if (n < 2) return n;
    // start above the root; Newton then decreases monotonically to floor(sqrt(n))
    const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    mpz_class x;
    mpz_setbit(x.get_mpz_t(), (bits + 1) / 2);
    mpz_class y, q;
    for (;;) {
        mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_mpz_t());
        y = x + q;
        mpz_fdiv_q_2exp(y.get_mpz_t(), y.get_mpz_t(), 1);
        if (y >= x) return x;
        x.swap(y);
    }
}

mpz_class isqrt_ceil(const mpz_class& n) {
    mpz_class r = isqrt_floor(n);
    if (r * r != n) ++r;
    return r;
}

mpz_class pow10(unsigned long k) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), 10, k);
    return out;
}

IntervalArithmetic::IntervalArithmetic(long scale) : scale_(scale) {
    if (scale < 0) throw std::invalid_argument("interval scale must be non-negative");
    unit_ = pow10(static_cast<unsigned long>(scale));
}

Interval IntervalArithmetic::rational(const mpq_class& q) const {
    mpz_class num = q.get_num() * unit_;
    Interval r;
    mpz_fdiv_q(r.lo.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
    mpz_cdiv_q(r.hi.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
    return r;
}

Interval IntervalArithmetic::integer(long v) const {
    mpz_class s = unit_ * v;
    return {s, s};
}

Interval IntervalArithmetic::add(const Interval& a, const Interval& b) const { return {a.lo + b.lo, a.hi + b.hi}; }

Interval IntervalArithmetic::sub(const Interval& a, const Interval& b) const { return {a.lo - b.hi, a.hi - b.lo}; }

Interval IntervalArithmetic::neg(const Interval& a) const { return {-a.hi, -a.lo}; }

Interval IntervalArithmetic::mul(const Interval& a, const Interval& b) const {
    const mpz_class p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    const mpz_class& mn = *std::min_element(std::begin(p), std::end(p));
    const mpz_class& mx = *std::max_element(std::begin(p), std::end(p));
    Interval r;
    mpz_fdiv_q(r.lo.get_mpz_t(), mn.get_mpz_t(), unit_.get_mpz_t());
    mpz_cdiv_q(r.hi.get_mpz_t(), mx.get_mpz_t(), unit_.get_mpz_t());
    return r;
}

Interval IntervalArithmetic::sqr(const Interval& a) const {
    const mpz_class l2 = a.lo * a.lo;
    const mpz_class h2 = a.hi * a.hi;
    mpz_class mn, mx = std::max(l2, h2);
    if (a.lo <= 0 && a.hi >= 0)
        mn = 0;
    else
        mn = std::min(l2, h2);
    Interval r;
    mpz_fdiv_q(r.lo.get_mpz_t(), mn.get_mpz_t(), unit_.get_mpz_t());
    mpz_cdiv_q(r.hi.get_mpz_t(), mx.get_mpz_t(), unit_.get_mpz_t());
    return r;
}

Interval IntervalArithmetic::div(const Interval& a, const Interval& b) const {
    if (sign(b) == 0) throw IntervalError("division by an interval containing zero");
    const mpz_class al = a.lo * unit_;
    const mpz_class ah = a.hi * unit_;
    mpz_class lo[4], hi[4];
    const mpz_class* nums[4] = {&al, &al, &ah, &ah};
    const mpz_class* dens[4] = {&b.lo, &b.hi, &b.lo, &b.hi};
    for (int i = 0; i < 4; ++i) {
        mpz_fdiv_q(lo[i].get_mpz_t(), nums[i]->get_mpz_t(), dens[i]->get_mpz_t());
        mpz_cdiv_q(hi[i].get_mpz_t(), nums[i]->get_mpz_t(), dens[i]->get_mpz_t());
    }
    return {*std::min_element(std::begin(lo), std::end(lo)), *std::max_element(std::begin(hi), std::end(hi))};
}

Interval IntervalArithmetic::sqrt(const Interval& a) const {
    if (a.lo < 0) throw IntervalError("square root of an interval reaching below zero");
    return {isqrt_floor(a.lo * unit_), isqrt_ceil(a.hi * unit_)};
}

int IntervalArithmetic::sign(const Interval& a) {
    if (a.lo > 0) return 1;
    if (a.hi < 0) return -1;
    return 0;
}

}  // namespace cyclotomy::radix
