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

// Outward-rounded interval arithmetic on decimally scaled integers.
//
// An Interval {lo, hi} at scale W stands for the real interval
// [lo * 10^-W, hi * 10^-W]. Every operation rounds lo down and hi up, so
// the true value of an exact computation always stays enclosed.

#include <gmpxx.h>

#include <stdexcept>

namespace cyclotomy::radix {

/// Thrown when an operation cannot be carried out on the given enclosure:
/// a divisor interval that contains zero, or a square root of an interval
/// reaching below zero.
class IntervalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// floor(sqrt(n)) by integer Newton iteration, n >= 0.
mpz_class isqrt_floor(const mpz_class& n);
/// ceil(sqrt(n)), n >= 0.
mpz_class isqrt_ceil(const mpz_class& n);

mpz_class pow10(unsigned long k);

struct Interval {
    mpz_class lo;
    mpz_class hi;
};

class IntervalArithmetic {
   public:
    explicit IntervalArithmetic(long scale);

    long scale() const noexcept { return scale_; }
    const mpz_class& unit() const noexcept { return unit_; }

    Interval rational(const mpq_class& q) const;
    Interval integer(long v) const;

    Interval add(const Interval& a, const Interval& b) const;
    Interval sub(const Interval& a, const Interval& b) const;
    Interval neg(const Interval& a) const;
    Interval mul(const Interval& a, const Interval& b) const;
    /// a^2; tighter than mul(a, a) when a straddles zero.
    Interval sqr(const Interval& a) const;
    /// Throws IntervalError when b contains zero.
    Interval div(const Interval& a, const Interval& b) const;
    /// Throws IntervalError when a.lo < 0.
    Interval sqrt(const Interval& a) const;

    /// +1 / -1 when the sign is certain, 0 when the interval contains zero.
    static int sign(const Interval& a);
    static mpz_class width(const Interval& a) { return a.hi - a.lo; }
    static bool overlaps(const Interval& a, const Interval& b) { return !(a.hi < b.lo || b.hi < a.lo); }

   private:
    long scale_;
    mpz_class unit_;
};

}  // namespace cyclotomy::radix
