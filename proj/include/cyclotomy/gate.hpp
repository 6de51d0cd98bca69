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

// Which regular n-gons (and which rational angles) can be drawn with
// straightedge and compass: n = 2^r * p_1 * ... * p_s with distinct Fermat
// primes p_j.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace cyclotomy::gate {

struct Obstruction {
    enum class Kind {
        SquareDivisor,   // p^2 | n for an odd prime p
        NonFermatPrime,  // p | n, p odd prime but not a Fermat prime
    };
    Kind kind;
    mpz_class prime;
};

struct ConstructibilityVerdict {
    mpz_class n;
    bool constructible = false;
    unsigned long two_exponent = 0;
    std::vector<mpz_class> fermat_primes;  // ascending, distinct
    std::optional<Obstruction> obstruction;

    /// n = 1 (a point) and n = 2 (a diameter) are constructible by convention.
    bool degenerate() const { return n <= 2; }
};

/// Raised by operations that need a constructible n.
class NotConstructible : public std::invalid_argument {
   public:
    explicit NotConstructible(ConstructibilityVerdict verdict);
    const ConstructibilityVerdict& verdict() const noexcept { return verdict_; }

   private:
    ConstructibilityVerdict verdict_;
};

/// Throws NotConstructible unless classify(n) is constructible.
void require_constructible(const mpz_class& n);

/// Classify n >= 1. The verdict is re-derived from whether phi(n) is a
/// power of two; disagreement throws std::logic_error. When both kinds of
/// obstruction exist the square divisor is reported, using the smallest
/// such prime.
ConstructibilityVerdict classify(const mpz_class& n);

/// Every constructible n with 2 <= n <= bound, ascending.
std::vector<unsigned long> enumerate_constructible(unsigned long bound);

struct AngleCombination {
    mpz_class k;  // lcm(n, m)
    mpz_class x;  // 0 <= x < n / gcd(n, m)
    mpz_class y;
};

/// k = lcm(n, m) with x*m + y*n = gcd(n, m), so that
/// x*(2pi/n) + y*(2pi/m) = 2pi/k.
AngleCombination combine_angles(const mpz_class& n, const mpz_class& m);

/// Whether the angle 2pi * numer / denom can be constructed. Throws
/// std::invalid_argument for denom <= 0.
bool is_angle_constructible(const mpz_class& numer, const mpz_class& denom);

/// Stable JSON shape: n, constructible, two_exponent, fermat_primes,
/// obstruction (null or {kind, prime}). Integers that fit in 64 bits are
/// JSON numbers, larger ones decimal strings.
nlohmann::json to_json(const ConstructibilityVerdict& v);

/// One-line text rendering, e.g. "18: not constructible (3^2 divides 18)".
std::string describe(const ConstructibilityVerdict& v);

nlohmann::json integer_json(const mpz_class& z);

}  // namespace cyclotomy::gate
