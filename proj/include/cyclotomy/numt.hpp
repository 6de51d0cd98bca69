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

// Integer number theory kernel: factorization, totient, primality,
// Fermat numbers and primitive roots. Everything works on unbounded
// integers (mpz_class); nothing here truncates to a machine word.

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

namespace cyclotomy::numt {

struct PrimePower {
    mpz_class prime;
    unsigned long exponent = 0;
};

inline bool operator==(const PrimePower& a, const PrimePower& b) {
    return a.prime == b.prime && a.exponent == b.exponent;
}

/// Prime factorization of a positive integer.
///
/// Invariants (checked on construction): primes strictly increasing, each
/// prime passes is_prime, exponents >= 1, and the product of p^e equals
/// value. The factorization of 1 is empty.
class Factorization {
   public:
    Factorization(mpz_class value, std::vector<PrimePower> factors);

    const mpz_class& value() const noexcept { return value_; }
    const std::vector<PrimePower>& factors() const noexcept { return factors_; }

    /// Exponent of p in value, 0 when p does not divide it.
    unsigned long exponent_of(const mpz_class& p) const;

    bool is_squarefree() const;

   private:
    mpz_class value_;
    std::vector<PrimePower> factors_;
};

/// 2^(2^nu) + 1.
struct FermatNumber {
    unsigned long nu = 0;
    mpz_class value;
};

/// Factor n >= 1: trial division by primes below 10^6, then Pollard-Brent
/// rho on whatever composite cofactor remains.
Factorization factor(const mpz_class& n);

mpz_class euler_phi(const mpz_class& n);
mpz_class euler_phi(const Factorization& f);

/// Deterministic for n < 3317044064679887385961981 (strong probable prime
/// test to the 13 prime bases 2..41). Above that bound the same test is
/// followed by GMP's BPSW-based mpz_probab_prime_p.
bool is_prime(const mpz_class& n);

/// True iff n is an odd prime and n - 1 is a power of two. Internally also
/// runs the F_nu = 2^(2^nu) + 1 form test and throws std::logic_error if the
/// two disagree (they cannot, since 2^m + 1 prime forces m = 2^nu).
bool is_fermat_prime(const mpz_class& n);

FermatNumber fermat_number(unsigned long nu);

/// Smallest g >= 2 generating (Z/pZ)^*. Throws std::invalid_argument unless
/// p is an odd prime.
mpz_class primitive_root(const mpz_class& p);

/// Multiplicative order of a modulo n; requires gcd(a, n) = 1.
mpz_class multiplicative_order(const mpz_class& a, const mpz_class& n);

bool is_power_of_two(const mpz_class& n);

/// Moebius function from a factorization.
int moebius(const Factorization& f);

/// All positive divisors, ascending.
std::vector<mpz_class> divisors(const Factorization& f);

}  // namespace cyclotomy::numt
