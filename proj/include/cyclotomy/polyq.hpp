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

// Dense univariate polynomials over Z and the cyclotomic polynomials.

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclotomy::polyq {

/// Raised by exact_div when the divisor does not divide over Z.
class NotDivisible : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Dense polynomial with unbounded integer coefficients; index = degree.
/// The coefficient vector never has a trailing zero, so the zero
/// polynomial is the empty vector and has degree -1.
class IntPolynomial {
   public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> coefficients);
    IntPolynomial(std::initializer_list<long> coefficients);

    static IntPolynomial monomial(const mpz_class& c, std::size_t degree);
    /// x^k - 1
    static IntPolynomial x_pow_minus_one(std::size_t k);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<mpz_class>& coefficients() const noexcept { return coeffs_; }
    /// Coefficient of x^i; zero beyond the degree.
    mpz_class coefficient(std::size_t i) const;
    const mpz_class& leading() const;

    /// Human form, descending powers: "x^4 - x^2 + 1".
    std::string to_string(char var = 'x') const;

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }
    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    IntPolynomial operator-() const;

   private:
    void trim();
    std::vector<mpz_class> coeffs_;
};

enum class PolyOp { Add, Sub, Mul, ExactDiv };

IntPolynomial poly_arith(const IntPolynomial& a, const IntPolynomial& b, PolyOp op);

/// Quotient a / b over Z. Long division that requires lc(b) to divide
/// every leading term it meets and ends with a zero-remainder check; any
/// failure throws NotDivisible.
IntPolynomial exact_div(const IntPolynomial& a, const IntPolynomial& b);

/// f(x + c)
IntPolynomial taylor_shift(const IntPolynomial& f, const mpz_class& c);

/// Phi_n. Computed by recursive division of x^n - 1 and by the Moebius
/// product; a disagreement between the two throws std::logic_error.
IntPolynomial cyclotomic(std::uint64_t n);

/// x^n - 1 divided in turn by Phi_d for every proper divisor d.
IntPolynomial cyclotomic_by_division(std::uint64_t n);

/// prod_{d | n} (x^{n/d} - 1)^{mu(d)}
IntPolynomial cyclotomic_by_moebius(std::uint64_t n);

/// Eisenstein criterion at p: p does not divide the leading coefficient,
/// p divides all others, p^2 does not divide the constant term.
bool satisfies_eisenstein(const IntPolynomial& f, const mpz_class& p);

/// Phi_{p^r}(x + 1) satisfies Eisenstein at p. Requires p an odd prime,
/// r >= 1 and p^r <= 2^14.
bool eisenstein_shift_check(std::uint64_t p, unsigned r);

/// Largest degree the irreducibility oracle accepts.
inline constexpr long kOracleMaxDegree = 32;

/// Brute-force irreducibility test over Z, meant as a test oracle.
///
/// A polynomial of degree <= 0 or with content > 1 counts as reducible.
/// Otherwise: rational root test, then an exhaustive search over
/// conjugation-closed subsets of numerically computed roots; each subset
/// whose monic product rounds to integers is tried as an exact divisor.
/// Throws std::invalid_argument if deg f > bound or bound > kOracleMaxDegree.
bool irreducibility_oracle(const IntPolynomial& f, unsigned bound);

}  // namespace cyclotomy::polyq
