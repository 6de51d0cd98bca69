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

#include <numeric>

#include "cyclotomy/numt.hpp"
#include "cyclotomy/polyq.hpp"
#include "cyclotomy/real.hpp"
#include "doctest.h"

using namespace cyclotomy::polyq;
using cyclotomy::numt::euler_phi;

namespace {

// prod (x - e^{2 pi i k / n}) over k coprime to n at 256 bits, rounded to integers
IntPolynomial numeric_cyclotomic(unsigned long n) {
    using cyclotomy::numeric::Real;
    const mpfr_prec_t bits = 256;
    std::vector<Real> re{Real(1L, bits)}, im{Real(0L, bits)};
    for (unsigned long k = 1; k <= n; ++k) {
        if (std::gcd(k, n) != 1) continue;
        const Real c = cyclotomy::numeric::cos_2pi(mpq_class(k, n), bits);
        const Real s = cyclotomy::numeric::sin_2pi(mpq_class(k, n), bits);
        std::vector<Real> nre(re.size() + 1, Real(0L, bits)), nim(im.size() + 1, Real(0L, bits));
        for (std::size_t i = 0; i < re.size(); ++i) {
            nre[i + 1] += re[i];
            nim[i + 1] += im[i];
            nre[i] -= c * re[i] - s * im[i];
            nim[i] -= c * im[i] + s * re[i];
        }
        re = std::move(nre);
        im = std::move(nim);
    }
    const Real tol = cyclotomy::numeric::tenth_power(20, bits);
    std::vector<mpz_class> out;
    for (std::size_t i = 0; i < re.size(); ++i) {
        const mpz_class r = (re[i] + Real(mpq_class(1, 2), bits)).floor_scaled(0);
        REQUIRE((re[i] - Real(mpq_class(r), bits)).abs() < tol);
        REQUIRE(im[i].abs() < tol);
        out.push_back(r);
    }
    return IntPolynomial(out);
}

bool trial_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
    const IntPolynomial xm1{-1, 1}, xp1{1, 1};
    CHECK(poly_arith(xm1, xp1, PolyOp::Mul) == IntPolynomial{-1, 0, 1});
    CHECK(poly_arith(xm1, xp1, PolyOp::Add) == IntPolynomial{0, 2});
    CHECK(poly_arith(xm1, xm1, PolyOp::Sub).is_zero());
    CHECK(poly_arith(xm1, xm1, PolyOp::Sub).degree() == -1);
    CHECK(exact_div(IntPolynomial::x_pow_minus_one(9), IntPolynomial::x_pow_minus_one(3)) ==
          IntPolynomial{1, 0, 0, 1, 0, 0, 1});
    CHECK_THROWS_AS(exact_div(IntPolynomial{1, 0, 1}, xp1), NotDivisible);
    CHECK_THROWS_AS(exact_div(IntPolynomial{1, 2}, IntPolynomial{}), NotDivisible);
    CHECK(IntPolynomial{1, 0, -1, 0, 1}.to_string() == "x^4 - x^2 + 1");
    CHECK(IntPolynomial{0, 0, 0}.is_zero());
}

TEST_CASE("taylor shift") {
    // (x + 1)^2 at x -> x - 1 gives x^2
    CHECK(taylor_shift(IntPolynomial{1, 2, 1}, -1) == IntPolynomial{0, 0, 1});
    CHECK(taylor_shift(cyclotomic(9), 1) == IntPolynomial{3, 9, 18, 21, 15, 6, 1});
}

TEST_CASE("cyclotomic examples") {
    CHECK(cyclotomic(1) == IntPolynomial{-1, 1});
    CHECK(cyclotomic(7) == IntPolynomial{1, 1, 1, 1, 1, 1, 1});
    CHECK(cyclotomic(12) == IntPolynomial{1, 0, -1, 0, 1});
    CHECK(cyclotomic(15) == IntPolynomial{1, -1, 0, 1, -1, 1, 0, -1, 1});
    // first coefficient of magnitude 2
    const auto c105 = cyclotomic(105).coefficients();
    const mpz_class biggest = *std::max_element(c105.begin(), c105.end(), [](const auto& a, const auto& b) {
        return abs(a) < abs(b);
    });
    CHECK(abs(biggest) == 2);
    for (unsigned long n = 1; n < 105; ++n) {
        const IntPolynomial phi = cyclotomic(n);
        for (const auto& a : phi.coefficients()) REQUIRE(abs(a) <= 1);
    }
}

TEST_CASE("cyclotomic agrees with the numeric root product") {
    for (unsigned long n = 1; n <= 120; ++n) REQUIRE(cyclotomic(n) == numeric_cyclotomic(n));
}

TEST_CASE("division and Moebius constructions agree") {
    for (unsigned long n = 1; n <= 400; ++n) REQUIRE(cyclotomic_by_division(n) == cyclotomic_by_moebius(n));
}

TEST_CASE("degree of Phi_n is phi(n)") {
    for (unsigned long n = 1; n <= 1000; ++n) REQUIRE(cyclotomic(n).degree() == euler_phi(n));
}

TEST_CASE("product over divisors is x^n - 1") {
    for (unsigned long n = 1; n <= 300; ++n) {
        IntPolynomial prod{1};
        for (unsigned long d = 1; d <= n; ++d)
            if (n % d == 0) prod = prod * cyclotomic(d);
        REQUIRE(prod == IntPolynomial::x_pow_minus_one(n));
    }
}

TEST_CASE("prime and prime power cyclotomics") {
    for (unsigned long p = 2; p <= 50; ++p) {
        if (!trial_prime(p)) continue;
        const auto c = cyclotomic(p).coefficients();
        REQUIRE(c.size() == p);
        for (const auto& a : c) REQUIRE(a == 1);
    }
    for (unsigned long p : {3UL, 5UL, 7UL, 11UL, 13UL})
        for (unsigned r = 1; r <= 2; ++r) {
            const unsigned long q = r == 1 ? p : p * p;
            const unsigned long lower = r == 1 ? 1 : p;
            CHECK(cyclotomic(q) == exact_div(IntPolynomial::x_pow_minus_one(q), IntPolynomial::x_pow_minus_one(lower)));
        }
}

TEST_CASE("Eisenstein after shifting by one") {
    CHECK(satisfies_eisenstein(IntPolynomial{3, 9, 18, 21, 15, 6, 1}, 3));
    CHECK_FALSE(satisfies_eisenstein(IntPolynomial{9, 3, 1}, 3));
    CHECK_FALSE(satisfies_eisenstein(IntPolynomial{3, 1, 3}, 3));
    CHECK(eisenstein_shift_check(3, 2));
    CHECK(eisenstein_shift_check(5, 1));
    CHECK(eisenstein_shift_check(7, 2));
    CHECK_THROWS_AS(eisenstein_shift_check(2, 3), std::invalid_argument);
    for (unsigned long p : {3UL, 5UL, 7UL, 11UL, 13UL, 17UL})
        for (unsigned r = 1; r <= 3; ++r) {
            unsigned long q = 1;
            for (unsigned i = 0; i < r; ++i) q *= p;
            if (q > (1UL << 14)) continue;
            CHECK(eisenstein_shift_check(p, r));
        }
}

TEST_CASE("irreducibility oracle") {
    CHECK_FALSE(irreducibility_oracle(IntPolynomial{-1, 0, 1}, 24));
    CHECK(irreducibility_oracle(cyclotomic(9), 24));
    CHECK(irreducibility_oracle(cyclotomic(15), 24));
    // reducible with no rational root: (x^2 + 1)(x^2 + 2)
    CHECK_FALSE(irreducibility_oracle(IntPolynomial{2, 0, 3, 0, 1}, 24));
    CHECK_FALSE(irreducibility_oracle(cyclotomic(7) * cyclotomic(9), 24));
    CHECK_FALSE(irreducibility_oracle(IntPolynomial{2, 4}, 24));
    CHECK(irreducibility_oracle(IntPolynomial{-2, 0, 1}, 24));
    CHECK_THROWS_AS(irreducibility_oracle(cyclotomic(59), 58), std::invalid_argument);
    for (unsigned long n = 1; n <= 30; ++n) REQUIRE(irreducibility_oracle(cyclotomic(n), kOracleMaxDegree));
}
