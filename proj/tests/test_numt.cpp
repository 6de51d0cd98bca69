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
#include <set>

#include "cyclotomy/numt.hpp"
#include "doctest.h"

using namespace cyclotomy::numt;

namespace {

bool trial_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("factor small and large values") {
    CHECK(factor(1).factors().empty());
    const auto f18 = factor(18).factors();
    REQUIRE(f18.size() == 2);
    CHECK(f18[0] == PrimePower{2, 1});
    CHECK(f18[1] == PrimePower{3, 2});

    const auto f = factor(mpz_class("4294967297")).factors();
    REQUIRE(f.size() == 2);
    CHECK(f[0] == PrimePower{641, 1});
    CHECK(f[1] == PrimePower{6700417, 1});

    // F_6 needs rho past the trial division bound
    const auto f6 = factor(fermat_number(6).value).factors();
    REQUIRE(f6.size() == 2);
    CHECK(f6[0].prime == 274177);
    CHECK(f6[1].prime == mpz_class("67280421310721"));

    CHECK_THROWS_AS(factor(0), std::invalid_argument);
}

TEST_CASE("factor reassembles and lists primes") {
    for (unsigned long n = 1; n <= 10000; ++n) {
        const Factorization f = factor(n);
        mpz_class product = 1;
        mpz_class last = 1;
        for (const auto& pp : f.factors()) {
            REQUIRE(pp.prime > last);
            REQUIRE(pp.exponent >= 1);
            REQUIRE(trial_prime(pp.prime.get_ui()));
            last = pp.prime;
            mpz_class power;
            mpz_pow_ui(power.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
            product *= power;
        }
        REQUIRE(product == n);
    }
}

TEST_CASE("euler_phi matches a coprime count") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(17) == 16);
    CHECK(euler_phi(300) == 80);
    // sieve oracle for every n up to 10^5
    const unsigned long limit = 100000;
    std::vector<unsigned long> phi(limit + 1);
    std::iota(phi.begin(), phi.end(), 0UL);
    for (unsigned long p = 2; p <= limit; ++p)
        if (phi[p] == p)
            for (unsigned long m = p; m <= limit; m += p) phi[m] -= phi[m] / p;
    for (unsigned long n = 1; n <= limit; ++n) REQUIRE(euler_phi(n) == phi[n]);
    // direct gcd count on a sample
    for (unsigned long n : {1UL, 2UL, 36UL, 97UL, 210UL, 1024UL, 9991UL}) {
        unsigned long count = 0;
        for (unsigned long k = 1; k <= n; ++k) count += std::gcd(k, n) == 1;
        CHECK(euler_phi(n) == count);
    }
}

TEST_CASE("is_prime") {
    CHECK(is_prime(65537));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(mpz_class("4294967297")));
    for (unsigned long n = 0; n < 20000; ++n) REQUIRE(is_prime(n) == trial_prime(n));
    // strong pseudoprimes to several small bases
    CHECK_FALSE(is_prime(mpz_class("3215031751")));
    CHECK_FALSE(is_prime(mpz_class("3825123056546413051")));
    CHECK(is_prime(mpz_class("18446744073709551557")));
    CHECK(is_prime(mpz_class("170141183460469231731687303715884105727")));
}

TEST_CASE("Fermat numbers and Fermat primes") {
    CHECK(fermat_number(0).value == 3);
    CHECK(fermat_number(4).value == 65537);
    CHECK(fermat_number(5).value == mpz_class("4294967297"));
    CHECK(is_fermat_prime(257));
    CHECK_FALSE(is_fermat_prime(9));
    CHECK_FALSE(is_fermat_prime(mpz_class("4294967297")));
    std::vector<unsigned long> found;
    for (unsigned long n = 2; n < 70000; ++n)
        if (is_fermat_prime(n)) found.push_back(n);
    CHECK(found == std::vector<unsigned long>{3, 5, 17, 257, 65537});
}

TEST_CASE("2^m + 1 is composite when m is not a power of two") {
    for (unsigned long m = 1; m <= 30; ++m) {
        mpz_class v;
        mpz_ui_pow_ui(v.get_mpz_t(), 2, m);
        v += 1;
        if (!is_power_of_two(m)) CHECK_FALSE(is_prime(v));
    }
}

TEST_CASE("primitive_root") {
    CHECK(primitive_root(5) == 2);
    CHECK(primitive_root(17) == 3);
    CHECK(primitive_root(257) == 3);
    CHECK(primitive_root(65537) == 3);
    CHECK_THROWS_AS(primitive_root(2), std::invalid_argument);
    CHECK_THROWS_AS(primitive_root(15), std::invalid_argument);

    for (unsigned long p = 3; p <= 10000; ++p) {
        if (!trial_prime(p)) continue;
        const unsigned long g = primitive_root(p).get_ui();
        std::vector<bool> seen(p, false);
        unsigned long x = 1;
        for (unsigned long i = 0; i + 1 < p; ++i) {
            REQUIRE_FALSE(seen[x]);
            seen[x] = true;
            x = x * g % p;
        }
        REQUIRE(x == 1);
        // nothing smaller generates
        for (unsigned long h = 2; h < g; ++h) REQUIRE(multiplicative_order(h, p) < p - 1);
    }
}

TEST_CASE("moebius and divisors") {
    CHECK(moebius(factor(1)) == 1);
    CHECK(moebius(factor(30)) == -1);
    CHECK(moebius(factor(12)) == 0);
    std::vector<mpz_class> want{1, 2, 3, 4, 6, 12};
    CHECK(divisors(factor(12)) == want);
    for (unsigned long n = 1; n <= 500; ++n) {
        std::vector<mpz_class> brute;
        for (unsigned long d = 1; d <= n; ++d)
            if (n % d == 0) brute.push_back(d);
        REQUIRE(divisors(factor(n)) == brute);
    }
}
