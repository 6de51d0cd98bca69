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

#include "cyclotomy/numt.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

namespace cyclotomy::numt {

namespace {

constexpr std::uint32_t kTrialLimit = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t{i} * i; j <= kTrialLimit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

// Bound below which the 13-base strong probable prime test is a proof
// (Sorenson & Webster).
const mpz_class& deterministic_bound() {
    static const mpz_class bound("3317044064679887385961981");
    return bound;
}

bool strong_probable_prime(const mpz_class& n, unsigned long base) {
    mpz_class d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    mpz_class a = base;
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const mpz_class minus_one = n - 1;
    if (x == 1 || x == minus_one) return true;
    for (unsigned long r = 1; r < s; ++r) {
        mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
        if (x == minus_one) return true;
        if (x == 1) return false;
    }
    return false;
}

// Pollard-Brent; returns a nontrivial divisor of the odd composite n.
mpz_class pollard_brent(const mpz_class& n) {
    for (unsigned long c = 1;; ++c) {
        mpz_class y = 2, x, ys, q = 1, g = 1;
        unsigned long r = 1;
        const unsigned long m = 128;
        auto step = [&](mpz_class& v) {
            v = v * v + c;
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) step(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    step(y);
                    mpz_class diff = x - y;
                    q = q * abs(diff);
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                step(ys);
                mpz_class diff = x - ys;
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split_large(const mpz_class& n, std::vector<mpz_class>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    mpz_class d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

}  // namespace

Factorization::Factorization(mpz_class value, std::vector<PrimePower> factors)
    : value_(std::move(value)), factors_(std::move(factors)) {
    if (value_ < 1) throw std::invalid_argument("factorization of a non-positive integer");
    mpz_class product = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto& f = factors_[i];
        if (f.exponent == 0) throw std::invalid_argument("factorization with zero exponent");
        if (i > 0 && !(factors_[i - 1].prime < f.prime))
            throw std::invalid_argument("factorization primes not strictly increasing");
        if (!is_prime(f.prime))
            throw std::invalid_argument("factorization entry " + f.prime.get_str() + " is not prime");
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        product *= pe;
    }
    if (product != value_) throw std::invalid_argument("factorization does not reassemble to its value");
}

unsigned long Factorization::exponent_of(const mpz_class& p) const {
    for (const auto& f : factors_)
        if (f.prime == p) return f.exponent;
    return 0;
}

bool Factorization::is_squarefree() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const PrimePower& f) { return f.exponent == 1; });
}

Factorization factor(const mpz_class& n) {
    if (n < 1) throw std::invalid_argument("factor: n must be positive, got " + n.get_str());
    std::vector<PrimePower> out;
    mpz_class rest = n;
    for (std::uint32_t p : small_primes()) {
        if (mpz_cmp_ui(rest.get_mpz_t(), 1) == 0) break;
        // p^2 > rest means rest is 1 or prime
        mpz_class p2 = mpz_class(p) * p;
        if (p2 > rest) break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            unsigned long e = 0;
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++e;
            }
            out.push_back({mpz_class(p), e});
        }
    }
    if (rest > 1) {
        std::vector<mpz_class> large;
        split_large(rest, large);
        std::sort(large.begin(), large.end());
        for (const auto& q : large) {
            if (!out.empty() && out.back().prime == q)
                ++out.back().exponent;
            else
                out.push_back({q, 1});
        }
    }
    return Factorization(n, std::move(out));
}

mpz_class euler_phi(const Factorization& f) {
    mpz_class phi = 1;
    for (const auto& [p, e] : f.factors()) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e - 1);
        phi *= pe * (p - 1);
    }
    return phi;
}

mpz_class euler_phi(const mpz_class& n) { return euler_phi(factor(n)); }

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    const auto& primes = small_primes();
    for (std::size_t i = 0; i < 168; ++i) {  // primes below 1000
        const std::uint32_t p = primes[i];
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    if (n < 1'000'000) return true;
    static constexpr unsigned long kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned long b : kBases)
        if (!strong_probable_prime(n, b)) return false;
    if (n < deterministic_bound()) return true;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool is_power_of_two(const mpz_class& n) {
    return n > 0 && mpz_popcount(n.get_mpz_t()) == 1;
}

FermatNumber fermat_number(unsigned long nu) {
    if (nu >= 8 * sizeof(unsigned long)) throw std::invalid_argument("fermat_number: nu too large");
    FermatNumber f;
    f.nu = nu;
    mpz_ui_pow_ui(f.value.get_mpz_t(), 2, 1UL << nu);
    f.value += 1;
    return f;
}

bool is_fermat_prime(const mpz_class& n) {
    if (n < 2) throw std::invalid_argument("is_fermat_prime: n must be >= 2");
    const mpz_class m1 = n - 1;
    const bool prime = is_prime(n);

    // 2^m + 1 with m >= 1, prime
    const bool by_power = prime && n > 2 && is_power_of_two(m1);

    // 2^(2^nu) + 1, prime
    bool by_fermat_form = false;
    if (prime && n > 2 && is_power_of_two(m1)) {
        const unsigned long m = mpz_sizeinbase(m1.get_mpz_t(), 2) - 1;
        by_fermat_form = m > 0 && (m & (m - 1)) == 0;
    }
    if (by_power != by_fermat_form)
        throw std::logic_error("2^m + 1 = " + n.get_str() + " is prime with m not a power of two");
    return by_power;
}

mpz_class multiplicative_order(const mpz_class& a, const mpz_class& n) {
    if (n < 1) throw std::invalid_argument("multiplicative_order: modulus must be positive");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    if (g != 1) throw std::invalid_argument("multiplicative_order: gcd(a, n) != 1");
    if (n == 1) return 1;
    // order divides phi(n); strip prime factors while the power stays 1
    const Factorization phi_f = factor(euler_phi(n));
    mpz_class order = phi_f.value();
    mpz_class x;
    for (const auto& [q, e] : phi_f.factors()) {
        for (unsigned long i = 0; i < e; ++i) {
            mpz_class candidate = order / q;
            mpz_powm(x.get_mpz_t(), a.get_mpz_t(), candidate.get_mpz_t(), n.get_mpz_t());
            if (x != 1) break;
            order = candidate;
        }
    }
    return order;
}

mpz_class primitive_root(const mpz_class& p) {
    if (p < 3 || mpz_even_p(p.get_mpz_t()) || !is_prime(p))
        throw std::invalid_argument("primitive_root: " + p.get_str() + " is not an odd prime");
    const mpz_class pm1 = p - 1;
    const Factorization f = factor(pm1);
    mpz_class x;
    for (mpz_class g = 2; g < p; ++g) {
        bool generator = true;
        for (const auto& [q, e] : f.factors()) {
            mpz_class ex = pm1 / q;
            mpz_powm(x.get_mpz_t(), g.get_mpz_t(), ex.get_mpz_t(), p.get_mpz_t());
            if (x == 1) {
                generator = false;
                break;
            }
        }
        if (generator) return g;
    }
    throw std::logic_error("no primitive root found for prime " + p.get_str());
}

int moebius(const Factorization& f) {
    if (!f.is_squarefree()) return 0;
    return f.factors().size() % 2 == 0 ? 1 : -1;
}

std::vector<mpz_class> divisors(const Factorization& f) {
    std::vector<mpz_class> out{1};
    for (const auto& [p, e] : f.factors()) {
        const std::size_t base = out.size();
        mpz_class pk = 1;
        for (unsigned long k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cyclotomy::numt
