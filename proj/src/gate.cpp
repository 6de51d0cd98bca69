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

#include "cyclotomy/gate.hpp"

#include "cyclotomy/numt.hpp"

#include <sstream>
#include <stdexcept>

namespace cyclotomy::gate {

ConstructibilityVerdict classify(const mpz_class& n) {
    if (n < 1) throw std::invalid_argument("classify: n must be positive, got " + n.get_str());
    const numt::Factorization f = numt::factor(n);

    ConstructibilityVerdict v;
    v.n = n;
    std::optional<Obstruction> square, non_fermat;
    for (const auto& [p, e] : f.factors()) {
        if (p == 2) {
            v.two_exponent = e;
            continue;
        }
        if (e >= 2 && !square) square = Obstruction{Obstruction::Kind::SquareDivisor, p};
        if (!numt::is_fermat_prime(p)) {
            if (!non_fermat) non_fermat = Obstruction{Obstruction::Kind::NonFermatPrime, p};
        } else if (e == 1) {
            v.fermat_primes.push_back(p);
        }
    }
    v.obstruction = square ? square : non_fermat;
    v.constructible = !v.obstruction;
    if (!v.constructible) v.fermat_primes.clear();

    // phi(n) a power of two <=> the field of n-th roots of unity is a 2-power tower
    const bool by_totient = numt::is_power_of_two(numt::euler_phi(f));
    if (by_totient != v.constructible)
        throw std::logic_error("classify(" + n.get_str() + "): factor route and totient route disagree");
    return v;
}

std::vector<unsigned long> enumerate_constructible(unsigned long bound) {
    std::vector<unsigned long> out;
    for (unsigned long n = 2; n <= bound; ++n)
        if (classify(mpz_class(n)).constructible) out.push_back(n);
    return out;
}

AngleCombination combine_angles(const mpz_class& n, const mpz_class& m) {
    if (n < 1 || m < 1) throw std::invalid_argument("combine_angles: n and m must be positive");
    mpz_class g, s, t;
    // g = s*m + t*n
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
    // x is determined mod n/g
    const mpz_class period = n / g;
    mpz_class x;
    mpz_fdiv_r(x.get_mpz_t(), s.get_mpz_t(), period.get_mpz_t());
    const mpz_class y = (g - x * m) / n;
    if (x * m + y * n != g) throw std::logic_error("combine_angles: Bezout normalization failed");
    return {n / g * m, x, y};
}

bool is_angle_constructible(const mpz_class& numer, const mpz_class& denom) {
    if (denom <= 0) throw std::invalid_argument("is_angle_constructible: denominator must be positive");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), numer.get_mpz_t(), denom.get_mpz_t());
    return classify(denom / g).constructible;
}

nlohmann::json integer_json(const mpz_class& z) {
    if (mpz_fits_slong_p(z.get_mpz_t())) return z.get_si();
    if (z > 0 && mpz_fits_ulong_p(z.get_mpz_t())) return z.get_ui();
    return z.get_str();
}

nlohmann::json to_json(const ConstructibilityVerdict& v) {
    nlohmann::json j;
    j["n"] = integer_json(v.n);
    j["constructible"] = v.constructible;
    j["two_exponent"] = v.two_exponent;
    nlohmann::json primes = nlohmann::json::array();
    for (const auto& p : v.fermat_primes) primes.push_back(integer_json(p));
    j["fermat_primes"] = primes;
    if (v.obstruction) {
        j["obstruction"] = {
            {"kind", v.obstruction->kind == Obstruction::Kind::SquareDivisor ? "square_divisor" : "non_fermat_prime"},
            {"prime", integer_json(v.obstruction->prime)},
        };
    } else {
        j["obstruction"] = nullptr;
    }
    return j;
}

std::string describe(const ConstructibilityVerdict& v) {
    std::ostringstream os;
    os << v.n.get_str() << ": ";
    if (v.constructible) {
        os << "constructible (2^" << v.two_exponent;
        for (const auto& p : v.fermat_primes) os << " * " << p.get_str();
        os << ")";
        if (v.degenerate()) os << " [degenerate]";
        return os.str();
    }
    os << "not constructible (";
    const auto& ob = *v.obstruction;
    if (ob.kind == Obstruction::Kind::SquareDivisor)
        os << ob.prime.get_str() << "^2 divides " << v.n.get_str();
    else
        os << ob.prime.get_str() << " is not a Fermat prime";
    os << ")";
    return os.str();
}

namespace {
std::string refusal(const ConstructibilityVerdict& v) {
    return "the regular " + v.n.get_str() + "-gon cannot be constructed with straightedge and compass: " +
           describe(v) + "; only 2^r times distinct Fermat primes (3, 5, 17, 257, 65537) qualify";
}
}  // namespace

NotConstructible::NotConstructible(ConstructibilityVerdict verdict)
    : std::invalid_argument(refusal(verdict)), verdict_(std::move(verdict)) {}

void require_constructible(const mpz_class& n) {
    ConstructibilityVerdict v = classify(n);
    if (!v.constructible) throw NotConstructible(std::move(v));
}

}  // namespace cyclotomy::gate
