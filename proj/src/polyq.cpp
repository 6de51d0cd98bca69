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

#include "cyclotomy/polyq.hpp"

#include "cyclotomy/numt.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <sstream>

namespace cyclotomy::polyq {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients) {
    coeffs_.reserve(coefficients.size());
    for (long c : coefficients) coeffs_.emplace_back(c);
    trim();
}

IntPolynomial IntPolynomial::monomial(const mpz_class& c, std::size_t degree) {
    std::vector<mpz_class> v(degree + 1);
    v[degree] = c;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::x_pow_minus_one(std::size_t k) {
    if (k == 0) return IntPolynomial();
    std::vector<mpz_class> v(k + 1);
    v[0] = -1;
    v[k] = 1;
    return IntPolynomial(std::move(v));
}

void IntPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class IntPolynomial::coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }

const mpz_class& IntPolynomial::leading() const {
    if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

std::string IntPolynomial::to_string(char var) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const mpz_class& c = coeffs_[i];
        if (c == 0) continue;
        const mpz_class mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (mag != 1 || i == 0) os << mag.get_str();
        if (i >= 1) os << var;
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] = a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] = a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
    return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return IntPolynomial();
    std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j] == 0) continue;
            mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
        }
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator-() const {
    std::vector<mpz_class> out(coeffs_);
    for (auto& c : out) c = -c;
    return IntPolynomial(std::move(out));
}

IntPolynomial exact_div(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw NotDivisible("exact_div by the zero polynomial");
    if (a.is_zero()) return IntPolynomial();
    if (a.degree() < b.degree()) throw NotDivisible("exact_div: divisor degree exceeds dividend degree");

    const auto& bc = b.coefficients();
    const std::size_t db = bc.size() - 1;
    const mpz_class& lc = bc.back();
    const bool monic = lc == 1;
    std::vector<std::size_t> support;  // nonzero non-leading divisor terms
    for (std::size_t j = 0; j < db; ++j)
        if (bc[j] != 0) support.push_back(j);

    std::vector<mpz_class> r = a.coefficients();
    std::vector<mpz_class> q(r.size() - db);
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i] == 0) continue;
        mpz_class c;
        if (monic) {
            c = r[i];
        } else {
            if (!mpz_divisible_p(r[i].get_mpz_t(), lc.get_mpz_t()))
                throw NotDivisible("exact_div: leading coefficient does not divide over Z");
            mpz_divexact(c.get_mpz_t(), r[i].get_mpz_t(), lc.get_mpz_t());
        }
        const std::size_t shift = i - db;
        for (std::size_t j : support) mpz_submul(r[shift + j].get_mpz_t(), c.get_mpz_t(), bc[j].get_mpz_t());
        r[i] = 0;
        q[shift] = std::move(c);
    }
    for (std::size_t i = 0; i < db; ++i)
        if (r[i] != 0) throw NotDivisible("exact_div: nonzero remainder");
    return IntPolynomial(std::move(q));
}

IntPolynomial poly_arith(const IntPolynomial& a, const IntPolynomial& b, PolyOp op) {
    switch (op) {
        case PolyOp::Add: return a + b;
        case PolyOp::Sub: return a - b;
        case PolyOp::Mul: return a * b;
        case PolyOp::ExactDiv: return exact_div(a, b);
    }
    throw std::invalid_argument("poly_arith: unknown operation");
}

IntPolynomial taylor_shift(const IntPolynomial& f, const mpz_class& c) {
    std::vector<mpz_class> v = f.coefficients();
    const std::size_t n = v.size();
    // repeated synthetic division by (x - c)
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;) mpz_addmul(v[j].get_mpz_t(), c.get_mpz_t(), v[j + 1].get_mpz_t());
    return IntPolynomial(std::move(v));
}

IntPolynomial cyclotomic_by_division(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("cyclotomic: n must be positive");
    const auto divs = numt::divisors(numt::factor(mpz_class(static_cast<unsigned long>(n))));
    std::map<std::uint64_t, IntPolynomial> phi;
    for (const auto& dz : divs) {
        const std::uint64_t d = dz.get_ui();
        IntPolynomial acc = IntPolynomial::x_pow_minus_one(d);
        for (const auto& [e, phi_e] : phi)
            if (d % e == 0) acc = exact_div(acc, phi_e);
        phi.emplace(d, std::move(acc));
    }
    return phi.at(n);
}

IntPolynomial cyclotomic_by_moebius(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("cyclotomic: n must be positive");
    const auto divs = numt::divisors(numt::factor(mpz_class(static_cast<unsigned long>(n))));
    IntPolynomial num{1};
    std::vector<std::uint64_t> den;
    for (const auto& dz : divs) {
        const int mu = numt::moebius(numt::factor(dz));
        const std::uint64_t k = n / dz.get_ui();
        if (mu == 1) num = num * IntPolynomial::x_pow_minus_one(k);
        if (mu == -1) den.push_back(k);
    }
    for (std::uint64_t k : den) num = exact_div(num, IntPolynomial::x_pow_minus_one(k));
    return num;
}

IntPolynomial cyclotomic(std::uint64_t n) {
    IntPolynomial by_division = cyclotomic_by_division(n);
    IntPolynomial by_moebius = cyclotomic_by_moebius(n);
    if (!(by_division == by_moebius))
        throw std::logic_error("cyclotomic(" + std::to_string(n) + "): division and Moebius routes disagree");
    return by_division;
}

bool satisfies_eisenstein(const IntPolynomial& f, const mpz_class& p) {
    if (f.degree() < 1) return false;
    const auto& c = f.coefficients();
    if (mpz_divisible_p(c.back().get_mpz_t(), p.get_mpz_t())) return false;
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        if (!mpz_divisible_p(c[i].get_mpz_t(), p.get_mpz_t())) return false;
    const mpz_class p2 = p * p;
    return !mpz_divisible_p(c[0].get_mpz_t(), p2.get_mpz_t());
}

bool eisenstein_shift_check(std::uint64_t p, unsigned r) {
    const mpz_class pz(static_cast<unsigned long>(p));
    if (p < 3 || p % 2 == 0 || !numt::is_prime(pz))
        throw std::invalid_argument("eisenstein_shift_check: p must be an odd prime");
    if (r == 0) throw std::invalid_argument("eisenstein_shift_check: r must be positive");
    std::uint64_t pr = 1;
    for (unsigned i = 0; i < r; ++i) {
        pr *= p;
        if (pr > (1u << 14)) throw std::invalid_argument("eisenstein_shift_check: p^r exceeds 2^14");
    }
    return satisfies_eisenstein(taylor_shift(cyclotomic(pr), 1), pz);
}

namespace {

using Complex = std::complex<long double>;
using RationalPoly = std::vector<mpq_class>;  // ascending, trimmed

void trim(RationalPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RationalPoly rational_remainder(RationalPoly a, const RationalPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        const mpq_class c = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
        a.pop_back();
        trim(a);
    }
    return a;
}

long gcd_degree_with_derivative(const IntPolynomial& f) {
    RationalPoly a, b;
    for (const auto& c : f.coefficients()) a.emplace_back(c);
    for (std::size_t i = 1; i < f.coefficients().size(); ++i) b.emplace_back(f.coefficients()[i] * static_cast<unsigned long>(i));
    trim(b);
    while (!b.empty()) {
        RationalPoly r = rational_remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return static_cast<long>(a.size()) - 1;
}

std::vector<Complex> numeric_roots(const IntPolynomial& f) {
    const std::size_t n = static_cast<std::size_t>(f.degree());
    std::vector<long double> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) c[i] = f.coefficients()[i].get_d();
    long double bound = 0;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::fabs(c[i] / c[n]));
    bound += 1;

    auto eval = [&](Complex z, Complex& dz) {
        Complex v = c[n];
        dz = 0;
        for (std::size_t i = n; i-- > 0;) {
            dz = dz * z + v;
            v = v * z + c[i];
        }
        return v;
    };

    std::vector<Complex> z(n);
    const long double pi = std::acos(-1.0L);
    for (std::size_t k = 0; k < n; ++k)
        z[k] = std::polar(std::min(bound, 1.5L), 2 * pi * static_cast<long double>(k) / static_cast<long double>(n) + 0.4L);

    // Aberth-Ehrlich
    for (int iter = 0; iter < 2000; ++iter) {
        long double worst = 0;
        for (std::size_t k = 0; k < n; ++k) {
            Complex d;
            const Complex v = eval(z[k], d);
            if (v == Complex(0)) continue;
            const Complex ratio = v / d;
            Complex sum = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) sum += Complex(1) / (z[k] - z[j]);
            const Complex step = ratio / (Complex(1) - ratio * sum);
            z[k] -= step;
            worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(z[k])));
        }
        if (worst < 1e-17L) break;
    }
    return z;
}

struct RootUnit {
    std::vector<long double> poly;  // ascending, monic, degree 1 or 2
};

std::vector<RootUnit> group_roots(const std::vector<Complex>& roots) {
    std::vector<RootUnit> units;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        const Complex r = roots[i];
        const long double scale = std::max(1.0L, std::abs(r));
        if (std::fabs(r.imag()) < 1e-9L * scale) {
            used[i] = true;
            units.push_back({{-r.real(), 1}});
            continue;
        }
        std::size_t best = roots.size();
        long double best_dist = 0;
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            const long double d = std::abs(roots[j] - std::conj(r));
            if (best == roots.size() || d < best_dist) {
                best = j;
                best_dist = d;
            }
        }
        if (best == roots.size() || best_dist > 1e-6L * scale)
            throw std::logic_error("irreducibility_oracle: could not pair complex roots with conjugates");
        used[i] = used[best] = true;
        const Complex m = (r + std::conj(roots[best])) / 2.0L;
        units.push_back({{std::norm(m), -2 * m.real(), 1}});
    }
    return units;
}

std::vector<long double> multiply(const std::vector<long double>& a, const std::vector<long double>& b) {
    std::vector<long double> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

bool divides_exactly(const IntPolynomial& f, const IntPolynomial& g) {
    try {
        (void)exact_div(f, g);
        return true;
    } catch (const NotDivisible&) {
        return false;
    }
}

}  // namespace

bool irreducibility_oracle(const IntPolynomial& f, unsigned bound) {
    if (bound > kOracleMaxDegree)
        throw std::invalid_argument("irreducibility_oracle: bound exceeds " + std::to_string(kOracleMaxDegree));
    if (f.degree() > static_cast<long>(bound))
        throw std::invalid_argument("irreducibility_oracle: degree " + std::to_string(f.degree()) + " above bound");
    if (f.degree() <= 0) return false;

    mpz_class content = 0;
    for (const auto& c : f.coefficients()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (content != 1) return false;
    if (f.degree() == 1) return true;
    if (gcd_degree_with_derivative(f) > 0) return false;  // repeated factor

    const mpz_class lc = abs(f.leading());
    const mpz_class c0 = abs(f.coefficients().front());
    if (c0 == 0) return false;  // x divides f

    // rational roots a/b with a | c0, b | lc
    const auto lead_divs = numt::divisors(numt::factor(lc));
    const auto const_divs = numt::divisors(numt::factor(c0));
    for (const auto& b : lead_divs)
        for (const auto& a : const_divs)
            for (int s : {1, -1})
                if (divides_exactly(f, IntPolynomial(std::vector<mpz_class>{-s * a, b}))) return false;

    const auto units = group_roots(numeric_roots(f));
    const long half = f.degree() / 2;

    bool found = false;
    std::function<void(std::size_t, const std::vector<long double>&)> search =
        [&](std::size_t next, const std::vector<long double>& product) {
            if (found) return;
            const long deg = static_cast<long>(product.size()) - 1;
            if (deg >= 2) {
                for (const auto& d : lead_divs) {
                    const long double scale = d.get_d();
                    std::vector<mpz_class> cand;
                    bool integral = true;
                    for (long double x : product) {
                        const long double v = x * scale;
                        const long double r = std::nearbyint(v);
                        if (std::fabs(v - r) > 1e-6L * std::max(1.0L, std::fabs(v))) {
                            integral = false;
                            break;
                        }
                        mpz_class z;
                        mpz_set_d(z.get_mpz_t(), static_cast<double>(r));
                        cand.push_back(z);
                    }
                    if (integral && divides_exactly(f, IntPolynomial(std::move(cand)))) {
                        found = true;
                        return;
                    }
                }
            }
            for (std::size_t i = next; i < units.size(); ++i) {
                if (deg + static_cast<long>(units[i].poly.size()) - 1 > half) continue;
                search(i + 1, multiply(product, units[i].poly));
                if (found) return;
            }
        };
    search(0, {1.0L});
    return !found;
}

}  // namespace cyclotomy::polyq
