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

#include "cyclotomy/periods.hpp"

#include <algorithm>
#include <stdexcept>

#include "cyclotomy/gate.hpp"
#include "cyclotomy/numt.hpp"

namespace cyclotomy::periods {

using numeric::Real;

// ---------------------------------------------------------------- PeriodElement

PeriodElement::PeriodElement(unsigned long p) : p_(p), c_(p) {
    if (p < 3) throw std::invalid_argument("PeriodElement: p must be an odd prime");
}

PeriodElement PeriodElement::rational(unsigned long p, const mpq_class& q) {
    PeriodElement out(p);
    out.c_[0] = q;
    return out;
}

PeriodElement PeriodElement::zeta_power(unsigned long p, unsigned long k) {
    PeriodElement out(p);
    out.c_[k % p] = 1;
    return out;
}

const mpq_class& PeriodElement::coefficient(unsigned long k) const {
    if (k == 0 || k >= p_) throw std::out_of_range("PeriodElement: exponent must lie in 1..p-1");
    return c_[k];
}

void PeriodElement::add_term(unsigned long k, const mpq_class& c) { c_[k % p_] += c; }

PeriodElement PeriodElement::canonical() const {
    PeriodElement out(*this);
    if (out.c_[0] != 0) {
        const mpq_class c0 = out.c_[0];
        for (unsigned long k = 1; k < p_; ++k) out.c_[k] -= c0;
        out.c_[0] = 0;
    }
    return out;
}

bool PeriodElement::is_zero() const {
    const PeriodElement c = canonical();
    return std::all_of(c.c_.begin(), c.c_.end(), [](const mpq_class& x) { return x == 0; });
}

PeriodElement PeriodElement::apply(unsigned long a) const {
    if (a % p_ == 0) throw std::invalid_argument("PeriodElement::apply: exponent divisible by p");
    PeriodElement out(p_);
    out.c_[0] = c_[0];
    for (unsigned long k = 1; k < p_; ++k)
        if (c_[k] != 0) out.c_[(a % p_) * k % p_] += c_[k];
    return out;
}

std::pair<Real, Real> PeriodElement::numeric_value(mpfr_prec_t bits) const {
    Real re(c_[0], bits), im(bits);
    for (unsigned long k = 1; k < p_; ++k) {
        if (c_[k] == 0) continue;
        const mpq_class turns(k, p_);
        const Real c(c_[k], bits);
        re += c * numeric::cos_2pi(turns, bits);
        im += c * numeric::sin_2pi(turns, bits);
    }
    return {re, im};
}

void PeriodElement::check_same(const PeriodElement& b) const {
    if (p_ != b.p_)
        throw std::invalid_argument("period elements for different primes: " + std::to_string(p_) + " and " +
                                    std::to_string(b.p_));
}

PeriodElement& PeriodElement::operator+=(const PeriodElement& b) {
    check_same(b);
    for (unsigned long k = 0; k < p_; ++k) c_[k] += b.c_[k];
    return *this;
}

PeriodElement& PeriodElement::operator-=(const PeriodElement& b) {
    check_same(b);
    for (unsigned long k = 0; k < p_; ++k) c_[k] -= b.c_[k];
    return *this;
}

PeriodElement& PeriodElement::operator*=(const mpq_class& s) {
    for (auto& c : c_) c *= s;
    return *this;
}

PeriodElement operator*(const PeriodElement& a, const PeriodElement& b) {
    a.check_same(b);
    const unsigned long p = a.p_;
    std::vector<unsigned long> nz_a, nz_b;
    for (unsigned long k = 0; k < p; ++k) {
        if (a.c_[k] != 0) nz_a.push_back(k);
        if (b.c_[k] != 0) nz_b.push_back(k);
    }
    // integer coefficients are the common case; accumulate numerators over
    // a common denominator to avoid a gcd per term
    mpz_class den_a = 1, den_b = 1;
    for (auto k : nz_a) mpz_lcm(den_a.get_mpz_t(), den_a.get_mpz_t(), a.c_[k].get_den_mpz_t());
    for (auto k : nz_b) mpz_lcm(den_b.get_mpz_t(), den_b.get_mpz_t(), b.c_[k].get_den_mpz_t());
    std::vector<mpz_class> ia(p), ib(p), acc(p);
    for (auto k : nz_a) ia[k] = a.c_[k].get_num() * (den_a / a.c_[k].get_den());
    for (auto k : nz_b) ib[k] = b.c_[k].get_num() * (den_b / b.c_[k].get_den());
    for (auto i : nz_a)
        for (auto j : nz_b) mpz_addmul(acc[(i + j) % p].get_mpz_t(), ia[i].get_mpz_t(), ib[j].get_mpz_t());
    PeriodElement out(p);
    const mpz_class den = den_a * den_b;
    for (unsigned long k = 0; k < p; ++k) {
        out.c_[k] = mpq_class(acc[k], den);
        out.c_[k].canonicalize();
    }
    return out.canonical();
}

bool operator==(const PeriodElement& a, const PeriodElement& b) {
    if (a.p_ != b.p_) return false;
    return a.canonical().c_ == b.canonical().c_;
}

PeriodElement period_mul(const PeriodElement& a, const PeriodElement& b) { return a * b; }

// ---------------------------------------------------------------- tower

std::vector<unsigned long> PeriodTower::exponents(unsigned level, unsigned long j) const {
    if (level > e_ || j >= count(level)) throw std::out_of_range("period index out of range");
    std::vector<unsigned long> out;
    const unsigned long step = 1UL << level;
    for (unsigned long i = j; i < p_ - 1; i += step) out.push_back(pow_[i]);
    return out;
}

const PeriodElement& PeriodTower::period(unsigned level, unsigned long j) const {
    if (!exact()) throw std::logic_error("period algebra is not materialized on a stretch tower");
    if (level > e_ || j >= count(level)) throw std::out_of_range("period index out of range");
    return levels_[level][j];
}

SiblingQuadratic PeriodTower::quadratic(unsigned level, unsigned long j) const {
    if (level < 1 || level > e_) throw std::out_of_range("quadratics exist for levels 1..e");
    const unsigned long h = 1UL << (level - 1);
    if (j >= h) throw std::out_of_range("pair index must be below 2^(level-1)");
    const auto& base = products_[level - 1];
    SiblingQuadratic q{level, j, std::vector<mpz_class>(h)};
    for (unsigned long m = 0; m < h; ++m) q.product[m] = base[(m + h - j) % h];
    return q;
}

namespace {

// Product of eta(k, 0) and eta(k, h) by counting: it equals the sum over
// b in the coset of eta(k, h) of the level-k period containing 1 + b, plus
// (p-1)/2^k for every b = -1.
std::vector<mpz_class> counted_product(const PeriodTower& t, unsigned k) {
    const unsigned long p = t.p();
    const unsigned long width = 1UL << k;
    const unsigned long h = width / 2;
    const unsigned long f = (p - 1) / width;
    std::vector<long> hits(width, 0);
    long constant = 0;
    for (unsigned long i = h; i < p - 1; i += width) {
        const unsigned long r = (1 + t.power(i)) % p;
        if (r == 0)
            constant += static_cast<long>(f);
        else
            ++hits[t.dlog(r) % width];
    }
    std::vector<mpz_class> out(h);
    for (unsigned long m = 0; m < h; ++m) {
        if (hits[m] != hits[m + h])
            throw std::logic_error("sibling product is not fixed by the level below (p = " + std::to_string(p) +
                                   ", level " + std::to_string(k) + ")");
        // the constant c equals -c times the sum of the level-(k-1) periods
        out[m] = hits[m] - constant;
    }
    return out;
}

// Coefficients of a canonical element on the level-(k-1) periods, or a
// logic_error when it does not lie in that level or is not integral.
std::vector<mpz_class> level_coordinates(const PeriodTower& t, const PeriodElement& x, unsigned level) {
    const unsigned long h = 1UL << level;
    const PeriodElement c = x.canonical();
    std::vector<mpz_class> out(h);
    for (unsigned long i = 0; i < t.p() - 1; ++i) {
        const mpq_class& v = c.coefficient(t.power(i));
        if (i < h) {
            if (v.get_den() != 1) throw std::logic_error("sibling product has a non-integral coefficient");
            out[i] = v.get_num();
        } else if (v != out[i % h]) {
            throw std::logic_error("sibling product does not lie in the level below");
        }
    }
    return out;
}

void check(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error(what);
}

}  // namespace

PeriodNumerics::PeriodNumerics(const PeriodTower& tower, mpfr_prec_t bits) : tower_(tower) {
    const unsigned long p = tower.p();
    cos_.reserve(p);
    sin_.reserve(p);
    for (unsigned long x = 0; x < p; ++x) {
        cos_.push_back(numeric::cos_2pi(mpq_class(x, p), bits));
        sin_.push_back(numeric::sin_2pi(mpq_class(x, p), bits));
    }
}

Real PeriodNumerics::real(unsigned level, unsigned long j) const {
    Real s(cos_[0].precision());
    for (unsigned long x : tower_.exponents(level, j)) s += cos_[x];
    return s;
}

Real PeriodNumerics::imag(unsigned level, unsigned long j) const {
    Real s(sin_[0].precision());
    for (unsigned long x : tower_.exponents(level, j)) s += sin_[x];
    return s;
}

PeriodTower build_tower(const mpz_class& p_in, const TowerOptions& options) {
    if (p_in < 3 || !numt::is_prime(p_in))
        throw std::invalid_argument("build_tower: " + p_in.get_str() + " is not an odd prime");
    if (!numt::is_power_of_two(p_in - 1))
        throw std::invalid_argument("build_tower: " + p_in.get_str() +
                                    " - 1 is not a power of two, so the periods do not form a quadratic tower "
                                    "and no straightedge-and-compass construction exists");
    if (p_in > 65537) throw std::invalid_argument("build_tower: p above 65537 is not supported");
    if (p_in == 65537 && !options.stretch)
        throw std::invalid_argument("build_tower: p = 65537 is only available as a stretch (numeric) tower");

    PeriodTower t;
    t.p_ = p_in.get_ui();
    t.g_ = numt::primitive_root(p_in).get_ui();
    const unsigned long p = t.p_;
    while ((1UL << t.e_) < p - 1) ++t.e_;

    t.pow_.resize(p - 1);
    t.log_.assign(p, 0);
    unsigned long x = 1;
    for (unsigned long i = 0; i < p - 1; ++i) {
        t.pow_[i] = x;
        t.log_[x] = i;
        x = x * t.g_ % p;
    }

    for (unsigned k = 1; k <= t.e_; ++k) t.products_.push_back(counted_product(t, k));

    if (!options.stretch) {
        t.levels_.resize(t.e_ + 1);
        for (unsigned k = 0; k <= t.e_; ++k) {
            for (unsigned long j = 0; j < t.count(k); ++j) {
                PeriodElement eta(p);
                for (unsigned long z : t.exponents(k, j)) eta.add_term(z, 1);
                t.levels_[k].push_back(std::move(eta));
            }
        }
        const PeriodElement minus_one = PeriodElement::rational(p, -1);
        check(t.levels_[0][0] == minus_one, "level-0 period differs from -1");
        for (unsigned k = 0; k <= t.e_; ++k) {
            PeriodElement total(p);
            for (const auto& eta : t.levels_[k]) total += eta;
            check(total == minus_one, "periods of level " + std::to_string(k) + " do not sum to -1");
        }
        for (unsigned long j = 0; j < t.count(t.e_); ++j)
            check(t.levels_[t.e_][j] == PeriodElement::zeta_power(p, t.pow_[j]),
                  "top-level period is not a single root of unity");
        for (unsigned k = 1; k <= t.e_; ++k) {
            const unsigned long h = 1UL << (k - 1);
            for (unsigned long j = 0; j < h; ++j) {
                const auto& a = t.levels_[k][j];
                const auto& b = t.levels_[k][j + h];
                check(a + b == t.levels_[k - 1][j], "siblings do not sum to their parent");
                const auto coords = level_coordinates(t, period_mul(a, b), k - 1);
                check(coords == t.quadratic(k, j).product,
                      "sibling product from the period algebra disagrees with the counting derivation");
            }
        }
    }

    // numeric confirmation of every pair-0 relation
    const mpfr_prec_t bits = numeric::bits_for_digits(options.check_digits + 10);
    const Real tol = numeric::tenth_power(options.check_digits - 10, bits);
    PeriodNumerics num(t, bits);
    for (unsigned k = 1; k <= t.e_; ++k) {
        const unsigned long h = 1UL << (k - 1);
        const Real ar = num.real(k, 0), ai = num.imag(k, 0);
        const Real br = num.real(k, h), bi = num.imag(k, h);
        check(((ar + br) - num.real(k - 1, 0)).abs() < tol && ((ai + bi) - num.imag(k - 1, 0)).abs() < tol,
              "numeric sibling sum check failed at level " + std::to_string(k));
        Real qr(bits), qi(bits);
        const auto& c = t.products_[k - 1];
        for (unsigned long m = 0; m < h; ++m) {
            if (c[m] == 0) continue;
            const Real cm(mpq_class(c[m]), bits);
            qr += cm * num.real(k - 1, m);
            qi += cm * num.imag(k - 1, m);
        }
        const Real pr = ar * br - ai * bi;
        const Real pi = ar * bi + ai * br;
        check((pr - qr).abs() < tol && (pi - qi).abs() < tol,
              "numeric sibling product check failed at level " + std::to_string(k));
    }
    return t;
}

// ---------------------------------------------------------------- solving

bool TowerCertificate::valid() const {
    return !chain.empty() && std::all_of(chain.begin(), chain.end(), [](const TowerStep& s) {
        return s.galois_ok && s.numeric_ok;
    });
}

namespace {

struct Ambiguous {};

bool galois_step_ok(const PeriodTower& t, unsigned k) {
    const unsigned long h = 1UL << (k - 1);
    const PeriodElement delta = t.period(k, 0) - t.period(k, h);
    const unsigned long swap = t.power(h);
    if (delta.is_zero()) return false;
    if (!(delta.apply(swap) + delta).is_zero()) return false;
    const PeriodElement sq = period_mul(delta, delta);
    return sq.apply(swap) == sq;
}

int certified_sign(radix::Evaluator& ev, const radix::Expr& e) {
    try {
        return radix::IntervalArithmetic::sign(ev(e));
    } catch (const radix::EvaluationError& err) {
        if (err.kind() == radix::EvaluationError::Kind::Indeterminate) throw Ambiguous{};
        throw;
    }
}

bool encloses_within(radix::Evaluator& ev, const radix::Expr& e, const Real& target, const Real& tol) {
    radix::Interval iv;
    try {
        iv = ev(e);
    } catch (const radix::EvaluationError& err) {
        if (err.kind() == radix::EvaluationError::Kind::Indeterminate) throw Ambiguous{};
        throw;
    }
    const mpz_class unit = ev.arithmetic().unit();
    const Real lo(mpq_class(iv.lo, unit), target.precision());
    const Real hi(mpq_class(iv.hi, unit), target.precision());
    return !((target - tol) > lo) && !(hi > (target + tol));
}

TowerSolution solve_at(const PeriodTower& t, long digits, radix::ExprBuilder& b) {
    const unsigned e = t.depth();
    const mpfr_prec_t bits = numeric::bits_for_digits(digits + 20);
    const PeriodNumerics num(t, bits);
    radix::Evaluator ev(digits + 20, radix::pow10(25));
    const Real tol = numeric::tenth_power(digits - 10, bits);
    const Real margin = numeric::tenth_power(digits / 2, bits);
    const mpz_class height = 1000000;

    TowerSolution sol;
    sol.precision = digits;
    sol.certificate.p = t.p();
    sol.periods.resize(e);
    sol.periods[0] = {b.integer(-1)};
    std::vector<Real> generators;

    for (unsigned k = 1; k <= e; ++k) {
        const unsigned long h = 1UL << (k - 1);
        if (k < e) sol.periods[k].resize(2 * h);
        for (unsigned long j = 0; j < (k < e ? h : 1); ++j) {
            const SiblingQuadratic q = t.quadratic(k, j);
            const radix::Expr s = sol.periods[k - 1][j];
            std::vector<radix::Expr> terms;
            for (unsigned long m = 0; m < h; ++m)
                if (q.product[m] != 0) terms.push_back(b.mul(b.rational(mpq_class(q.product[m])), sol.periods[k - 1][m]));
            const radix::Expr prod = b.sum(terms);
            const radix::Expr disc = b.sub(b.mul(s, s), b.mul(b.integer(4), prod));
            const int sign = certified_sign(ev, disc);
            if (sign == 0) throw Ambiguous{};

            if (k == e) {
                if (sign > 0) throw std::logic_error("top-level discriminant is not negative");
                TowerStep step{k, radix::Expr(), disc, true, galois_step_ok(t, k), true};
                sol.certificate.chain.push_back(step);
                continue;
            }
            if (sign < 0) throw std::logic_error("real level has a negative discriminant");

            const radix::Expr root = b.sqrt(disc);
            const radix::Expr plus = b.div(b.add(s, root), b.integer(2));
            const radix::Expr minus = b.div(b.sub(s, root), b.integer(2));
            const Real a = num.real(k, j);
            const Real c = num.real(k, j + h);
            if (!(num.imag(k, j).abs() < tol) || !(num.imag(k, j + h).abs() < tol))
                throw std::logic_error("period at a real level has an imaginary part");
            const Real diff = a - c;
            if (!(diff.abs() > margin)) throw Ambiguous{};
            const bool first_larger = diff.sign() > 0;
            sol.periods[k][j] = first_larger ? plus : minus;
            sol.periods[k][j + h] = first_larger ? minus : plus;
            if (!encloses_within(ev, sol.periods[k][j], a, tol) || !encloses_within(ev, sol.periods[k][j + h], c, tol))
                throw std::logic_error("solved period disagrees with its numeric value");

            if (j == 0) {
                const Real x = diff.abs();
                bool irrational = !numeric::near_rational(x, height, margin);
                for (const auto& y : generators) irrational = irrational && !numeric::near_rational(x / y, height, margin);
                generators.push_back(x);
                sol.certificate.chain.push_back(TowerStep{k, root, disc, false, galois_step_ok(t, k), irrational});
            }
        }
    }
    sol.cosine = b.div(sol.periods[e - 1][0], b.integer(2));
    return sol;
}

}  // namespace

TowerSolution solve_tower(const PeriodTower& tower, long precision, radix::ExprBuilder& builder) {
    if (!tower.exact()) throw std::invalid_argument("solve_tower needs an exact tower, not a stretch tower");
    if (precision < 30) throw std::invalid_argument("solve_tower: precision must be at least 30 digits");
    long digits = precision;
    for (int escalation = 0;; ++escalation, digits *= 2) {
        try {
            return solve_at(tower, digits, builder);
        } catch (const Ambiguous&) {
            if (escalation == 4)
                throw std::runtime_error("solve_tower: branch choice for p = " + std::to_string(tower.p()) +
                                         " still ambiguous at " + std::to_string(digits) + " digits");
        }
    }
}

// ---------------------------------------------------------------- cosines

CosineBuilder::CosineBuilder(radix::ExprBuilder& builder, long precision) : builder_(builder), precision_(precision) {}

const CosineBuilder::Solved& CosineBuilder::tower(unsigned long p) {
    for (const auto& s : towers_)
        if (s.tower.p() == p) return s;
    if (p >= 65537)
        throw std::domain_error("exact radicals for the 65537-gon are beyond the supported expression size");
    PeriodTower t = build_tower(mpz_class(p));
    TowerSolution sol = solve_tower(t, precision_, builder_);
    towers_.push_back({std::move(t), std::move(sol)});
    return towers_.back();
}

CosineBuilder::Trig CosineBuilder::prime_angle(unsigned long k, unsigned long p) {
    auto& b = builder_;
    k %= p;
    if (k == 0) return {b.integer(1), b.integer(0)};
    const Solved& solved = tower(p);
    const TowerSolution& sol = solved.solution;
    const unsigned e = solved.tower.depth();
    // eta(e-1, j) = zeta^x + zeta^-x with x = g^j
    const unsigned long j = solved.tower.dlog(k) % (1UL << (e - 1));
    const radix::Expr c = b.div(sol.periods[e - 1][j], b.integer(2));
    radix::Expr s = b.sqrt(b.sub(b.integer(1), b.mul(c, c)));
    if (2 * k > p) s = b.neg(s);
    return {c, s};
}

CosineBuilder::Trig CosineBuilder::two_power_angle(const mpz_class& k_in, unsigned r) {
    auto& b = builder_;
    mpz_class k;
    mpz_fdiv_r_2exp(k.get_mpz_t(), k_in.get_mpz_t(), r);
    if (r == 0 || k == 0) return {b.integer(1), b.integer(0)};
    if (r == 1) return {b.integer(-1), b.integer(0)};
    if (r == 2) {
        switch (k.get_ui()) {
            case 1: return {b.integer(0), b.integer(1)};
            case 2: return {b.integer(-1), b.integer(0)};
            default: return {b.integer(0), b.integer(-1)};
        }
    }
    if (mpz_even_p(k.get_mpz_t())) return two_power_angle(k / 2, r - 1);
    // first-quadrant part by half angles, then whole quarter turns
    mpz_class quarter;
    mpz_setbit(quarter.get_mpz_t(), r - 2);
    const unsigned long turns = mpz_class(k / quarter).get_ui();
    const mpz_class rest = k % quarter;
    const radix::Expr c2 = two_power_angle(rest, r - 1).cos;
    const radix::Expr half = b.rational(mpq_class(1, 2));
    const radix::Expr c = b.sqrt(b.mul(half, b.add(b.integer(1), c2)));
    const radix::Expr s = b.sqrt(b.mul(half, b.sub(b.integer(1), c2)));
    switch (turns) {
        case 0: return {c, s};
        case 1: return {b.neg(s), c};
        case 2: return {b.neg(c), b.neg(s)};
        default: return {s, b.neg(c)};
    }
}

CosineBuilder::Trig CosineBuilder::part_angle(const mpz_class& k, const mpz_class& part) {
    if (numt::is_power_of_two(part)) {
        const unsigned r = static_cast<unsigned>(mpz_sizeinbase(part.get_mpz_t(), 2) - 1);
        return two_power_angle(k, r);
    }
    mpz_class kk;
    mpz_fdiv_r(kk.get_mpz_t(), k.get_mpz_t(), part.get_mpz_t());
    return prime_angle(kk.get_ui(), part.get_ui());
}

CosineBuilder::Trig CosineBuilder::angle(const mpz_class& k, const mpz_class& n) {
    const gate::ConstructibilityVerdict v = gate::classify(n);
    if (!v.constructible) throw gate::NotConstructible(v);
    std::vector<mpz_class> parts = v.fermat_primes;
    if (v.two_exponent > 0) {
        mpz_class two_part;
        mpz_setbit(two_part.get_mpz_t(), v.two_exponent);
        parts.push_back(two_part);
    }
    if (parts.empty()) return {builder_.integer(1), builder_.integer(0)};
    std::sort(parts.begin(), parts.end(), std::greater<>());

    // k/n = k x / A + k y / B with x B + y A = 1 for A the largest part
    auto& b = builder_;
    const mpz_class a_part = parts.front();
    if (parts.size() == 1) return part_angle(k, a_part);
    const mpz_class b_part = n / a_part;
    const gate::AngleCombination comb = gate::combine_angles(a_part, b_part);
    const Trig left = part_angle(k * comb.x, a_part);
    const Trig right = angle(k * comb.y, b_part);
    return {b.sub(b.mul(left.cos, right.cos), b.mul(left.sin, right.sin)),
            b.add(b.mul(left.sin, right.cos), b.mul(left.cos, right.sin))};
}

radix::Expr CosineBuilder::cos(const mpz_class& n) {
    if (n < 3) throw std::invalid_argument("cos_expression needs n >= 3");
    return angle(1, n).cos;
}

radix::Expr cos_expression(const mpz_class& n, radix::ExprBuilder& builder) {
    CosineBuilder cb(builder);
    return cb.cos(n);
}

radix::Expr cos_expression(const mpz_class& n) {
    radix::ExprBuilder builder;
    return cos_expression(n, builder);
}

// ---------------------------------------------------------------- json

nlohmann::json to_json(const PeriodTower& t) {
    nlohmann::json j;
    j["p"] = t.p();
    j["generator"] = t.generator();
    j["depth"] = t.depth();
    j["exact"] = t.exact();
    nlohmann::json levels = nlohmann::json::array();
    if (t.exact()) {
        for (unsigned k = 0; k <= t.depth(); ++k) {
            nlohmann::json periods = nlohmann::json::array();
            for (unsigned long i = 0; i < t.count(k); ++i) periods.push_back(t.exponents(k, i));
            levels.push_back({{"level", k}, {"exponents", periods}});
        }
    }
    j["levels"] = levels;
    nlohmann::json quads = nlohmann::json::array();
    for (unsigned k = 1; k <= t.depth(); ++k) {
        const SiblingQuadratic q = t.quadratic(k, 0);
        nlohmann::json product = nlohmann::json::array();
        for (const auto& c : q.product) product.push_back(c.get_str());
        quads.push_back({{"level", k}, {"pair", 0}, {"sum", {{"level", k - 1}, {"index", 0}}}, {"product", product}});
    }
    j["quadratics"] = quads;
    return j;
}

nlohmann::json to_json(const TowerCertificate& c) {
    nlohmann::json chain = nlohmann::json::array();
    for (const auto& s : c.chain) {
        chain.push_back({
            {"level", s.level},
            {"generator", s.generator ? nlohmann::json(radix::canonical_serialize(s.generator)) : nlohmann::json()},
            {"radicand", radix::canonical_serialize(s.radicand)},
            {"imaginary", s.imaginary},
            {"galois_ok", s.galois_ok},
            {"numeric_ok", s.numeric_ok},
        });
    }
    return {{"p", c.p}, {"valid", c.valid()}, {"chain", chain}};
}

}  // namespace cyclotomy::periods
