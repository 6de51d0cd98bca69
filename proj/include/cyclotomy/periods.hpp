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

// Gaussian periods for a Fermat prime p (p - 1 = 2^e) and the tower of
// quadratic equations that expresses cos(2pi/p) in square roots.
//
// With zeta = exp(2pi i / p) and g a primitive root, the level-k periods are
//   eta(k, j) = sum of zeta^(g^i) over i = j (mod 2^k),   0 <= j < 2^k.
// Siblings eta(k, j) and eta(k, j + 2^(k-1)) add up to eta(k-1, j) and
// their product is an integer combination of level-(k-1) periods.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "cyclotomy/radix.hpp"
#include "cyclotomy/real.hpp"
#include "json.hpp"

namespace cyclotomy::periods {

/// An element of Q(zeta) as constant + sum_k coefficient(k) * zeta^k,
/// k = 1 .. p-1. canonical() moves the constant onto the zeta^k using
/// 1 = -(zeta + ... + zeta^(p-1)); canonical vectors are unique.
class PeriodElement {
   public:
    explicit PeriodElement(unsigned long p);

    static PeriodElement rational(unsigned long p, const mpq_class& q);
    static PeriodElement zeta_power(unsigned long p, unsigned long k);

    unsigned long p() const noexcept { return p_; }
    const mpq_class& constant() const { return c_[0]; }
    /// Coefficient of zeta^k for 1 <= k < p.
    const mpq_class& coefficient(unsigned long k) const;
    void add_term(unsigned long k, const mpq_class& c);

    PeriodElement canonical() const;
    bool is_zero() const;

    /// zeta -> zeta^a, for a not divisible by p.
    PeriodElement apply(unsigned long a) const;

    /// Value at zeta = exp(2pi i / p) as (real part, imaginary part).
    std::pair<numeric::Real, numeric::Real> numeric_value(mpfr_prec_t bits) const;

    PeriodElement& operator+=(const PeriodElement& b);
    PeriodElement& operator-=(const PeriodElement& b);
    PeriodElement& operator*=(const mpq_class& s);
    friend PeriodElement operator+(PeriodElement a, const PeriodElement& b) { return a += b; }
    friend PeriodElement operator-(PeriodElement a, const PeriodElement& b) { return a -= b; }
    friend PeriodElement operator*(const PeriodElement& a, const PeriodElement& b);
    friend bool operator==(const PeriodElement& a, const PeriodElement& b);

   private:
    void check_same(const PeriodElement& b) const;

    unsigned long p_;
    std::vector<mpq_class> c_;  // c_[0] constant, c_[k] coefficient of zeta^k
};

/// Exact product; throws std::invalid_argument for different p.
PeriodElement period_mul(const PeriodElement& a, const PeriodElement& b);

/// x^2 - S x + Q for the siblings eta(level, pair) and
/// eta(level, pair + 2^(level-1)): S = eta(level-1, pair) and
/// Q = sum_m product[m] * eta(level-1, m).
struct SiblingQuadratic {
    unsigned level = 0;
    unsigned long pair = 0;
    std::vector<mpz_class> product;
};

struct TowerOptions {
    /// Skip the exact period algebra and derive quadratics by counting, so
    /// p = 65537 can be built; relations are then checked numerically.
    bool stretch = false;
    long check_digits = 50;
};

class PeriodTower {
   public:
    unsigned long p() const noexcept { return p_; }
    unsigned long generator() const noexcept { return g_; }
    unsigned depth() const noexcept { return e_; }
    /// Whether the level periods are held as exact PeriodElements.
    bool exact() const noexcept { return !levels_.empty(); }

    /// g^i mod p, i taken mod p-1.
    unsigned long power(unsigned long i) const { return pow_[i % (p_ - 1)]; }
    /// Discrete log base g of x mod p, x not divisible by p.
    unsigned long dlog(unsigned long x) const { return log_[x % p_]; }

    std::size_t count(unsigned level) const { return std::size_t{1} << level; }
    /// Exponents x of the zeta^x in eta(level, j), in order of i.
    std::vector<unsigned long> exponents(unsigned level, unsigned long j) const;
    /// Exact period; std::logic_error on a stretch tower.
    const PeriodElement& period(unsigned level, unsigned long j) const;

    /// Quadratic for pair j at level 1..e. Pair j is the image of pair 0
    /// under zeta -> zeta^(g^j), so its product coefficients are pair 0's
    /// rotated by j.
    SiblingQuadratic quadratic(unsigned level, unsigned long j) const;

   private:
    friend PeriodTower build_tower(const mpz_class& p, const TowerOptions& options);

    unsigned long p_ = 0;
    unsigned long g_ = 0;
    unsigned e_ = 0;
    std::vector<unsigned long> pow_;
    std::vector<unsigned long> log_;
    std::vector<std::vector<PeriodElement>> levels_;
    std::vector<std::vector<mpz_class>> products_;  // pair 0 of each level, index level-1
};

/// Throws std::invalid_argument unless p is a prime with p - 1 a power of
/// two; p = 65537 additionally requires options.stretch. Exact towers
/// cross-check the period algebra against the counting derivation; all
/// internal relations are asserted (std::logic_error on failure).
PeriodTower build_tower(const mpz_class& p, const TowerOptions& options = {});

/// Numeric period values at a fixed binary precision, from one table of
/// cos and sin of 2pi x / p.
class PeriodNumerics {
   public:
    PeriodNumerics(const PeriodTower& tower, mpfr_prec_t bits);
    numeric::Real real(unsigned level, unsigned long j) const;
    numeric::Real imag(unsigned level, unsigned long j) const;

   private:
    const PeriodTower& tower_;
    std::vector<numeric::Real> cos_;
    std::vector<numeric::Real> sin_;
};

struct TowerStep {
    unsigned level = 0;
    /// sqrt(radicand) = eta(level, 0) - eta(level, 2^(level-1)) up to sign;
    /// empty for the top step, whose radicand is negative.
    radix::Expr generator;
    radix::Expr radicand;
    bool imaginary = false;
    /// The difference of pair-0 siblings is negated by the Galois element
    /// swapping them, so it lies outside the level below while its square
    /// lies inside.
    bool galois_ok = false;
    /// Radicand sign certified, generator not close to any small-height
    /// rational or rational multiple of an earlier generator.
    bool numeric_ok = false;
};

struct TowerCertificate {
    unsigned long p = 0;
    std::vector<TowerStep> chain;
    bool valid() const;
};

struct TowerSolution {
    /// periods[k][j] for the real levels 0 .. e-1.
    std::vector<std::vector<radix::Expr>> periods;
    radix::Expr cosine;  // cos(2pi/p) = eta(e-1, 0) / 2
    TowerCertificate certificate;
    long precision = 0;  // digits used after escalation
};

/// Solve the sibling quadratics top-down, picking each sign against the
/// numeric period. Needs an exact tower and precision >= 30. Branch
/// separation must exceed 10^-(precision/2); the precision doubles up to
/// four times before std::runtime_error.
TowerSolution solve_tower(const PeriodTower& tower, long precision, radix::ExprBuilder& builder);

/// cos(2pi/n) for constructible n >= 3. Throws gate::NotConstructible, or
/// std::domain_error when n needs the 65537 tower.
radix::Expr cos_expression(const mpz_class& n, radix::ExprBuilder& builder);
radix::Expr cos_expression(const mpz_class& n);

/// Reusable cosine assembly; towers are solved once per prime.
class CosineBuilder {
   public:
    explicit CosineBuilder(radix::ExprBuilder& builder, long precision = 50);

    radix::Expr cos(const mpz_class& n);

    struct Trig {
        radix::Expr cos;
        radix::Expr sin;
    };
    /// cos and sin of 2pi k / n.
    Trig angle(const mpz_class& k, const mpz_class& n);

   private:
    Trig part_angle(const mpz_class& k, const mpz_class& part);
    Trig two_power_angle(const mpz_class& k, unsigned r);
    Trig prime_angle(unsigned long k, unsigned long p);
    struct Solved {
        PeriodTower tower;
        TowerSolution solution;
    };
    const Solved& tower(unsigned long p);

    radix::ExprBuilder& builder_;
    long precision_;
    std::vector<Solved> towers_;
};

nlohmann::json to_json(const PeriodTower& tower);
nlohmann::json to_json(const TowerCertificate& certificate);

}  // namespace cyclotomy::periods
