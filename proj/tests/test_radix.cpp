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

#include <random>

#include "cyclotomy/periods.hpp"
#include "cyclotomy/radix.hpp"
#include "cyclotomy/real.hpp"
#include "doctest.h"

using namespace cyclotomy;
using namespace cyclotomy::radix;

namespace {

bool encloses(const Enclosure& enc, const numeric::Real& x) {
    const long s = enc.scale + 5;
    const mpz_class unit = pow10(static_cast<unsigned long>(s));
    return enc.lower() <= mpq_class(x.floor_scaled(s), unit) && mpq_class(x.ceil_scaled(s), unit) <= enc.upper();
}

mpq_class width(const Enclosure& e) { return e.upper() - e.lower(); }

}  // namespace

TEST_CASE("interval helpers") {
    CHECK(isqrt_floor(0) == 0);
    CHECK(isqrt_floor(15) == 3);
    CHECK(isqrt_ceil(15) == 4);
    CHECK(isqrt_ceil(16) == 4);
    for (long n = 0; n < 5000; ++n) {
        const mpz_class f = isqrt_floor(n), c = isqrt_ceil(n);
        REQUIRE(f * f <= n);
        REQUIRE((f + 1) * (f + 1) > n);
        REQUIRE(c * c >= n);
        REQUIRE((c == 0 || (c - 1) * (c - 1) < n));
    }
    const IntervalArithmetic A(20);
    const Interval third = A.rational(mpq_class(1, 3));
    CHECK(third.lo < third.hi);
    CHECK(IntervalArithmetic::sign(A.sub(A.mul(third, A.integer(3)), A.integer(1))) == 0);
    CHECK(IntervalArithmetic::sign(A.integer(-2)) == -1);
    CHECK_THROWS_AS(A.div(A.integer(1), A.sub(third, third)), IntervalError);
}

TEST_CASE("builder hash-conses and folds rationals") {
    ExprBuilder b;
    const Expr s5 = b.sqrt(b.integer(5));
    CHECK(b.sqrt(b.integer(5)) == s5);
    CHECK(b.add(b.integer(1), b.integer(2)).value() == 3);
    CHECK(b.add(s5, b.integer(0)) == s5);
    CHECK(b.mul(s5, b.integer(1)) == s5);
    CHECK(b.mul(s5, b.integer(0)).value() == 0);
    const Expr d = b.div(b.div(s5, b.integer(2)), b.integer(3));
    CHECK(d.op() == Op::Div);
    CHECK(d.lhs() == s5);
    CHECK(d.rhs().value() == 6);
    CHECK_THROWS(b.div(s5, b.integer(0)));
}

TEST_CASE("evaluate examples") {
    ExprBuilder b;
    const Enclosure half = evaluate(b.rational(mpq_class(1, 2)), 20);
    CHECK(half.contains(mpq_class(1, 2)));
    CHECK(width(half) <= mpq_class(1, pow10(20)));

    const Enclosure r17 = evaluate(b.sqrt(b.integer(17)), 30);
    CHECK(r17.midpoint_string(20) == "4.12310562561766054982");
    // integer square root oracle: floor(sqrt(17 * 10^60))
    const mpz_class root = isqrt_floor(17 * pow10(60));
    CHECK(r17.contains(mpq_class(root, pow10(30))) + r17.contains(mpq_class(root + 1, pow10(30))) >= 1);
    CHECK(r17.lower() * r17.lower() <= 17);
    CHECK(r17.upper() * r17.upper() >= 17);

    const Expr c5 = b.div(b.sub(b.sqrt(b.integer(5)), b.integer(1)), b.integer(4));
    const Enclosure e5 = evaluate(c5, 40);
    CHECK(encloses(e5, numeric::cos_2pi(mpq_class(1, 5), 400)));
    CHECK(width(e5) <= mpq_class(1, pow10(40)));
}

TEST_CASE("evaluate rejects malformed expressions") {
    ExprBuilder b;
    try {
        evaluate(b.sqrt(b.integer(-1)), 20);
        FAIL("expected an error");
    } catch (const EvaluationError& e) {
        CHECK(e.kind() == EvaluationError::Kind::NegativeSqrt);
    }
    try {
        evaluate(b.make(Op::Div, b.integer(1), b.integer(0)), 20);
        FAIL("expected an error");
    } catch (const EvaluationError& e) {
        CHECK(e.kind() == EvaluationError::Kind::ZeroDivisor);
    }
    // a divisor that is zero but not literally so never separates from zero
    const Expr zero = b.sub(b.sqrt(b.integer(2)), b.sqrt(b.integer(2)));
    CHECK_THROWS_AS(evaluate(b.make(Op::Div, b.integer(1), zero), 20), EvaluationError);
    // exact zero under a root is clamped
    const Expr s = b.sqrt(b.sub(b.mul(b.sqrt(b.integer(3)), b.sqrt(b.integer(3))), b.integer(3)));
    CHECK(evaluate(s, 30).contains(0));
}

TEST_CASE("random expressions against MPFR") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> small(1, 40);
    std::uniform_int_distribution<int> pick(0, 4);
    const mpfr_prec_t bits = 600;
    for (int round = 0; round < 200; ++round) {
        ExprBuilder b;
        std::vector<std::pair<Expr, numeric::Real>> pool;
        for (int i = 0; i < 4; ++i) {
            const mpq_class q(small(rng), small(rng));
            pool.emplace_back(b.rational(q), numeric::Real(q, bits));
        }
        for (int step = 0; step < 12; ++step) {
            const auto& [a, av] = pool[rng() % pool.size()];
            const auto& [c, cv] = pool[rng() % pool.size()];
            switch (pick(rng)) {
                case 0: pool.emplace_back(b.add(a, c), av + cv); break;
                case 1: pool.emplace_back(b.mul(a, c), av * cv); break;
                case 2:
                    if ((av - cv).abs() > numeric::tenth_power(3, bits)) pool.emplace_back(b.sub(a, c), av - cv);
                    break;
                case 3:
                    if (cv.abs() > numeric::tenth_power(3, bits)) pool.emplace_back(b.div(a, c), av / cv);
                    break;
                default:
                    pool.emplace_back(b.sqrt(b.mul(a, a)), av.abs());
                    if (av.sign() > 0) pool.emplace_back(b.sqrt(a), av.sqrt());
            }
        }
        const auto& [e, v] = pool.back();
        if (v.abs() > numeric::Real(mpq_class(1000000), bits)) continue;
        const Enclosure enc = evaluate(e, 50);
        REQUIRE(encloses(enc, v));
        REQUIRE(width(enc) <= mpq_class(1, pow10(50)));
    }
}

TEST_CASE("evaluation nests as digits grow") {
    const Expr c17 = periods::cos_expression(17);
    const Enclosure a = evaluate(c17, 30), bb = evaluate(c17, 60), c = evaluate(c17, 120);
    CHECK(bb.inside(a));
    CHECK(c.inside(bb));
    const Expr c15 = periods::cos_expression(15);
    CHECK(evaluate(c15, 80).inside(evaluate(c15, 40)));
}

TEST_CASE("canonical text round trip") {
    ExprBuilder b;
    const Expr h = b.rational(mpq_class(-1, 2));
    CHECK(canonical_serialize(h) == "(-1/2)");
    CHECK(parse("(-1/2)").value() == mpq_class(-1, 2));

    const Expr c5 = periods::cos_expression(5);
    CHECK(canonical_serialize(c5) == "div(add((-1),sqrt((5))),(4))");

    for (long n : {5L, 15L, 17L, 60L, 255L}) {
        const Expr e = periods::cos_expression(n);
        const std::string text = canonical_serialize(e);
        const Expr back = parse(text);
        CHECK(structurally_equal(e, back));
        CHECK(canonical_serialize(back) == text);
        CHECK(depth_and_size(back).node_count == depth_and_size(e).node_count);
    }
    // sharing survives
    const Expr s = b.sqrt(b.integer(2));
    const Expr twice = b.add(s, s);
    CHECK(canonical_serialize(twice) == "add(#0=sqrt((2)),@0)");
    const Expr parsed = parse("add(#0=sqrt((2)),@0)");
    CHECK(parsed.lhs() == parsed.rhs());
    // parsing interns repeated subterms as well
    CHECK(structurally_equal(parsed, parse("add(sqrt((2)),sqrt((2)))")));
    CHECK_FALSE(structurally_equal(parsed, parse("add(sqrt((2)),sqrt((3)))")));
}

TEST_CASE("parse errors carry an offset") {
    try {
        parse("sqrt(");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 5);
    }
    CHECK_THROWS_AS(parse("add((1))"), ParseError);
    CHECK_THROWS_AS(parse("@3"), ParseError);
    CHECK_THROWS_AS(parse("(1/0)"), ParseError);
    CHECK_THROWS_AS(parse("(1)x"), ParseError);
}

TEST_CASE("depth and size") {
    ExprBuilder b;
    CHECK(depth_and_size(b.integer(3)).sqrt_depth == 0);
    CHECK(depth_and_size(b.integer(3)).node_count == 1);
    const auto d5 = depth_and_size(periods::cos_expression(5));
    CHECK(d5.sqrt_depth == 1);
    CHECK(d5.node_count == 6);
    CHECK(depth_and_size(periods::cos_expression(17)).sqrt_depth == 3);
}
