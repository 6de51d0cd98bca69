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

#include "cyclotomy/euclid.hpp"
#include "cyclotomy/gate.hpp"
#include "cyclotomy/periods.hpp"
#include "cyclotomy/real.hpp"
#include "doctest.h"

using namespace cyclotomy;
using namespace cyclotomy::euclid;

namespace {

const char* kTriangle =
    "euclid/1\n"
    "p0 = origin\n"
    "p1 = unit\n"
    "c0 = circle p0 p0 p1\n"
    "c1 = circle p1 p1 p0\n"
    "p2 = intersect c0 c1 max-y\n"
    "p3 = intersect c0 c1 min-y\n"
    "l0 = line p2 p3\n"
    "l1 = line p0 p1\n"
    "p4 = intersect l0 l1 only\n"
    "output p2 p4\n";

struct Box {
    mpq_class x_lo, x_hi, y_lo, y_hi;
};

Box box(const Interpretation& run, std::size_t i) {
    const mpz_class unit = radix::pow10(static_cast<unsigned long>(run.scale));
    const IPoint& p = run.outputs.at(i).second;
    return {mpq_class(p.x.lo, unit), mpq_class(p.x.hi, unit), mpq_class(p.y.lo, unit), mpq_class(p.y.hi, unit)};
}

bool contains(const Box& b, const mpq_class& x, const mpq_class& y) {
    return b.x_lo <= x && x <= b.x_hi && b.y_lo <= y && y <= b.y_hi;
}

// real value strictly inside [lo, hi] at a precision far beyond the box width
bool contains(const mpq_class& lo, const mpq_class& hi, const numeric::Real& v) {
    return !(v < numeric::Real(lo, v.precision())) && !(numeric::Real(hi, v.precision()) < v);
}

Box length_box(const radix::Expr& e, long digits = 40) {
    const Program prog = compile_length(e);
    REQUIRE(prog.outputs.size() == 1);
    return box(interpret(prog, digits), 0);
}

}  // namespace

TEST_CASE("program text round trip") {
    const Program p = parse_program(kTriangle);
    CHECK(print(p) == kTriangle);
    const ProgramStats st = validate(p);
    CHECK(st.points == 5);
    CHECK(st.lines == 2);
    CHECK(st.circles == 2);
    CHECK(st.intersections == 3);

    const Program hex = construct_ngon(6);
    CHECK(print(parse_program(print(hex))) == print(hex));
}

TEST_CASE("malformed program text") {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_program(text);
        } catch (const ProgramFormatError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("euclid/2\noutput\n") == 1);
    CHECK(line_of("euclid/1\np0 = origin\n") == 2);
    CHECK(line_of("euclid/1\np0 = origin\noutput p0") == 3);
    CHECK(line_of("euclid/1\np0 = origin\np1 = intersect c0 c1 sideways\noutput p0\n") == 3);
    CHECK(line_of("euclid/1\np0 = polar\noutput p0\n") == 2);
    CHECK(line_of("euclid/1\np0 = origin\noutput p0\np1 = unit\n") == 3);
    CHECK(line_of("euclid/1\np01 = origin\noutput\n") == 2);
    CHECK(line_of("euclid/1\nl0 = circle p0 p0 p1\noutput\n") == 2);
}

TEST_CASE("static validation") {
    auto invalid = [](const std::string& text) {
        CHECK_THROWS_AS(validate(parse_program(text)), ValidationError);
    };
    invalid("euclid/1\np0 = origin\noutput p0\n");
    invalid("euclid/1\np0 = origin\np1 = origin\noutput p0\n");
    invalid("euclid/1\np0 = origin\np2 = unit\noutput p0\n");
    invalid("euclid/1\np0 = origin\np1 = unit\nl0 = line p0 p0\noutput p0\n");
    invalid("euclid/1\np0 = origin\np1 = unit\nl0 = line p0 p2\noutput p0\n");
    invalid("euclid/1\np0 = origin\np1 = unit\nc0 = circle p0 p1 p1\noutput p0\n");
    invalid("euclid/1\np0 = origin\np1 = unit\nl0 = line p0 p1\nc0 = circle p0 p0 p1\np2 = intersect l0 c0 only\noutput p2\n");
    invalid("euclid/1\np0 = origin\np1 = unit\nl0 = line p0 p1\np2 = intersect l0 l0 only\noutput p2\n");
    invalid("euclid/1\np0 = origin\np1 = unit\noutput p5\n");
}

TEST_CASE("interpret small programs") {
    const Program mirror = parse_program(
        "euclid/1\np0 = origin\np1 = unit\nl0 = line p0 p1\nc0 = circle p0 p0 p1\np2 = intersect l0 c0 min-x\n"
        "output p2\n");
    CHECK(contains(box(interpret(mirror, 30), 0), -1, 0));

    const Interpretation tri = interpret(parse_program(kTriangle), 40);
    const Box apex = box(tri, 0);
    CHECK(contains(apex.x_lo, apex.x_hi, numeric::Real(mpq_class(1, 2), 300)));
    CHECK(contains(apex.y_lo, apex.y_hi, numeric::Real(3L, 300).sqrt() / numeric::Real(2L, 300)));
    CHECK(apex.y_hi - apex.y_lo <= mpq_class(1, radix::pow10(35)));
    // bisector foot
    CHECK(contains(box(tri, 1), mpq_class(1, 2), 0));

    // same program, same digits, same intervals
    const Interpretation again = interpret(parse_program(kTriangle), 40);
    CHECK(again.scale == tri.scale);
    CHECK(again.outputs[0].second.x.lo == tri.outputs[0].second.x.lo);
    CHECK(again.outputs[0].second.y.hi == tri.outputs[0].second.y.hi);
}

TEST_CASE("degenerate instructions name the instruction") {
    const std::string parallel =
        "euclid/1\np0 = origin\np1 = unit\nc0 = circle p0 p0 p1\np2 = intersect c0 c0 max-y\noutput p2\n";
    CHECK_THROWS_AS(validate(parse_program(parallel)), ValidationError);

    const Program apart = parse_program(
        "euclid/1\np0 = origin\np1 = unit\nl0 = line p0 p1\nc0 = circle p0 p0 p1\np2 = intersect l0 c0 max-x\n"
        "c1 = circle p2 p0 p1\nc2 = circle p0 p0 p1\nl1 = line p0 p2\np3 = intersect c0 c1 max-y\n"
        "c3 = circle p3 p0 p1\np4 = intersect l0 l1 only\noutput p4\n");
    try {
        interpret(apart, 30);
        FAIL("expected an interpretation error");
    } catch (const InterpretError& e) {
        // p2 = (1, 0) so l1 runs along l0
        CHECK(std::string(e.what()).find("l1 = line p0 p2") == std::string::npos);
        CHECK(std::string(e.what()).find("p4 = intersect l0 l1 only") != std::string::npos);
    }

    const Program miss = parse_program(
        "euclid/1\np0 = origin\np1 = unit\nl0 = line p0 p1\nc0 = circle p0 p0 p1\np2 = intersect l0 c0 max-x\n"
        "p3 = intersect l0 c0 min-x\nc1 = circle p2 p0 p1\nc2 = circle p3 p0 p1\np4 = intersect c1 c2 max-y\n"
        "output p4\n");
    // circles of radius 1 about (1, 0) and (-1, 0) only touch
    CHECK_THROWS_AS(interpret(miss, 30), InterpretError);
}

TEST_CASE("compile_length examples") {
    radix::ExprBuilder b;
    CHECK(contains(length_box(b.integer(3)), 3, 0));
    CHECK(contains(length_box(b.integer(-7)), -7, 0));
    CHECK(contains(length_box(b.rational(mpq_class(-5, 12))), mpq_class(-5, 12), 0));
    CHECK(contains(length_box(b.make(radix::Op::Sqrt, b.integer(4))), 2, 0));
    CHECK(contains(length_box(b.integer(0)), 0, 0));

    const Box c5 = length_box(periods::cos_expression(5), 40);
    CHECK(contains(c5.x_lo, c5.x_hi, numeric::cos_2pi(mpq_class(1, 5), 400)));
    CHECK(c5.x_hi - c5.x_lo <= mpq_class(1, radix::pow10(30)));

    CHECK_THROWS_AS(compile_length(b.make(radix::Op::Sqrt, b.integer(-2))), radix::EvaluationError);
    CHECK_THROWS_AS(compile_length(b.make(radix::Op::Div, b.integer(1), b.integer(0))), radix::EvaluationError);
}

TEST_CASE("gadgets on random rationals") {
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<long> num(1, 64), den(1, 8);
    radix::ExprBuilder b;
    for (int i = 0; i < 150; ++i) {
        mpq_class a(num(rng), den(rng)), c(num(rng), den(rng));
        a.canonicalize();
        c.canonicalize();
        if (a > 8 || a < mpq_class(1, 8) || c > 8 || c < mpq_class(1, 8)) continue;
        const auto ra = b.rational(a), rc = b.rational(c);
        REQUIRE(contains(length_box(b.make(radix::Op::Mul, ra, rc)), a * c, 0));
        REQUIRE(contains(length_box(b.make(radix::Op::Div, ra, rc)), a / c, 0));
        const Box s = length_box(b.make(radix::Op::Sqrt, ra));
        REQUIRE(contains(s.x_lo, s.x_hi, numeric::Real(a, 400).sqrt()));
    }
}

TEST_CASE("regular polygons") {
    const Program square = construct_ngon(4);
    const Interpretation run = interpret(square, 30);
    const mpq_class want[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (std::size_t k = 0; k < 4; ++k) CHECK(contains(box(run, k), want[k][0], want[k][1]));

    for (unsigned long n : {3UL, 6UL, 17UL}) {
        CAPTURE(n);
        const Program prog = construct_ngon(n, 50);
        CHECK_NOTHROW(validate(prog));
        const NgonReport r = verify_ngon(prog, n, 50);
        CHECK(r.pass);
        CHECK(r.bijective);
        CHECK(r.outputs == n);
        CHECK(r.max_deviation < mpq_class(1, radix::pow10(20)));
    }
    CHECK(print(construct_ngon(17)) == print(construct_ngon(17)));
    CHECK_THROWS_AS(construct_ngon(18), gate::NotConstructible);
    CHECK_THROWS_AS(construct_ngon(7), gate::NotConstructible);
    CHECK_THROWS_AS(verify_ngon(construct_ngon(5), 6, 50), std::invalid_argument);
}

TEST_CASE("a corrupted 17-gon fails verification") {
    const Program good = construct_ngon(17, 50);
    bool found = false;
    for (std::size_t i = 0; i < good.instructions.size() && !found; ++i) {
        const auto* c = std::get_if<CircleAt>(&good.instructions[i]);
        if (c == nullptr || c->to.index < 2) continue;
        Program bad = good;
        auto& target = std::get<CircleAt>(bad.instructions[i]);
        std::swap(target.from, target.center);
        if (target.from == target.to) continue;
        try {
            const NgonReport r = verify_ngon(bad, 17, 50);
            if (r.pass) continue;
            found = true;
            CHECK(r.max_deviation > mpq_class(1, 1000));
        } catch (const InterpretError&) {
        }
    }
    CHECK(found);
}

TEST_CASE("deviation formatting") {
    NgonReport r;
    r.max_deviation = mpq_class(31, 10) / radix::pow10(52);
    CHECK(r.deviation_string() == "3.1e-52");
    r.max_deviation = mpq_class(301, 100) / radix::pow10(52);
    CHECK(r.deviation_string() == "3.1e-52");
    r.max_deviation = mpq_class(999, 1000);
    CHECK(r.deviation_string() == "1.0e0");
    r.max_deviation = 0;
    CHECK(r.deviation_string() == "0");
}

TEST_CASE("svg output") {
    const std::string svg = to_svg(construct_ngon(5));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polygon") != std::string::npos);
    CHECK(svg == to_svg(construct_ngon(5)));
}
