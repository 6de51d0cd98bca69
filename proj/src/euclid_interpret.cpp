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

#include "cyclotomy/euclid.hpp"

namespace cyclotomy::euclid {

using radix::Interval;
using radix::IntervalArithmetic;

InterpretError::InterpretError(std::size_t instruction, const std::string& what, bool retryable)
    : std::runtime_error(what), instruction_(instruction), retryable_(retryable) {}

Interpreter::Interpreter(long scale) : ar_(scale) {}

void Interpreter::fail(const std::string& what, bool retryable) const {
    throw InterpretError(executed_, what, retryable);
}

const IPoint& Interpreter::point(const Ref& r) const {
    if (r.kind != Ref::Kind::Point || r.index >= points_.size()) fail("unknown point " + r.to_string(), false);
    return points_[r.index];
}

namespace {

// -1 / +1 when a < b / a > b is certain, 0 when the intervals overlap
int compare(const Interval& a, const Interval& b) {
    if (a.hi < b.lo) return -1;
    if (a.lo > b.hi) return 1;
    return 0;
}

bool coincide(const IPoint& a, const IPoint& b) {
    return IntervalArithmetic::overlaps(a.x, b.x) && IntervalArithmetic::overlaps(a.y, b.y);
}

}  // namespace

std::vector<IPoint> Interpreter::line_line(const Line& l1, const Line& l2) const {
    const auto& A = ar_;
    const Interval d1x = A.sub(l1.b.x, l1.a.x), d1y = A.sub(l1.b.y, l1.a.y);
    const Interval d2x = A.sub(l2.b.x, l2.a.x), d2y = A.sub(l2.b.y, l2.a.y);
    const Interval den = A.sub(A.mul(d1x, d2y), A.mul(d1y, d2x));
    if (IntervalArithmetic::sign(den) == 0) fail("lines are parallel or nearly so", true);
    const Interval wx = A.sub(l2.a.x, l1.a.x), wy = A.sub(l2.a.y, l1.a.y);
    const Interval t = A.div(A.sub(A.mul(wx, d2y), A.mul(wy, d2x)), den);
    return {IPoint{A.add(l1.a.x, A.mul(t, d1x)), A.add(l1.a.y, A.mul(t, d1y))}};
}

std::vector<IPoint> Interpreter::line_circle(const Line& l, const Circle& c) const {
    const auto& A = ar_;
    const Interval dx = A.sub(l.b.x, l.a.x), dy = A.sub(l.b.y, l.a.y);
    const Interval fx = A.sub(l.a.x, c.center.x), fy = A.sub(l.a.y, c.center.y);
    const Interval a = A.add(A.sqr(dx), A.sqr(dy));
    const Interval half_b = A.add(A.mul(fx, dx), A.mul(fy, dy));
    const Interval cc = A.sub(A.add(A.sqr(fx), A.sqr(fy)), c.r2);
    const Interval disc = A.sub(A.sqr(half_b), A.mul(a, cc));
    const int s = IntervalArithmetic::sign(disc);
    if (s < 0) fail("line misses the circle", false);
    if (s == 0) fail("line is tangent to the circle or nearly so", true);
    const Interval root = A.sqrt(disc);
    std::vector<IPoint> out;
    for (const Interval& num : {A.add(A.neg(half_b), root), A.sub(A.neg(half_b), root)}) {
        const Interval t = A.div(num, a);
        out.push_back({A.add(l.a.x, A.mul(t, dx)), A.add(l.a.y, A.mul(t, dy))});
    }
    return out;
}

std::vector<IPoint> Interpreter::circle_circle(const Circle& c1, const Circle& c2) const {
    const auto& A = ar_;
    const Interval dx = A.sub(c2.center.x, c1.center.x), dy = A.sub(c2.center.y, c1.center.y);
    const Interval d2 = A.add(A.sqr(dx), A.sqr(dy));
    if (IntervalArithmetic::sign(d2) == 0) fail("circles are concentric or nearly so", true);
    // foot of the common chord at c1 + k * (dx, dy), half-chord h * (-dy, dx)
    const Interval k = A.div(A.add(d2, A.sub(c1.r2, c2.r2)), A.mul(A.integer(2), d2));
    const Interval h2 = A.sub(A.div(c1.r2, d2), A.sqr(k));
    const int s = IntervalArithmetic::sign(h2);
    if (s < 0) fail("circles do not meet", false);
    if (s == 0) fail("circles are tangent or nearly so", true);
    const Interval h = A.sqrt(h2);
    const Interval bx = A.add(c1.center.x, A.mul(k, dx)), by = A.add(c1.center.y, A.mul(k, dy));
    const Interval ox = A.mul(h, A.neg(dy)), oy = A.mul(h, dx);
    return {IPoint{A.add(bx, ox), A.add(by, oy)}, IPoint{A.sub(bx, ox), A.sub(by, oy)}};
}

std::vector<IPoint> Interpreter::candidates(const Ref& first, const Ref& second) const {
    auto line = [&](const Ref& r) -> const Line& {
        if (r.index >= lines_.size()) fail("unknown line " + r.to_string(), false);
        return lines_[r.index];
    };
    auto circle = [&](const Ref& r) -> const Circle& {
        if (r.index >= circles_.size()) fail("unknown circle " + r.to_string(), false);
        return circles_[r.index];
    };
    const bool l1 = first.kind == Ref::Kind::Line, l2 = second.kind == Ref::Kind::Line;
    if (first.kind == Ref::Kind::Point || second.kind == Ref::Kind::Point) fail("cannot intersect a point", false);
    if (l1 && l2) return line_line(line(first), line(second));
    if (l1) return line_circle(line(first), circle(second));
    if (l2) return line_circle(line(second), circle(first));
    return circle_circle(circle(first), circle(second));
}

IPoint Interpreter::select(const std::vector<IPoint>& cands, Selector s) const {
    if (s == Selector::Only) {
        if (cands.size() != 1) fail("selector 'only' used on two intersection points", false);
        return cands[0];
    }
    if (cands.size() != 2) fail("two intersection points expected", false);
    const bool by_y = s == Selector::MaxY || s == Selector::MinY;
    const bool want_max = s == Selector::MaxY || s == Selector::MaxX;
    const IPoint& a = cands[0];
    const IPoint& b = cands[1];
    int c = by_y ? compare(a.y, b.y) : compare(a.x, b.x);
    if (c != 0) return (c > 0) == want_max ? a : b;
    // tie on the primary coordinate: greater secondary coordinate
    c = by_y ? compare(a.x, b.x) : compare(a.y, b.y);
    if (c == 0) fail(std::string("selector ") + selector_name(s) + " cannot separate the intersection points", true);
    return c > 0 ? a : b;
}

void Interpreter::execute(const Instruction& ins) {
    const auto& A = ar_;
    if (const auto* i = std::get_if<PointInit>(&ins)) {
        points_.push_back(i->which == PointInit::Which::Origin ? IPoint{A.integer(0), A.integer(0)}
                                                                 : IPoint{A.integer(1), A.integer(0)});
    } else if (const auto* i = std::get_if<LineThrough>(&ins)) {
        const IPoint& a = point(i->a);
        const IPoint& b = point(i->b);
        if (coincide(a, b)) fail("line endpoints coincide", true);
        lines_.push_back({a, b});
    } else if (const auto* i = std::get_if<CircleAt>(&ins)) {
        const IPoint& f = point(i->from);
        const IPoint& t = point(i->to);
        const Interval r2 = A.add(A.sqr(A.sub(f.x, t.x)), A.sqr(A.sub(f.y, t.y)));
        if (IntervalArithmetic::sign(r2) == 0) fail("circle radius is zero", true);
        circles_.push_back({point(i->center), r2});
    } else {
        const auto& in = std::get<Intersection>(ins);
        points_.push_back(select(candidates(in.first, in.second), in.selector));
    }
    ++executed_;
}

Interpretation interpret(const Program& prog, long digits) {
    validate(prog);
    const long penalty = 2 * static_cast<long>(prog.instructions.size()) + 10;
    for (int attempt = 0;; ++attempt) {
        const long scale = digits + penalty * (attempt + 1);
        Interpreter in(scale);
        try {
            for (const auto& ins : prog.instructions) in.execute(ins);
        } catch (const InterpretError& err) {
            if (err.retryable() && attempt == 0) continue;
            throw InterpretError(err.instruction(),
                                 "instruction " + std::to_string(err.instruction()) + " (" +
                                     to_string(prog.instructions[err.instruction()]) + "): " + err.what(),
                                 err.retryable());
        }
        Interpretation out;
        out.scale = scale;
        const mpz_class limit = radix::pow10(static_cast<unsigned long>(scale - digits));
        bool narrow = true;
        for (const auto& r : prog.outputs) {
            const IPoint& p = in.point(r);
            narrow = narrow && IntervalArithmetic::width(p.x) <= limit && IntervalArithmetic::width(p.y) <= limit;
            out.outputs.emplace_back(r, p);
        }
        if (narrow) return out;
        if (attempt > 0)
            throw InterpretError(prog.instructions.size(),
                                 "output enclosures wider than 10^-" + std::to_string(digits) +
                                     " after precision escalation",
                                 false);
    }
}

}  // namespace cyclotomy::euclid
