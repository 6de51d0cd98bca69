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

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <unordered_map>

#include "cyclotomy/euclid.hpp"
#include "cyclotomy/gate.hpp"
#include "cyclotomy/periods.hpp"
#include "cyclotomy/real.hpp"

namespace cyclotomy::euclid {

using radix::Interval;
using radix::IntervalArithmetic;

namespace {

struct ModelTooCoarse {};

mpz_class midpoint(const Interval& v) {
    mpz_class m = v.lo + v.hi;
    mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), 1);
    return m;
}

mpz_class distance2(const IPoint& a, const IPoint& b) {
    const mpz_class dx = midpoint(a.x) - midpoint(b.x);
    const mpz_class dy = midpoint(a.y) - midpoint(b.y);
    return dx * dx + dy * dy;
}

// Emits instructions while executing them on an interval model, so every
// selector is chosen from the actual candidate points.
class Sketch {
   public:
    explicit Sketch(long model_scale) : model_(model_scale), A(model_.arithmetic()) {
        origin = init(PointInit::Which::Origin);
        unit = init(PointInit::Which::Unit);
        x_axis = line(origin, unit);
        unit_circle = circle(origin, origin, unit);
        minus_one = intersect_toward(unit_circle, x_axis, at(origin), -1, 0);
        const Ref c1 = circle(minus_one, minus_one, unit);
        const Ref c2 = circle(unit, unit, minus_one);
        const Ref top = intersect_pick(c1, c2, Selector::MaxY);
        const Ref bottom = intersect_pick(c1, c2, Selector::MinY);
        y_axis = line(top, bottom);
        e_point = intersect_pick(unit_circle, y_axis, Selector::MaxY);
    }

    Ref origin, unit, minus_one, e_point, x_axis, y_axis, unit_circle;

    const IPoint& at(const Ref& p) const { return model_.point(p); }
    const IntervalArithmetic& arithmetic() const { return A; }
    const Interval& value(const Ref& p) const { return at(p).x; }
    int sign(const Ref& p) const { return IntervalArithmetic::sign(value(p)); }
    std::size_t size() const { return prog_.instructions.size(); }
    Program take(std::vector<Ref> outputs) {
        prog_.outputs = std::move(outputs);
        return std::move(prog_);
    }

    Ref line(const Ref& a, const Ref& b) { return emit(LineThrough{next(Ref::Kind::Line), a, b}); }
    Ref circle(const Ref& c, const Ref& from, const Ref& to) {
        return emit(CircleAt{next(Ref::Kind::Circle), c, from, to});
    }
    Ref intersect_only(const Ref& a, const Ref& b) {
        return emit(Intersection{next(Ref::Kind::Point), a, b, Selector::Only});
    }
    Ref intersect_pick(const Ref& a, const Ref& b, Selector s) { return emit(Intersection{next(Ref::Kind::Point), a, b, s}); }

    /// The candidate nearest to `expected`.
    Ref intersect_toward(const Ref& a, const Ref& b, const IPoint& expected) {
        const auto c = candidates(a, b);
        return pick(a, b, c, distance2(c[0], expected) <= distance2(c[1], expected) ? 0 : 1);
    }
    Ref intersect_toward(const Ref& a, const Ref& b, const IPoint& base, long dx, long dy) {
        return intersect_toward(a, b, IPoint{A.add(base.x, A.integer(dx)), A.add(base.y, A.integer(dy))});
    }
    /// The candidate farther from `avoid`.
    Ref intersect_away(const Ref& a, const Ref& b, const IPoint& avoid) {
        const auto c = candidates(a, b);
        return pick(a, b, c, distance2(c[0], avoid) >= distance2(c[1], avoid) ? 0 : 1);
    }

    IPoint on_x(const Interval& v) const { return {v, A.integer(0)}; }
    IPoint on_y(const Interval& v) const { return {A.integer(0), v}; }

   private:
    Ref init(PointInit::Which w) { return emit(PointInit{next(Ref::Kind::Point), w}); }

    Ref next(Ref::Kind k) {
        std::size_t& n = k == Ref::Kind::Point ? points_ : k == Ref::Kind::Line ? lines_ : circles_;
        return Ref{k, n++};
    }

    template <class I>
    Ref emit(I ins) {
        const Ref target = ins.target;
        try {
            model_.execute(ins);
        } catch (const InterpretError& err) {
            if (err.retryable()) throw ModelTooCoarse{};
            throw CompileError(std::string("construction step failed: ") + err.what());
        }
        prog_.instructions.emplace_back(std::move(ins));
        return target;
    }

    std::vector<IPoint> candidates(const Ref& a, const Ref& b) {
        try {
            auto c = model_.candidates(a, b);
            if (c.size() != 2) throw CompileError("expected two intersection points");
            return c;
        } catch (const InterpretError& err) {
            if (err.retryable()) throw ModelTooCoarse{};
            throw CompileError(std::string("construction step failed: ") + err.what());
        }
    }

    Ref pick(const Ref& a, const Ref& b, const std::vector<IPoint>& c, int want) {
        const IPoint& w = c[want];
        const IPoint& o = c[1 - want];
        const mpz_class dx = midpoint(w.x) - midpoint(o.x);
        const mpz_class dy = midpoint(w.y) - midpoint(o.y);
        Selector s;
        if (abs(dy) >= abs(dx))
            s = dy > 0 ? Selector::MaxY : Selector::MinY;
        else
            s = dx > 0 ? Selector::MaxX : Selector::MinX;
        const Ref r = intersect_pick(a, b, s);
        const IPoint& got = at(r);
        if (!IntervalArithmetic::overlaps(got.x, w.x) || !IntervalArithmetic::overlaps(got.y, w.y))
            throw ModelTooCoarse{};
        return r;
    }

    Program prog_;
    Interpreter model_;
    const IntervalArithmetic& A;
    std::size_t points_ = 0, lines_ = 0, circles_ = 0;
};

// Arithmetic on lengths: a value v is the point (v, 0).
class LengthCompiler {
   public:
    explicit LengthCompiler(Sketch& s) : s_(s), A(s.arithmetic()) {}

    Ref compile(const radix::Expr& e) {
        if (auto it = done_.find(e.id()); it != done_.end()) return it->second;
        const Ref r = node_point(e);
        done_.emplace(e.id(), r);
        return r;
    }

   private:
    Ref node_point(const radix::Expr& n) {
        auto operand = [&](const radix::Expr& c) { return compile(c); };
        switch (n.op()) {
            case radix::Op::Rational: return rational(n.value());
            case radix::Op::Add: return add(operand(n.lhs()), operand(n.rhs()));
            case radix::Op::Sub:
                if (n.lhs().is_rational() && n.lhs().value() == 0) return neg(operand(n.rhs()));
                return sub(operand(n.lhs()), operand(n.rhs()));
            case radix::Op::Mul: return mul(operand(n.lhs()), operand(n.rhs()));
            case radix::Op::Div: {
                const radix::Expr d = n.rhs();
                if (d.is_rational() && d.value().get_den() == 1) {
                    const mpz_class& num = d.value().get_num();
                    if (num > 0 && (num & (num - 1)) == 0) {
                        Ref r = operand(n.lhs());
                        for (mpz_class k = num; k > 1; k /= 2) r = half(r);
                        return r;
                    }
                }
                return div(operand(n.lhs()), operand(d));
            }
            case radix::Op::Sqrt: return sqrt(operand(n.lhs()));
        }
        throw CompileError("unknown expression node");
    }

    const Interval& v(const Ref& p) const { return s_.value(p); }

    Ref rational(const mpq_class& q) {
        const std::string key = q.get_str();
        if (auto it = rationals_.find(key); it != rationals_.end()) return it->second;
        Ref r;
        if (q.get_den() == 1) {
            r = integer(q.get_num());
        } else {
            const mpz_class& den = q.get_den();
            if ((den & (den - 1)) == 0) {
                r = integer(q.get_num());
                for (mpz_class k = den; k > 1; k /= 2) r = half(r);
            } else {
                r = div(integer(q.get_num()), integer(den));
            }
        }
        rationals_.emplace(key, r);
        return r;
    }

    Ref integer(const mpz_class& k) {
        if (k == 0) return s_.origin;
        if (k == 1) return s_.unit;
        if (k == -1) return s_.minus_one;
        const std::string key = k.get_str();
        if (auto it = integers_.find(key); it != integers_.end()) return it->second;
        Ref r;
        if (k < 0) {
            r = neg(integer(-k));
        } else {
            // binary expansion from the top bit: double, then add one for a set bit
            r = s_.unit;
            for (long bit = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 2; bit >= 0; --bit) {
                r = s_.intersect_toward(s_.circle(r, s_.origin, r), s_.x_axis, s_.on_x(A.add(v(r), v(r))));
                if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(bit)))
                    r = s_.intersect_toward(s_.circle(r, s_.origin, s_.unit), s_.x_axis,
                                            s_.on_x(A.add(v(r), A.integer(1))));
            }
        }
        integers_.emplace(key, r);
        return r;
    }

    Ref neg(const Ref& p) {
        if (p == s_.origin) return p;
        if (p == s_.unit) return s_.minus_one;
        return s_.intersect_toward(s_.circle(s_.origin, s_.origin, p), s_.x_axis, s_.on_x(A.neg(v(p))));
    }

    Ref add(const Ref& p, const Ref& q) {
        if (q == s_.origin) return p;
        if (p == s_.origin) return q;
        return s_.intersect_toward(s_.circle(p, s_.origin, q), s_.x_axis, s_.on_x(A.add(v(p), v(q))));
    }

    Ref sub(const Ref& p, const Ref& q) {
        if (q == s_.origin) return p;
        if (p == s_.origin) return neg(q);
        return s_.intersect_toward(s_.circle(p, s_.origin, q), s_.x_axis, s_.on_x(A.sub(v(p), v(q))));
    }

    // (0, q) on the y axis
    Ref raise(const Ref& q) {
        if (q == s_.unit) return s_.e_point;
        return s_.intersect_toward(s_.circle(s_.origin, s_.origin, q), s_.y_axis, s_.on_y(v(q)));
    }

    Ref lower(const Ref& q) {
        return s_.intersect_toward(s_.circle(s_.origin, s_.origin, q), s_.x_axis, s_.on_x(s_.at(q).y));
    }

    Ref mul(Ref p, Ref q) {
        if (p == s_.origin || q == s_.origin) return s_.origin;
        if (p == s_.unit) return q;
        if (q == s_.unit) return p;
        // p takes the role that degenerates at 1, so keep it far from 1
        const Interval one = A.integer(1);
        auto gap = [&](const Ref& r) {
            const Interval d = A.sub(v(r), one);
            return IntervalArithmetic::sign(d) >= 0 ? d.lo : -d.hi;
        };
        if (gap(q) > gap(p)) std::swap(p, q);
        // parallelogram U, P, X, Q' with Q' = (0, q); line PX meets the y axis at (0, p q)
        const Ref qy = raise(q);
        const Ref c1 = s_.circle(p, s_.unit, qy);
        const Ref c2 = s_.circle(qy, s_.unit, p);
        const Ref x = s_.intersect_toward(c1, c2, IPoint{A.sub(v(p), one), v(q)});
        const Ref hit = s_.intersect_only(s_.line(p, x), s_.y_axis);
        return lower(hit);
    }

    Ref div(const Ref& p, const Ref& q) {
        if (IntervalArithmetic::sign(v(q)) == 0) {
            if (v(q).lo == 0 && v(q).hi == 0)
                throw radix::EvaluationError(radix::EvaluationError::Kind::ZeroDivisor, "division by zero length");
            throw ModelTooCoarse{};
        }
        if (q == s_.unit) return p;
        if (p == s_.origin) return p;
        // parallelogram Q', P, X, E with Q' = (0, q); the line EX meets the x axis at (p/q, 0)
        const Ref qy = raise(q);
        const Ref c1 = s_.circle(s_.e_point, qy, p);
        const Ref c2 = s_.circle(p, qy, s_.e_point);
        const Ref x = s_.intersect_toward(c1, c2, IPoint{v(p), A.sub(A.integer(1), v(q))});
        return s_.intersect_only(s_.line(s_.e_point, x), s_.x_axis);
    }

    Ref half(const Ref& p) {
        if (p == s_.origin) return p;
        const Ref c1 = s_.circle(s_.origin, s_.origin, p);
        const Ref c2 = s_.circle(p, p, s_.origin);
        const Ref a = s_.intersect_pick(c1, c2, Selector::MaxY);
        const Ref b = s_.intersect_pick(c1, c2, Selector::MinY);
        return s_.intersect_only(s_.line(a, b), s_.x_axis);
    }

    Ref sqrt(const Ref& p) {
        const int sg = IntervalArithmetic::sign(v(p));
        if (sg < 0) throw radix::EvaluationError(radix::EvaluationError::Kind::NegativeSqrt, "square root of a negative length");
        if (sg == 0) return s_.origin;
        if (p == s_.unit) return p;
        // semicircle on the segment from (-1, 0) to (p, 0) meets the y axis at height sqrt(p)
        const Ref c1 = s_.circle(s_.minus_one, s_.minus_one, p);
        const Ref c2 = s_.circle(p, p, s_.minus_one);
        const Ref a = s_.intersect_pick(c1, c2, Selector::MaxY);
        const Ref b = s_.intersect_pick(c1, c2, Selector::MinY);
        const Ref mid = s_.intersect_only(s_.line(a, b), s_.x_axis);
        const Interval root = A.sqrt(v(p));
        const Ref top = s_.intersect_toward(s_.circle(mid, mid, p), s_.y_axis, s_.on_y(root));
        return lower(top);
    }

    Sketch& s_;
    const IntervalArithmetic& A;
    std::unordered_map<const radix::Node*, Ref> done_;
    std::map<std::string, Ref> rationals_;
    std::map<std::string, Ref> integers_;
};

long estimated_instructions(const radix::Expr& e) {
    return 14 * static_cast<long>(radix::depth_and_size(e).node_count) + 40;
}

template <class Body>
Program with_model(long base_scale, Body body) {
    long scale = base_scale;
    for (int attempt = 0; attempt < 3; ++attempt, scale *= 2) {
        try {
            Sketch s(scale);
            return body(s);
        } catch (const ModelTooCoarse&) {
        }
    }
    throw CompileError("construction choices stay ambiguous at " + std::to_string(scale / 2) + " digits");
}

}  // namespace

Program compile_length(const radix::Expr& e) {
    return with_model(60 + 2 * estimated_instructions(e), [&](Sketch& s) {
        LengthCompiler lc(s);
        const Ref r = lc.compile(e);
        return s.take({r});
    });
}

Program construct_ngon(const mpz_class& n, long digits) {
    gate::require_constructible(n);
    if (n < 3) throw std::invalid_argument("construct_ngon needs n >= 3");
    const radix::Expr c = periods::cos_expression(n);
    const unsigned long count = n.get_ui();
    const long estimate = estimated_instructions(c) + 2 * static_cast<long>(count) + 10;
    return with_model(digits + 2 * estimate + 10, [&](Sketch& s) {
        LengthCompiler lc(s);
        const Ref foot = lc.compile(c);
        // perpendicular to the x axis through (c, 0)
        const Ref around = s.circle(foot, s.origin, s.unit);
        const Ref left = s.intersect_toward(around, s.x_axis, s.at(foot), -1, 0);
        const Ref right = s.intersect_toward(around, s.x_axis, s.at(foot), 1, 0);
        const Ref cl = s.circle(left, left, right);
        const Ref cr = s.circle(right, right, left);
        const Ref up = s.intersect_pick(cl, cr, Selector::MaxY);
        const Ref down = s.intersect_pick(cl, cr, Selector::MinY);
        const Ref perpendicular = s.line(up, down);

        std::vector<Ref> vertices{s.unit};
        vertices.push_back(s.intersect_toward(perpendicular, s.unit_circle, s.at(foot), 0, 1));
        // step the chord |V0 V1| around the circle
        while (vertices.size() < count) {
            const Ref& cur = vertices.back();
            const Ref& prev = vertices[vertices.size() - 2];
            const Ref step = s.circle(cur, vertices[0], vertices[1]);
            vertices.push_back(s.intersect_away(step, s.unit_circle, s.at(prev)));
        }
        return s.take(vertices);
    });
}

// ---------------------------------------------------------------- verification

std::string NgonReport::deviation_string() const { return numeric::scientific_ceiling(max_deviation); }

namespace {

// Assignment of outputs to vertices minimizing the largest distance, by
// binary search over candidate distances with augmenting-path matching.
std::vector<std::size_t> bottleneck_assignment(const std::vector<std::pair<double, double>>& pts, unsigned long n) {
    std::vector<std::vector<double>> d(pts.size(), std::vector<double>(n));
    std::vector<double> cuts;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (unsigned long k = 0; k < n; ++k) {
            const double t = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            d[i][k] = std::hypot(pts[i].first - std::cos(t), pts[i].second - std::sin(t));
            cuts.push_back(d[i][k]);
        }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<long> owner;
    auto match = [&](double limit) {
        owner.assign(n, -1);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            std::vector<bool> seen(n, false);
            std::function<bool(std::size_t)> augment = [&](std::size_t u) {
                for (unsigned long k = 0; k < n; ++k) {
                    if (d[u][k] > limit || seen[k]) continue;
                    seen[k] = true;
                    if (owner[k] < 0 || augment(static_cast<std::size_t>(owner[k]))) {
                        owner[k] = static_cast<long>(u);
                        return true;
                    }
                }
                return false;
            };
            if (!augment(i)) return false;
        }
        return true;
    };
    std::size_t lo = 0, hi = cuts.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (match(cuts[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    match(cuts[lo]);
    std::vector<std::size_t> vertex(pts.size());
    for (unsigned long k = 0; k < n; ++k) vertex[static_cast<std::size_t>(owner[k])] = k;
    return vertex;
}

constexpr unsigned long kMaxAssignment = 2048;

}  // namespace

NgonReport verify_ngon(const Program& prog, unsigned long n, long digits) {
    if (prog.outputs.size() != n)
        throw std::invalid_argument("program has " + std::to_string(prog.outputs.size()) + " outputs, expected " +
                                    std::to_string(n));
    const Interpretation run = interpret(prog, digits);
    const long w = run.scale;
    const mpz_class unit = radix::pow10(static_cast<unsigned long>(w));
    const mpfr_prec_t bits = numeric::bits_for_digits(w + 20);

    // nearest vertex by angle; when two outputs share one, fall back to the
    // optimal assignment (or output order for very large n)
    std::vector<std::pair<double, double>> approx;
    std::vector<std::size_t> vertex;
    std::vector<bool> used(n, false);
    bool bijective = true;
    for (const auto& [ref, pt] : run.outputs) {
        const double x = mpq_class(midpoint(pt.x), unit).get_d();
        const double y = mpq_class(midpoint(pt.y), unit).get_d();
        approx.emplace_back(x, y);
        const double turns = std::atan2(y, x) / (2 * std::numbers::pi);
        long k = std::lround(turns * static_cast<double>(n));
        k = ((k % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n);
        if (used[static_cast<std::size_t>(k)]) bijective = false;
        used[static_cast<std::size_t>(k)] = true;
        vertex.push_back(static_cast<std::size_t>(k));
    }
    if (!bijective) {
        if (n <= kMaxAssignment) {
            vertex = bottleneck_assignment(approx, n);
        } else {
            for (std::size_t i = 0; i < n; ++i) vertex[i] = i;
        }
    }

    NgonReport report;
    report.outputs = n;
    mpz_class worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const IPoint& pt = run.outputs[i].second;
        const mpq_class angle(static_cast<unsigned long>(vertex[i]), n);
        const numeric::Real tx = numeric::cos_2pi(angle, bits);
        const numeric::Real ty = numeric::sin_2pi(angle, bits);
        // one extra unit covers the reference's own rounding
        auto reach = [&](const Interval& iv, const numeric::Real& t) {
            const mpz_class lo = t.floor_scaled(w) - 1, hi = t.ceil_scaled(w) + 1;
            mpz_class d = iv.hi - lo;
            if (hi - iv.lo > d) d = hi - iv.lo;
            return d;
        };
        const mpz_class dx = reach(pt.x, tx), dy = reach(pt.y, ty);
        const mpz_class dev = radix::isqrt_ceil(dx * dx + dy * dy);
        if (dev > worst) worst = dev;
    }
    report.bijective = bijective;
    report.max_deviation = mpq_class(worst, unit);
    report.max_deviation.canonicalize();
    const mpq_class bound(1, radix::pow10(static_cast<unsigned long>(digits / 2)));
    report.pass = bijective && report.max_deviation <= bound;
    return report;
}

}  // namespace cyclotomy::euclid
