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
#include <cstdio>

#include "cyclotomy/euclid.hpp"

namespace cyclotomy::euclid {

namespace {

struct P2 {
    double x, y;
};

double to_double(const radix::Interval& v, const mpz_class& unit) {
    mpz_class m = v.lo + v.hi;
    return mpq_class(m, 2 * unit).get_d();
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s(buf);
    return s == "-0.000000" ? "0.000000" : s;
}

}  // namespace

std::string to_svg(const Program& prog) {
    validate(prog);
    Interpreter in(30 + 2 * static_cast<long>(prog.instructions.size()));
    for (const auto& ins : prog.instructions) in.execute(ins);
    const mpz_class& unit = in.arithmetic().unit();
    auto pt = [&](const IPoint& p) { return P2{to_double(p.x, unit), to_double(p.y, unit)}; };

    std::vector<P2> points;
    for (const auto& p : in.points()) points.push_back(pt(p));
    double lo_x = -1.2, hi_x = 1.2, lo_y = -1.2, hi_y = 1.2;
    for (const auto& p : points) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    }
    const double pad = 0.1 * std::max(hi_x - lo_x, hi_y - lo_y);
    lo_x -= pad, hi_x += pad, lo_y -= pad, hi_y += pad;
    const double span = std::max(hi_x - lo_x, hi_y - lo_y);
    const double stroke = span / 600;

    // y grows downwards in SVG, so flip it
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(lo_x) + " " + num(-hi_y) + " " +
           num(hi_x - lo_x) + " " + num(hi_y - lo_y) + "\" width=\"800\" height=\"800\">\n";
    out += "<g fill=\"none\" stroke=\"#8a9bb0\" stroke-width=\"" + num(stroke) + "\">\n";
    for (const auto& c : in.circles()) {
        const P2 ctr = pt(c.center);
        const double r = std::sqrt(std::max(0.0, mpq_class(c.r2.lo + c.r2.hi, 2 * unit).get_d()));
        out += "<circle cx=\"" + num(ctr.x) + "\" cy=\"" + num(-ctr.y) + "\" r=\"" + num(r) + "\"/>\n";
    }
    for (const auto& l : in.lines()) {
        const P2 a = pt(l.a), b = pt(l.b);
        const double dx = b.x - a.x, dy = b.y - a.y;
        const double len = std::hypot(dx, dy);
        const double t = len > 0 ? 2 * span / len : 0;
        out += "<line x1=\"" + num(a.x - t * dx) + "\" y1=\"" + num(-(a.y - t * dy)) + "\" x2=\"" + num(b.x + t * dx) +
               "\" y2=\"" + num(-(b.y + t * dy)) + "\"/>\n";
    }
    out += "</g>\n<g fill=\"#3b4b5e\">\n";
    for (const auto& p : points)
        out += "<circle cx=\"" + num(p.x) + "\" cy=\"" + num(-p.y) + "\" r=\"" + num(2 * stroke) + "\"/>\n";
    out += "</g>\n";
    if (!prog.outputs.empty()) {
        out += "<polygon fill=\"none\" stroke=\"#c0392b\" stroke-width=\"" + num(2 * stroke) + "\" points=\"";
        for (std::size_t i = 0; i < prog.outputs.size(); ++i) {
            const P2& p = points[prog.outputs[i].index];
            if (i) out += ' ';
            out += num(p.x) + "," + num(-p.y);
        }
        out += "\"/>\n<g fill=\"#c0392b\">\n";
        for (const auto& r : prog.outputs) {
            const P2& p = points[r.index];
            out += "<circle cx=\"" + num(p.x) + "\" cy=\"" + num(-p.y) + "\" r=\"" + num(4 * stroke) + "\"/>\n";
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace cyclotomy::euclid
