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
#include <array>
#include <charconv>
#include <sstream>

#include "cyclotomy/euclid.hpp"

namespace cyclotomy::euclid {

namespace {

constexpr std::string_view kHeader = "euclid/1";

constexpr std::array<std::pair<Selector, std::string_view>, 5> kSelectors{{
    {Selector::MaxY, "max-y"},
    {Selector::MinY, "min-y"},
    {Selector::MaxX, "max-x"},
    {Selector::MinX, "min-x"},
    {Selector::Only, "only"},
}};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

std::string Ref::to_string() const { return static_cast<char>(kind) + std::to_string(index); }

const char* selector_name(Selector s) {
    for (const auto& [sel, name] : kSelectors)
        if (sel == s) return name.data();
    return "?";
}

std::string to_string(const Instruction& ins) {
    return std::visit(
        overloaded{
            [](const PointInit& i) {
                return i.target.to_string() + (i.which == PointInit::Which::Origin ? " = origin" : " = unit");
            },
            [](const LineThrough& i) {
                return i.target.to_string() + " = line " + i.a.to_string() + " " + i.b.to_string();
            },
            [](const CircleAt& i) {
                return i.target.to_string() + " = circle " + i.center.to_string() + " " + i.from.to_string() + " " +
                       i.to.to_string();
            },
            [](const Intersection& i) {
                return i.target.to_string() + " = intersect " + i.first.to_string() + " " + i.second.to_string() +
                       " " + selector_name(i.selector);
            },
        },
        ins);
}

std::string print(const Program& prog) {
    std::string out(kHeader);
    out += '\n';
    for (const auto& ins : prog.instructions) {
        out += to_string(ins);
        out += '\n';
    }
    out += "output";
    for (const auto& r : prog.outputs) {
        out += ' ';
        out += r.to_string();
    }
    out += '\n';
    return out;
}

ProgramFormatError::ProgramFormatError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::vector<std::string_view> split_words(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i <= s.size()) {
        const std::size_t j = s.find(' ', i);
        const std::size_t end = j == std::string_view::npos ? s.size() : j;
        out.push_back(s.substr(i, end - i));
        if (j == std::string_view::npos) break;
        i = j + 1;
    }
    return out;
}

Ref parse_ref(std::string_view w, std::size_t line) {
    if (w.size() < 2 || (w[0] != 'p' && w[0] != 'l' && w[0] != 'c'))
        throw ProgramFormatError(line, "expected a label like p0, l0 or c0, got '" + std::string(w) + "'");
    const std::string_view digits = w.substr(1);
    if (digits.size() > 1 && digits[0] == '0')
        throw ProgramFormatError(line, "label '" + std::string(w) + "' has a leading zero");
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
        throw ProgramFormatError(line, "malformed label '" + std::string(w) + "'");
    return Ref{static_cast<Ref::Kind>(w[0]), index};
}

Ref parse_ref(std::string_view w, Ref::Kind kind, std::size_t line) {
    const Ref r = parse_ref(w, line);
    if (r.kind != kind)
        throw ProgramFormatError(line, "label '" + std::string(w) + "' has the wrong kind here");
    return r;
}

}  // namespace

Program parse_program(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) throw ProgramFormatError(lines.size() + 1, "missing final newline");
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    if (lines.empty() || lines[0] != kHeader) throw ProgramFormatError(1, "expected header 'euclid/1'");
    if (lines.size() < 2) throw ProgramFormatError(1, "missing output line");

    Program prog;
    for (std::size_t n = 1; n < lines.size(); ++n) {
        const std::size_t line = n + 1;
        const auto w = split_words(lines[n]);
        const bool last = n + 1 == lines.size();
        if (w[0] == "output") {
            if (!last) throw ProgramFormatError(line, "output must be the last line");
            for (std::size_t i = 1; i < w.size(); ++i) prog.outputs.push_back(parse_ref(w[i], Ref::Kind::Point, line));
            return prog;
        }
        if (last) throw ProgramFormatError(line, "missing output line");
        if (w.size() < 3 || w[1] != "=") throw ProgramFormatError(line, "expected '<label> = <instruction>'");
        const Ref target = parse_ref(w[0], line);
        const std::string_view verb = w[2];
        auto arity = [&](std::size_t k) {
            if (w.size() != 3 + k)
                throw ProgramFormatError(line, "'" + std::string(verb) + "' takes " + std::to_string(k) + " arguments");
        };
        auto want = [&](Ref::Kind k) {
            if (target.kind != k) throw ProgramFormatError(line, "'" + std::string(verb) + "' defines the wrong kind of label");
        };
        if (verb == "origin" || verb == "unit") {
            arity(0);
            want(Ref::Kind::Point);
            prog.instructions.emplace_back(
                PointInit{target, verb == "origin" ? PointInit::Which::Origin : PointInit::Which::Unit});
        } else if (verb == "line") {
            arity(2);
            want(Ref::Kind::Line);
            prog.instructions.emplace_back(LineThrough{target, parse_ref(w[3], Ref::Kind::Point, line),
                                                       parse_ref(w[4], Ref::Kind::Point, line)});
        } else if (verb == "circle") {
            arity(3);
            want(Ref::Kind::Circle);
            prog.instructions.emplace_back(CircleAt{target, parse_ref(w[3], Ref::Kind::Point, line),
                                                    parse_ref(w[4], Ref::Kind::Point, line),
                                                    parse_ref(w[5], Ref::Kind::Point, line)});
        } else if (verb == "intersect") {
            arity(3);
            want(Ref::Kind::Point);
            const Ref a = parse_ref(w[3], line);
            const Ref b = parse_ref(w[4], line);
            if (a.kind == Ref::Kind::Point || b.kind == Ref::Kind::Point)
                throw ProgramFormatError(line, "intersect takes two lines or circles");
            const auto* sel = std::find_if(kSelectors.begin(), kSelectors.end(),
                                           [&](const auto& s) { return s.second == w[5]; });
            if (sel == kSelectors.end()) throw ProgramFormatError(line, "unknown selector '" + std::string(w[5]) + "'");
            prog.instructions.emplace_back(Intersection{target, a, b, sel->first});
        } else {
            throw ProgramFormatError(line, "unknown instruction '" + std::string(verb) + "'");
        }
    }
    throw ProgramFormatError(lines.size(), "missing output line");
}

ProgramStats validate(const Program& prog) {
    ProgramStats st;
    std::size_t origins = 0, units = 0;
    std::size_t n = 0;
    auto fail = [&](const std::string& what) {
        throw ValidationError("instruction " + std::to_string(n) + " (" + to_string(prog.instructions[n]) + "): " + what);
    };
    auto defined = [&](const Ref& r) {
        switch (r.kind) {
            case Ref::Kind::Point: return r.index < st.points;
            case Ref::Kind::Line: return r.index < st.lines;
            case Ref::Kind::Circle: return r.index < st.circles;
        }
        return false;
    };
    auto define = [&](const Ref& r) {
        std::size_t& count = r.kind == Ref::Kind::Point ? st.points : r.kind == Ref::Kind::Line ? st.lines : st.circles;
        if (r.index != count) fail("label " + r.to_string() + " out of sequence, expected index " + std::to_string(count));
        ++count;
    };
    auto use = [&](const Ref& r, Ref::Kind k) {
        if (r.kind != k) fail("label " + r.to_string() + " has the wrong kind");
        if (!defined(r)) fail("label " + r.to_string() + " used before definition");
    };

    for (; n < prog.instructions.size(); ++n) {
        std::visit(overloaded{
                       [&](const PointInit& i) {
                           if (i.target.kind != Ref::Kind::Point) fail("point init must define a point");
                           (i.which == PointInit::Which::Origin ? origins : units)++;
                           define(i.target);
                       },
                       [&](const LineThrough& i) {
                           if (i.target.kind != Ref::Kind::Line) fail("line must define a line label");
                           use(i.a, Ref::Kind::Point);
                           use(i.b, Ref::Kind::Point);
                           if (i.a == i.b) fail("line through a single point");
                           define(i.target);
                       },
                       [&](const CircleAt& i) {
                           if (i.target.kind != Ref::Kind::Circle) fail("circle must define a circle label");
                           use(i.center, Ref::Kind::Point);
                           use(i.from, Ref::Kind::Point);
                           use(i.to, Ref::Kind::Point);
                           if (i.from == i.to) fail("circle with zero radius");
                           define(i.target);
                       },
                       [&](const Intersection& i) {
                           if (i.target.kind != Ref::Kind::Point) fail("intersection must define a point");
                           for (const Ref* r : {&i.first, &i.second}) {
                               if (r->kind == Ref::Kind::Point) fail("cannot intersect a point");
                               use(*r, r->kind);
                           }
                           if (i.first == i.second) fail("object intersected with itself");
                           const bool two_lines = i.first.kind == Ref::Kind::Line && i.second.kind == Ref::Kind::Line;
                           if (two_lines != (i.selector == Selector::Only))
                               fail("selector 'only' is required for, and limited to, two lines");
                           ++st.intersections;
                           define(i.target);
                       },
                   },
                   prog.instructions[n]);
    }
    if (origins != 1 || units != 1) throw ValidationError("a program needs exactly one origin and one unit point");
    for (const auto& r : prog.outputs)
        if (r.kind != Ref::Kind::Point || r.index >= st.points)
            throw ValidationError("output " + r.to_string() + " is not a defined point");
    return st;
}

}  // namespace cyclotomy::euclid
