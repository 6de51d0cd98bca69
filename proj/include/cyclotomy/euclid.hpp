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

// Straightedge-and-compass programs: a text format, a certified interval
// interpreter, a compiler from radical expressions to constructions, and
// regular n-gon synthesis and verification.
//
// A program only ever draws the line through two constructed points, the
// circle about a constructed point with radius equal to the distance of two
// constructed points, and intersects two of these with an explicit rule
// for which intersection point to keep.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cyclotomy/interval.hpp"
#include "cyclotomy/radix.hpp"

namespace cyclotomy::euclid {

/// A label such as p3, l0 or c12. Each kind is numbered from 0 in order of
/// definition.
struct Ref {
    enum class Kind : char { Point = 'p', Line = 'l', Circle = 'c' };
    Kind kind = Kind::Point;
    std::size_t index = 0;

    std::string to_string() const;
    friend bool operator==(const Ref&, const Ref&) = default;
};

/// Which intersection point to keep. max-y keeps the point with the greater
/// y coordinate, falling back to the greater x when the y coordinates tie;
/// max-x / min-x fall back to the greater y. only is for two lines.
enum class Selector { MaxY, MinY, MaxX, MinX, Only };

const char* selector_name(Selector s);

struct PointInit {
    enum class Which { Origin, Unit };
    Ref target;
    Which which;
};

struct LineThrough {
    Ref target;
    Ref a, b;
};

struct CircleAt {
    Ref target;
    Ref center, from, to;  // radius = |from - to|
};

struct Intersection {
    Ref target;
    Ref first, second;
    Selector selector;
};

using Instruction = std::variant<PointInit, LineThrough, CircleAt, Intersection>;

struct Program {
    std::vector<Instruction> instructions;
    std::vector<Ref> outputs;
};

std::string to_string(const Instruction& ins);

/// Text form: a "euclid/1" header line, one instruction per line and a final
/// "output ..." line, e.g.
///   euclid/1
///   p0 = origin
///   p1 = unit
///   l0 = line p0 p1
///   c0 = circle p0 p0 p1
///   p2 = intersect c0 l0 min-x
///   output p2
std::string print(const Program& prog);

class ProgramFormatError : public std::runtime_error {
   public:
    ProgramFormatError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

   private:
    std::size_t line_;
};

/// Strict parser for print()'s format; parse(print(p)) prints identically.
Program parse_program(std::string_view text);

class ValidationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct ProgramStats {
    std::size_t points = 0;
    std::size_t lines = 0;
    std::size_t circles = 0;
    std::size_t intersections = 0;
};

/// Static checks: labels defined in order and before use with the right
/// kind, exactly one origin and one unit, distinct line endpoints by label,
/// `only` exactly for line-line intersections, outputs are points.
ProgramStats validate(const Program& prog);

// ---------------------------------------------------------------- interpretation

struct IPoint {
    radix::Interval x, y;
};

/// Degenerate instruction. retryable() is set when the failure is an
/// unresolved comparison that more precision might settle.
class InterpretError : public std::runtime_error {
   public:
    InterpretError(std::size_t instruction, const std::string& what, bool retryable);
    std::size_t instruction() const noexcept { return instruction_; }
    bool retryable() const noexcept { return retryable_; }

   private:
    std::size_t instruction_;
    bool retryable_;
};

/// Executes instructions one at a time at a fixed decimal scale.
class Interpreter {
   public:
    explicit Interpreter(long scale);

    void execute(const Instruction& ins);
    /// Both intersection points of two objects (one for two lines) without
    /// recording anything.
    std::vector<IPoint> candidates(const Ref& first, const Ref& second) const;

    const IPoint& point(const Ref& r) const;
    std::size_t point_count() const noexcept { return points_.size(); }
    std::size_t executed() const noexcept { return executed_; }
    const radix::IntervalArithmetic& arithmetic() const noexcept { return ar_; }

    struct Line {
        IPoint a, b;
    };
    struct Circle {
        IPoint center;
        radix::Interval r2;
    };
    const std::vector<IPoint>& points() const noexcept { return points_; }
    const std::vector<Line>& lines() const noexcept { return lines_; }
    const std::vector<Circle>& circles() const noexcept { return circles_; }

   private:
    IPoint select(const std::vector<IPoint>& cands, Selector s) const;
    std::vector<IPoint> line_line(const Line& a, const Line& b) const;
    std::vector<IPoint> line_circle(const Line& l, const Circle& c) const;
    std::vector<IPoint> circle_circle(const Circle& a, const Circle& b) const;
    [[noreturn]] void fail(const std::string& what, bool retryable) const;

    radix::IntervalArithmetic ar_;
    std::vector<IPoint> points_;
    std::vector<Line> lines_;
    std::vector<Circle> circles_;
    std::size_t executed_ = 0;
};

struct Interpretation {
    long scale = 0;  // working decimal scale actually used
    std::vector<std::pair<Ref, IPoint>> outputs;
};

/// Runs a validated program. The working scale is digits + 2 * (number of
/// instructions) + 10, doubled once on an unresolved comparison or when an
/// output is wider than 10^-digits.
Interpretation interpret(const Program& prog, long digits);

// ---------------------------------------------------------------- synthesis

class CompileError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Program whose single output is (value of e, 0). Radix errors for
/// negative radicands or zero divisors propagate as radix::EvaluationError.
Program compile_length(const radix::Expr& e);

/// Regular n-gon inscribed in the unit circle with vertex k at
/// exp(2 pi i k / n), outputs in order of k. Throws gate::NotConstructible.
Program construct_ngon(const mpz_class& n, long digits = 50);

struct NgonReport {
    std::size_t outputs = 0;
    /// Every output is nearest to a different vertex.
    bool bijective = false;
    /// Certified upper bound on the distance of an output to its vertex.
    mpq_class max_deviation;
    bool pass = false;
    /// e.g. "3.1e-52"
    std::string deviation_string() const;
};

/// Matches each output to the nearest vertex exp(2 pi i k / n) by angle.
/// When that is not a bijection the deviation is taken over the assignment
/// minimizing the largest distance instead (output order above 2048
/// vertices). Passes when the nearest matching is a bijection with every
/// distance at most 10^-(digits/2). Throws std::invalid_argument when the
/// output count is not n.
NgonReport verify_ngon(const Program& prog, unsigned long n, long digits);

/// SVG drawing of every object of the program, output points highlighted.
std::string to_svg(const Program& prog);

}  // namespace cyclotomy::euclid
