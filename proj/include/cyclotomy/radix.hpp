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

// Nested-radical expressions: a DAG of exact rationals combined by
// + - * / and square roots, with certified evaluation to any number of
// decimal digits.

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cyclotomy/interval.hpp"

namespace cyclotomy::radix {

enum class Op : unsigned char { Rational, Add, Sub, Mul, Div, Sqrt };

const char* op_name(Op op);

struct Node {
    Op op;
    mpq_class value;  // Rational only
    std::shared_ptr<const Node> lhs;  // Sqrt: the radicand
    std::shared_ptr<const Node> rhs;
};

/// Handle to an immutable DAG node. Copies share the node.
class Expr {
   public:
    Expr() = default;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    explicit operator bool() const noexcept { return static_cast<bool>(node_); }
    Op op() const { return node_->op; }
    bool is_rational() const { return node_->op == Op::Rational; }
    const mpq_class& value() const { return node_->value; }
    Expr lhs() const { return Expr(node_->lhs); }
    Expr rhs() const { return Expr(node_->rhs); }
    /// Node identity; equal ids mean the same shared subterm.
    const Node* id() const noexcept { return node_.get(); }
    const std::shared_ptr<const Node>& node() const noexcept { return node_; }

    friend bool operator==(const Expr& a, const Expr& b) noexcept { return a.node_ == b.node_; }

   private:
    std::shared_ptr<const Node> node_;
};

/// Hash-consing factory. Structurally identical requests return the same
/// node, so recurring sub-radicals are stored (and later evaluated) once.
///
/// The arithmetic entry points fold operations whose operands are both
/// rational leaves, drop identities (x + 0, x * 1, x * 0, x / 1) and merge
/// div(div(x, q1), q2) into div(x, q1 * q2) for rationals q1, q2. Nothing
/// else is rewritten.
class ExprBuilder {
   public:
    Expr rational(const mpq_class& q);
    Expr integer(long v) { return rational(mpq_class(v)); }

    Expr add(const Expr& a, const Expr& b);
    Expr sub(const Expr& a, const Expr& b);
    Expr mul(const Expr& a, const Expr& b);
    Expr div(const Expr& a, const Expr& b);
    Expr sqrt(const Expr& a);
    Expr neg(const Expr& a);

    /// Balanced sum; zero for an empty range.
    Expr sum(std::span<const Expr> terms);

    /// Interned node with no folding; used by the parser so that a parsed
    /// DAG mirrors its text exactly.
    Expr make(Op op, const Expr& lhs, const Expr& rhs = Expr());

    std::size_t interned() const noexcept { return table_.size() + rationals_.size(); }

   private:
    struct Key {
        Op op;
        const Node* lhs;
        const Node* rhs;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };
    std::unordered_map<Key, Expr, KeyHash> table_;
    std::unordered_map<std::string, Expr> rationals_;
};

/// Errors from evaluate(). NegativeSqrt and ZeroDivisor mean the
/// expression is malformed; Indeterminate means more precision might help
/// and is only seen by callers driving an Evaluator directly.
class EvaluationError : public std::runtime_error {
   public:
    enum class Kind { NegativeSqrt, ZeroDivisor, Indeterminate, PrecisionExhausted };
    EvaluationError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

   private:
    Kind kind_;
};

/// Certified enclosure [lo, hi] * 10^-scale.
struct Enclosure {
    mpz_class lo;
    mpz_class hi;
    long scale = 0;

    mpq_class lower() const;
    mpq_class upper() const;
    bool contains(const mpq_class& q) const;
    /// Whether this enclosure lies inside `outer`.
    bool inside(const Enclosure& outer) const;
    /// Midpoint as a fixed-point decimal string with `digits` fractional digits.
    std::string midpoint_string(int digits) const;
};

/// Interval evaluation at a fixed scale with a memo table that persists
/// across calls, so a growing DAG can be evaluated incrementally.
///
/// A square root whose radicand interval dips below zero by no more than
/// clamp_scaled (in scaled units) is clamped to start at zero.
class Evaluator {
   public:
    Evaluator(long scale, mpz_class clamp_scaled);

    const Interval& operator()(const Expr& e);
    const IntervalArithmetic& arithmetic() const noexcept { return arith_; }

   private:
    IntervalArithmetic arith_;
    mpz_class clamp_;
    std::unordered_map<const Node*, Interval> memo_;
};

/// Certified evaluation: the true value lies in the result and the result
/// is at most 10^-digits wide. The working scale is raised until the inner
/// enclosure is at most a quarter of 10^-digits wide, and the result is then
/// padded by a quarter on each side, which makes results for increasing
/// digits nest. Throws EvaluationError for a radicand certainly below
/// -10^-(digits-5), a divisor certainly zero, or when six precision
/// escalations do not settle a sign.
Enclosure evaluate(const Expr& e, long digits);

/// Canonical text: prefix form with rationals in parentheses, e.g.
/// "div(add((-1),sqrt((5))),(4))". A node reached more than once is written
/// "#k=..." the first time and "@k" afterwards, numbering in order of first
/// appearance.
std::string canonical_serialize(const Expr& e);

class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t offset, const std::string& what);
    std::size_t offset() const noexcept { return offset_; }

   private:
    std::size_t offset_;
};

Expr parse(std::string_view text, ExprBuilder& builder);
Expr parse(std::string_view text);

struct DepthAndSize {
    std::size_t sqrt_depth = 0;
    std::size_t node_count = 0;
};

/// Deepest nesting of square roots along any path, and number of distinct nodes.
DepthAndSize depth_and_size(const Expr& e);

/// Same DAG shape: there is a bijection between the nodes of a and b that
/// preserves operations, rational values, children and sharing.
bool structurally_equal(const Expr& a, const Expr& b);

/// Distinct nodes in post-order (children before parents).
std::vector<Expr> post_order(const Expr& e);

}  // namespace cyclotomy::radix
