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

#include "cyclotomy/radix.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>
#include <utility>

namespace cyclotomy::radix {

const char* op_name(Op op) {
    switch (op) {
        case Op::Rational: return "rational";
        case Op::Add: return "add";
        case Op::Sub: return "sub";
        case Op::Mul: return "mul";
        case Op::Div: return "div";
        case Op::Sqrt: return "sqrt";
    }
    return "?";
}

// ---------------------------------------------------------------- builder

std::size_t ExprBuilder::KeyHash::operator()(const Key& k) const noexcept {
    const std::size_t h1 = std::hash<const void*>{}(k.lhs);
    const std::size_t h2 = std::hash<const void*>{}(k.rhs);
    return (h1 * 0x9E3779B97F4A7C15ULL) ^ (h2 + 0x7F4A7C15ULL + (h1 << 6)) ^ static_cast<std::size_t>(k.op);
}

Expr ExprBuilder::rational(const mpq_class& q) {
    mpq_class v = q;
    v.canonicalize();
    std::string key = v.get_str();
    auto it = rationals_.find(key);
    if (it != rationals_.end()) return it->second;
    Expr e(std::make_shared<const Node>(Node{Op::Rational, std::move(v), nullptr, nullptr}));
    rationals_.emplace(std::move(key), e);
    return e;
}

Expr ExprBuilder::make(Op op, const Expr& lhs, const Expr& rhs) {
    if (op == Op::Rational) throw std::invalid_argument("ExprBuilder::make: use rational() for leaves");
    if (!lhs || (op != Op::Sqrt && !rhs) || (op == Op::Sqrt && rhs))
        throw std::invalid_argument(std::string("ExprBuilder::make: wrong operands for ") + op_name(op));
    const Key key{op, lhs.id(), rhs ? rhs.id() : nullptr};
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    Expr e(std::make_shared<const Node>(Node{op, mpq_class(0), lhs.node(), rhs ? rhs.node() : nullptr}));
    table_.emplace(key, e);
    return e;
}

namespace {
bool is_value(const Expr& e, long v) { return e.is_rational() && e.value() == v; }
}  // namespace

Expr ExprBuilder::add(const Expr& a, const Expr& b) {
    if (a.is_rational() && b.is_rational()) return rational(a.value() + b.value());
    if (is_value(a, 0)) return b;
    if (is_value(b, 0)) return a;
    return make(Op::Add, a, b);
}

Expr ExprBuilder::neg(const Expr& a) {
    if (a.is_rational()) return rational(-a.value());
    return make(Op::Sub, rational(0), a);
}

Expr ExprBuilder::sub(const Expr& a, const Expr& b) {
    if (a.is_rational() && b.is_rational()) return rational(a.value() - b.value());
    if (is_value(b, 0)) return a;
    if (is_value(a, 0)) return neg(b);
    return make(Op::Sub, a, b);
}

Expr ExprBuilder::mul(const Expr& a, const Expr& b) {
    if (a.is_rational() && b.is_rational()) return rational(a.value() * b.value());
    if (is_value(a, 0) || is_value(b, 0)) return rational(0);
    if (is_value(a, 1)) return b;
    if (is_value(b, 1)) return a;
    return make(Op::Mul, a, b);
}

Expr ExprBuilder::div(const Expr& a, const Expr& b) {
    if (is_value(b, 0)) throw EvaluationError(EvaluationError::Kind::ZeroDivisor, "division by rational zero");
    if (a.is_rational() && b.is_rational()) return rational(a.value() / b.value());
    if (is_value(a, 0)) return rational(0);
    if (is_value(b, 1)) return a;
    if (b.is_rational() && a.op() == Op::Div && a.rhs().is_rational())
        return div(a.lhs(), rational(a.rhs().value() * b.value()));
    return make(Op::Div, a, b);
}

Expr ExprBuilder::sqrt(const Expr& a) {
    if (a.is_rational() && a.value() < 0)
        throw EvaluationError(EvaluationError::Kind::NegativeSqrt, "square root of negative rational " + a.value().get_str());
    return make(Op::Sqrt, a);
}

Expr ExprBuilder::sum(std::span<const Expr> terms) {
    if (terms.empty()) return rational(0);
    if (terms.size() == 1) return terms[0];
    const std::size_t half = terms.size() / 2;
    return add(sum(terms.first(half)), sum(terms.subspan(half)));
}

// ---------------------------------------------------------------- traversal

std::vector<Expr> post_order(const Expr& root) {
    std::vector<Expr> out;
    std::unordered_set<const Node*> seen;
    std::vector<std::pair<Expr, bool>> stack{{root, false}};
    while (!stack.empty()) {
        auto [e, expanded] = stack.back();
        stack.pop_back();
        if (expanded) {
            out.push_back(e);
            continue;
        }
        if (!seen.insert(e.id()).second) continue;
        stack.emplace_back(e, true);
        if (e.rhs()) stack.emplace_back(e.rhs(), false);
        if (e.lhs()) stack.emplace_back(e.lhs(), false);
    }
    return out;
}

DepthAndSize depth_and_size(const Expr& e) {
    const auto order = post_order(e);
    std::unordered_map<const Node*, std::size_t> depth;
    for (const auto& n : order) {
        std::size_t d = 0;
        if (n.lhs()) d = std::max(d, depth.at(n.lhs().id()));
        if (n.rhs()) d = std::max(d, depth.at(n.rhs().id()));
        if (n.op() == Op::Sqrt) ++d;
        depth[n.id()] = d;
    }
    return {depth.at(e.id()), order.size()};
}

bool structurally_equal(const Expr& a, const Expr& b) {
    std::unordered_map<const Node*, const Node*> ab, ba;
    std::vector<std::pair<Expr, Expr>> stack{{a, b}};
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        if (static_cast<bool>(x) != static_cast<bool>(y)) return false;
        if (!x) continue;
        auto ix = ab.find(x.id());
        auto iy = ba.find(y.id());
        if (ix != ab.end() || iy != ba.end()) {
            if (ix == ab.end() || iy == ba.end() || ix->second != y.id() || iy->second != x.id()) return false;
            continue;
        }
        if (x.op() != y.op()) return false;
        if (x.is_rational() && x.value() != y.value()) return false;
        ab.emplace(x.id(), y.id());
        ba.emplace(y.id(), x.id());
        stack.emplace_back(x.lhs(), y.lhs());
        stack.emplace_back(x.rhs(), y.rhs());
    }
    return true;
}

// ---------------------------------------------------------------- evaluation

Evaluator::Evaluator(long scale, mpz_class clamp_scaled) : arith_(scale), clamp_(std::move(clamp_scaled)) {}

const Interval& Evaluator::operator()(const Expr& root) {
    if (auto it = memo_.find(root.id()); it != memo_.end()) return it->second;
    std::vector<std::pair<Expr, bool>> stack{{root, false}};
    while (!stack.empty()) {
        auto [e, expanded] = stack.back();
        stack.pop_back();
        if (memo_.count(e.id())) continue;
        if (!expanded && e.op() != Op::Rational) {
            stack.emplace_back(e, true);
            if (e.rhs() && !memo_.count(e.rhs().id())) stack.emplace_back(e.rhs(), false);
            if (!memo_.count(e.lhs().id())) stack.emplace_back(e.lhs(), false);
            continue;
        }
        Interval v;
        switch (e.op()) {
            case Op::Rational: v = arith_.rational(e.value()); break;
            case Op::Add: v = arith_.add(memo_.at(e.lhs().id()), memo_.at(e.rhs().id())); break;
            case Op::Sub: v = arith_.sub(memo_.at(e.lhs().id()), memo_.at(e.rhs().id())); break;
            case Op::Mul:
                if (e.lhs() == e.rhs())
                    v = arith_.sqr(memo_.at(e.lhs().id()));
                else
                    v = arith_.mul(memo_.at(e.lhs().id()), memo_.at(e.rhs().id()));
                break;
            case Op::Div: {
                const Interval& d = memo_.at(e.rhs().id());
                if (IntervalArithmetic::sign(d) == 0) {
                    if (d.lo == 0 && d.hi == 0)
                        throw EvaluationError(EvaluationError::Kind::ZeroDivisor, "divisor evaluates to zero");
                    throw EvaluationError(EvaluationError::Kind::Indeterminate, "divisor interval contains zero");
                }
                v = arith_.div(memo_.at(e.lhs().id()), d);
                break;
            }
            case Op::Sqrt: {
                Interval r = memo_.at(e.lhs().id());
                if (r.lo < 0) {
                    if (r.lo >= -clamp_) {
                        r.lo = 0;
                        if (r.hi < 0) r.hi = 0;
                    } else if (r.hi < -clamp_) {
                        throw EvaluationError(EvaluationError::Kind::NegativeSqrt, "square root of a negative value");
                    } else {
                        throw EvaluationError(EvaluationError::Kind::Indeterminate, "radicand sign unresolved");
                    }
                }
                v = arith_.sqrt(r);
                break;
            }
        }
        memo_.emplace(e.id(), std::move(v));
    }
    return memo_.at(root.id());
}

Enclosure evaluate(const Expr& e, long digits) {
    if (digits < 10) throw std::invalid_argument("evaluate: digits must be >= 10");
    long guard = 10;
    for (int attempt = 0; attempt < 7; ++attempt, guard *= 2) {
        const long scale = digits + guard;
        Evaluator ev(scale, pow10(static_cast<unsigned long>(guard + 5)));
        Interval iv;
        try {
            iv = ev(e);
        } catch (const EvaluationError& err) {
            if (err.kind() == EvaluationError::Kind::Indeterminate) continue;
            throw;
        }
        const mpz_class quarter = pow10(static_cast<unsigned long>(guard)) / 4;
        if (IntervalArithmetic::width(iv) <= quarter) return {iv.lo - quarter, iv.hi + quarter, scale};
    }
    throw EvaluationError(EvaluationError::Kind::PrecisionExhausted,
                          "evaluate: no certified enclosure after repeated precision escalation");
}

namespace {
mpq_class scaled(const mpz_class& v, long scale) {
    mpq_class q(v, pow10(static_cast<unsigned long>(scale)));
    q.canonicalize();
    return q;
}
}  // namespace

mpq_class Enclosure::lower() const { return scaled(lo, scale); }
mpq_class Enclosure::upper() const { return scaled(hi, scale); }
bool Enclosure::contains(const mpq_class& q) const { return lower() <= q && q <= upper(); }

bool Enclosure::inside(const Enclosure& outer) const {
    return outer.lower() <= lower() && upper() <= outer.upper();
}

std::string Enclosure::midpoint_string(int digits) const {
    // round((lo + hi) / 2 * 10^(digits - scale)) to nearest
    mpz_class num = (lo + hi) * pow10(static_cast<unsigned long>(digits));
    mpz_class den = 2 * pow10(static_cast<unsigned long>(scale));
    mpz_class twice = 2 * num + den;
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
    const bool negative = r < 0;
    std::string s = mpz_class(abs(r)).get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return (negative ? "-" : "") + s;
}

}  // namespace cyclotomy::radix
