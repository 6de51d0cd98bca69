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

#include <cctype>
#include <unordered_map>

namespace cyclotomy::radix {

ParseError::ParseError(std::size_t offset, const std::string& what)
    : std::runtime_error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

std::string canonical_serialize(const Expr& root) {
    // nodes with more than one parent get labels
    std::unordered_map<const Node*, std::size_t> parents;
    for (const auto& n : post_order(root)) {
        if (n.lhs()) ++parents[n.lhs().id()];
        if (n.rhs()) ++parents[n.rhs().id()];
    }

    std::unordered_map<const Node*, std::size_t> labels;
    std::string out;
    // explicit stack of pending writes: either a node or a literal string
    struct Item {
        Expr node;
        const char* text = nullptr;
    };
    std::vector<Item> stack{{root, nullptr}};
    while (!stack.empty()) {
        Item item = stack.back();
        stack.pop_back();
        if (item.text) {
            out += item.text;
            continue;
        }
        const Expr& e = item.node;
        if (auto it = labels.find(e.id()); it != labels.end()) {
            out += '@';
            out += std::to_string(it->second);
            continue;
        }
        if (auto it = parents.find(e.id()); it != parents.end() && it->second > 1) {
            const std::size_t k = labels.size();
            labels.emplace(e.id(), k);
            out += '#';
            out += std::to_string(k);
            out += '=';
        }
        if (e.is_rational()) {
            out += '(';
            out += e.value().get_str();
            out += ')';
            continue;
        }
        out += op_name(e.op());
        out += '(';
        stack.push_back({Expr(), ")"});
        if (e.rhs()) {
            stack.push_back({e.rhs(), nullptr});
            stack.push_back({Expr(), ","});
        }
        stack.push_back({e.lhs(), nullptr});
    }
    return out;
}

namespace {

class Parser {
   public:
    Parser(std::string_view text, ExprBuilder& builder) : text_(text), builder_(builder) {}

    Expr parse_all() {
        Expr e = expr(0);
        skip_space();
        if (pos_ != text_.size()) fail("trailing characters");
        return e;
    }

   private:
    static constexpr std::size_t kMaxDepth = 100000;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        if (!at(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::size_t number() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a label number");
        return std::stoul(std::string(text_.substr(start, pos_ - start)));
    }

    Expr expr(std::size_t depth) {
        if (depth > kMaxDepth) fail("nesting too deep");
        skip_space();
        if (at('@')) {
            ++pos_;
            const std::size_t start = pos_;
            const std::size_t k = number();
            if (k >= labels_.size()) {
                pos_ = start;
                fail("reference to undefined label @" + std::to_string(k));
            }
            return labels_[k];
        }
        if (at('#')) {
            ++pos_;
            const std::size_t start = pos_;
            const std::size_t k = number();
            if (k != labels_.size()) {
                pos_ = start;
                fail("labels must be numbered consecutively from 0");
            }
            expect('=');
            labels_.emplace_back();
            Expr e = body(depth);
            labels_[k] = e;
            return e;
        }
        return body(depth);
    }

    Expr body(std::size_t depth) {
        skip_space();
        if (at('(')) {
            ++pos_;
            skip_space();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '/' ||
                                           std::isdigit(static_cast<unsigned char>(text_[pos_]))))
                ++pos_;
            const std::string lit(text_.substr(start, pos_ - start));
            mpq_class q;
            if (lit.empty() || q.set_str(lit, 10) != 0) {
                pos_ = start;
                fail("malformed rational");
            }
            if (q.get_den() == 0) {
                pos_ = start;
                fail("zero denominator");
            }
            q.canonicalize();
            expect(')');
            return builder_.rational(q);
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        Op op;
        if (name == "add") op = Op::Add;
        else if (name == "sub") op = Op::Sub;
        else if (name == "mul") op = Op::Mul;
        else if (name == "div") op = Op::Div;
        else if (name == "sqrt") op = Op::Sqrt;
        else {
            pos_ = start;
            fail(name.empty() ? "expected an expression" : "unknown operation '" + std::string(name) + "'");
        }
        expect('(');
        Expr lhs = expr(depth + 1);
        Expr rhs;
        if (op != Op::Sqrt) {
            expect(',');
            rhs = expr(depth + 1);
        }
        expect(')');
        return builder_.make(op, lhs, rhs);
    }

    std::string_view text_;
    ExprBuilder& builder_;
    std::size_t pos_ = 0;
    std::vector<Expr> labels_;
};

}  // namespace

Expr parse(std::string_view text, ExprBuilder& builder) { return Parser(text, builder).parse_all(); }

Expr parse(std::string_view text) {
    ExprBuilder builder;
    return parse(text, builder);
}

}  // namespace cyclotomy::radix
