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

#include "cyclotomy/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "cyclotomy/euclid.hpp"
#include "cyclotomy/gate.hpp"
#include "cyclotomy/numt.hpp"
#include "cyclotomy/periods.hpp"
#include "cyclotomy/polyq.hpp"
#include "cyclotomy/radix.hpp"
#include "cyclotomy/real.hpp"
#include "json.hpp"

namespace cyclotomy::cli {

namespace {

using nlohmann::json;

constexpr unsigned long kMaxBound = 1000000;

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class Failure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Config {
    bool json = false;
    bool verbose = false;
    bool stretch = false;
    long digits = 50;
    std::string n;
    unsigned long bound = 0;
    std::string file;
    std::string svg;
    std::string output;
};

mpz_class parse_positive(const std::string& text) {
    if (text.empty() || text.size() > 4000 || !std::all_of(text.begin(), text.end(), [](unsigned char c) {
            return std::isdigit(c) != 0;
        }))
        throw UsageError("expected a positive integer, got '" + text + "'");
    mpz_class n(text, 10);
    if (n < 1) throw UsageError("expected a positive integer, got '" + text + "'");
    return n;
}

unsigned long parse_bounded(const std::string& text, unsigned long lo) {
    const mpz_class n = parse_positive(text);
    if (n < lo || n > kMaxBound)
        throw UsageError("n must lie in [" + std::to_string(lo) + ", " + std::to_string(kMaxBound) + "], got " + text);
    return n.get_ui();
}

json with_schema(const char* schema, json body) {
    json j{{"schema", schema}};
    j.update(body);
    return j;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------- check, list

int cmd_check(const Config& c, std::ostream& out) {
    const auto v = gate::classify(parse_positive(c.n));
    if (c.json)
        emit(out, with_schema("cyclotomy.check/1", gate::to_json(v)));
    else
        out << gate::describe(v) << '\n';
    return v.constructible ? kOk : kFailed;
}

int cmd_list(const Config& c, std::ostream& out) {
    const auto values = gate::enumerate_constructible(c.bound);
    if (c.json) {
        emit(out, with_schema("cyclotomy.list/1", {{"bound", c.bound}, {"count", values.size()}, {"values", values}}));
        return kOk;
    }
    out << values.size() << " constructible n with 2 <= n <= " << c.bound << '\n';
    for (std::size_t i = 0; i < values.size(); ++i)
        out << values[i] << (i + 1 == values.size() || i % 10 == 9 ? '\n' : ' ');
    return kOk;
}

// ---------------------------------------------------------------- cyclotomic

int cmd_cyclotomic(const Config& c, std::ostream& out) {
    const unsigned long n = parse_bounded(c.n, 1);
    const auto phi = polyq::cyclotomic(n);
    if (c.json) {
        json coeffs = json::array();
        for (const auto& a : phi.coefficients()) coeffs.push_back(gate::integer_json(a));
        emit(out, with_schema("cyclotomy.cyclotomic/1",
                              {{"n", n}, {"degree", phi.degree()}, {"coefficients", coeffs}, {"text", phi.to_string()}}));
    } else {
        out << "Phi_" << n << " = " << phi.to_string() << '\n';
        out << "degree: " << phi.degree() << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------- cos

struct CosReport {
    std::string expression;
    radix::DepthAndSize shape;
    std::string lower, upper, reference, deviation;
    bool pass = false;
};

CosReport cos_report(const mpz_class& n, long digits, bool verbose, std::ostream& err) {
    if (verbose) err << "deriving radical expression for cos(2pi/" << n.get_str() << ")\n";
    const radix::Expr e = periods::cos_expression(n);
    if (verbose) err << "evaluating at " << digits << " digits\n";
    const radix::Enclosure enc = radix::evaluate(e, digits);
    const long scale = enc.scale + 10;
    const numeric::Real ref = numeric::cos_2pi(mpq_class(1, n), numeric::bits_for_digits(scale + 20));
    const mpz_class unit = radix::pow10(static_cast<unsigned long>(scale));
    const mpq_class ref_lo(ref.floor_scaled(scale), unit), ref_hi(ref.ceil_scaled(scale), unit);
    const mpq_class dev = std::max(enc.upper() - ref_lo, ref_hi - enc.lower());

    CosReport r;
    r.expression = radix::canonical_serialize(e);
    r.shape = radix::depth_and_size(e);
    r.lower = numeric::fixed_point(enc.lower(), digits, false);
    r.upper = numeric::fixed_point(enc.upper(), digits, true);
    r.reference = ref.to_fixed(static_cast<int>(digits));
    r.deviation = numeric::scientific_ceiling(dev);
    r.pass = dev <= mpq_class(1, radix::pow10(static_cast<unsigned long>(digits / 2)));
    return r;
}

int cmd_cos(const Config& c, std::ostream& out, std::ostream& err) {
    const mpz_class n = parse_bounded(c.n, 3);
    const CosReport r = cos_report(n, c.digits, c.verbose, err);
    if (c.json) {
        emit(out, with_schema("cyclotomy.cos/1", {{"n", n.get_ui()},
                                                  {"digits", c.digits},
                                                  {"expression", r.expression},
                                                  {"sqrt_depth", r.shape.sqrt_depth},
                                                  {"nodes", r.shape.node_count},
                                                  {"enclosure", {r.lower, r.upper}},
                                                  {"reference", r.reference},
                                                  {"deviation", r.deviation},
                                                  {"pass", r.pass}}));
    } else {
        out << "n: " << n.get_str() << '\n';
        out << "expression: " << r.expression << '\n';
        out << "sqrt depth: " << r.shape.sqrt_depth << '\n';
        out << "nodes: " << r.shape.node_count << '\n';
        out << "enclosure: [" << r.lower << ", " << r.upper << "]\n";
        out << "reference: " << r.reference << '\n';
        out << "deviation: " << r.deviation << '\n';
        out << "result: " << (r.pass ? "pass" : "fail") << '\n';
    }
    return r.pass ? kOk : kFailed;
}

// ---------------------------------------------------------------- tower

std::string quadratic_text(const periods::SiblingQuadratic& q) {
    const unsigned below = q.level - 1;
    auto eta = [&](unsigned long m) { return "eta(" + std::to_string(below) + "," + std::to_string(m) + ")"; };
    std::string s = "x^2 - " + eta(q.pair) + " x";
    bool any = false;
    for (unsigned long m = 0; m < q.product.size(); ++m) {
        const mpz_class& a = q.product[m];
        if (a == 0) continue;
        s += a < 0 ? " - " : " + ";
        const mpz_class mag = abs(a);
        if (mag != 1) s += mag.get_str() + " ";
        s += eta(m);
        any = true;
    }
    if (!any) s += " + 0";
    return s;
}

// eta(0, 0) = -1 turns the first quadratic into one over the rationals
std::string rational_quadratic(const periods::SiblingQuadratic& q) {
    const mpz_class qc = -q.product.at(0);
    std::string s = "x^2 + x";
    if (qc != 0) s += (qc < 0 ? " - " : " + ") + mpz_class(abs(qc)).get_str();
    return s;
}

int cmd_tower(const Config& c, std::ostream& out, std::ostream& err) {
    const mpz_class p = parse_positive(c.n);
    if (!numt::is_fermat_prime(p)) {
        err << "error: " << p.get_str() << " is not a Fermat prime\n";
        return kFailed;
    }
    if (p == 65537 && !c.stretch) {
        err << "error: the 65537 tower is only built numerically; pass --stretch\n";
        return kFailed;
    }
    if (c.verbose) err << "building period tower for p = " << p.get_str() << '\n';
    const periods::PeriodTower tower = periods::build_tower(p, {c.stretch && p == 65537, 50});
    std::optional<periods::TowerCertificate> cert;
    if (tower.exact()) {
        if (c.verbose) err << "solving tower\n";
        radix::ExprBuilder builder;
        cert = periods::solve_tower(tower, 50, builder).certificate;
    }
    if (c.json) {
        json j = periods::to_json(tower);
        j["certificate"] = cert ? periods::to_json(*cert) : json();
        emit(out, with_schema("cyclotomy.tower/1", j));
        return !cert || cert->valid() ? kOk : kFailed;
    }
    out << "p: " << tower.p() << '\n';
    out << "generator: " << tower.generator() << '\n';
    out << "depth: " << tower.depth() << '\n';
    out << "exact: " << (tower.exact() ? "yes" : "no") << '\n';
    for (unsigned k = 1; k <= tower.depth(); ++k) {
        const auto q = tower.quadratic(k, 0);
        out << "level " << k << ": " << quadratic_text(q);
        if (k == 1) out << " = " << rational_quadratic(q);
        out << '\n';
    }
    if (cert) {
        out << "certificate: " << (cert->valid() ? "valid" : "INVALID") << '\n';
        for (const auto& s : cert->chain) {
            out << "  step " << s.level << ": ";
            out << (s.generator ? "sqrt(" + radix::canonical_serialize(s.radicand) + ")"
                                : "i*sqrt(-(" + radix::canonical_serialize(s.radicand) + "))");
            out << " galois " << (s.galois_ok ? "ok" : "FAIL") << ", numeric " << (s.numeric_ok ? "ok" : "FAIL")
                << '\n';
        }
    }
    return !cert || cert->valid() ? kOk : kFailed;
}

// ---------------------------------------------------------------- construct, verify

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Failure("cannot write " + path);
    f << text;
    if (!f) throw Failure("cannot write " + path);
}

json report_json(const euclid::NgonReport& r) {
    return {{"outputs", r.outputs},
            {"bijective", r.bijective},
            {"max_deviation", r.deviation_string()},
            {"pass", r.pass}};
}

void report_text(std::ostream& os, const euclid::NgonReport& r) {
    os << "outputs: " << r.outputs << (r.bijective ? ", one per vertex" : ", NOT one per vertex") << '\n';
    os << "max deviation: " << r.deviation_string() << '\n';
    os << "result: " << (r.pass ? "pass" : "fail") << '\n';
}

void stats_text(std::ostream& os, const euclid::Program& prog, const euclid::ProgramStats& st) {
    os << "instructions: " << prog.instructions.size() << " (points " << st.points << ", lines " << st.lines
       << ", circles " << st.circles << ")\n";
}

json stats_json(const euclid::Program& prog, const euclid::ProgramStats& st) {
    return {{"instructions", prog.instructions.size()},
            {"points", st.points},
            {"lines", st.lines},
            {"circles", st.circles}};
}

int cmd_construct(const Config& c, std::ostream& out, std::ostream& err) {
    const unsigned long n = parse_bounded(c.n, 3);
    if (c.verbose) err << "synthesizing " << n << "-gon\n";
    const euclid::Program prog = euclid::construct_ngon(n, c.digits);
    const euclid::ProgramStats st = euclid::validate(prog);
    const std::string text = euclid::print(prog);
    if (c.verbose) err << "verifying at " << c.digits << " digits\n";
    const euclid::NgonReport r = euclid::verify_ngon(prog, n, c.digits);
    if (!c.output.empty()) write_file(c.output, text);
    if (!c.svg.empty()) write_file(c.svg, euclid::to_svg(prog));

    if (c.json) {
        json j{{"n", n}, {"digits", c.digits}};
        j.update(stats_json(prog, st));
        j.update(report_json(r));
        j["program"] = c.output.empty() ? json(text) : json();
        j["output"] = c.output.empty() ? json() : json(c.output);
        j["svg"] = c.svg.empty() ? json() : json(c.svg);
        emit(out, with_schema("cyclotomy.construct/1", j));
    } else {
        // the program itself goes to stdout unless written to a file
        std::ostream& report = c.output.empty() ? err : out;
        if (c.output.empty()) out << text;
        report << "n: " << n << '\n';
        stats_text(report, prog, st);
        report_text(report, r);
    }
    return r.pass ? kOk : kFailed;
}

int cmd_verify(const Config& c, std::ostream& out, std::ostream& err) {
    const unsigned long n = parse_bounded(c.n, 3);
    std::ifstream f(c.file, std::ios::binary);
    if (!f) throw UsageError("cannot read " + c.file);
    std::ostringstream text;
    text << f.rdbuf();
    euclid::Program prog;
    euclid::ProgramStats st;
    try {
        prog = euclid::parse_program(text.str());
        st = euclid::validate(prog);
    } catch (const std::exception& e) {
        throw Failure(c.file + ": " + e.what());
    }
    if (prog.outputs.size() != n)
        throw Failure(c.file + ": " + std::to_string(prog.outputs.size()) + " outputs, expected " + std::to_string(n));
    if (c.verbose) err << "verifying at " << c.digits << " digits\n";
    const euclid::NgonReport r = euclid::verify_ngon(prog, n, c.digits);
    if (c.json) {
        json j{{"n", n}, {"digits", c.digits}, {"file", c.file}};
        j.update(stats_json(prog, st));
        j.update(report_json(r));
        emit(out, with_schema("cyclotomy.verify/1", j));
    } else {
        out << "n: " << n << '\n';
        stats_text(out, prog, st);
        report_text(out, r);
    }
    return r.pass ? kOk : kFailed;
}

// ---------------------------------------------------------------- trisect-demo

int cmd_trisect(const Config& c, std::ostream& out) {
    const auto hexagon = gate::classify(6);
    const auto eighteen = gate::classify(18);
    const std::string conclusion = "trisection impossible in general";
    if (c.json) {
        emit(out, with_schema("cyclotomy.trisect/1",
                              {{"angles",
                                {{{"degrees", 60}, {"verdict", gate::to_json(hexagon)}},
                                 {{"degrees", 20}, {"verdict", gate::to_json(eighteen)}}}},
                               {"conclusion", conclusion}}));
        return kOk;
    }
    out << "60 degrees (n = 6): " << gate::describe(hexagon) << '\n';
    out << "20 degrees (n = 18): " << gate::describe(eighteen) << '\n';
    out << "a constructible 60 degree angle has a non-constructible third: " << conclusion << '\n';
    return kOk;
}

int refuse(const Config& c, const gate::NotConstructible& e, std::ostream& out, std::ostream& err) {
    if (c.json) emit(out, with_schema("cyclotomy.refusal/1", {{"error", e.what()}, {"verdict", gate::to_json(e.verdict())}}));
    err << "error: " << e.what() << '\n';
    return kFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Regular polygons, cyclotomy and straightedge-and-compass constructions", "cyclotomy"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", c.json, "Machine-readable JSON output");
    app.add_flag("-v,--verbose", c.verbose, "Progress messages on stderr");
    if (const char* env = std::getenv("CYCLOTOMY_DIGITS")) {
        long v = 0;
        const std::string_view text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            err << "error: CYCLOTOMY_DIGITS must be an integer, got '" << env << "'\n";
            return kUsage;
        }
        c.digits = v;
    }
    app.add_option("--digits", c.digits, "Decimal digits of precision in [10, 10000] (default 50, or CYCLOTOMY_DIGITS)");

    auto* check = app.add_subcommand("check", "Is the regular n-gon constructible?");
    check->add_option("n", c.n)->required();
    auto* list = app.add_subcommand("list", "All constructible n up to a bound");
    list->add_option("bound", c.bound)->required()->check(CLI::Range(1UL, kMaxBound));
    auto* cyclo = app.add_subcommand("cyclotomic", "The cyclotomic polynomial Phi_n");
    cyclo->add_option("n", c.n)->required();
    auto* cos = app.add_subcommand("cos", "cos(2pi/n) in square roots, checked numerically");
    cos->add_option("n", c.n)->required();
    auto* tower = app.add_subcommand("tower", "Gaussian period tower and certificate for a Fermat prime");
    tower->add_option("p", c.n)->required();
    tower->add_flag("--stretch", c.stretch, "Allow the numeric-only tower for 65537");
    auto* construct = app.add_subcommand("construct", "Synthesize and verify a construction of the n-gon");
    construct->add_option("n", c.n)->required();
    construct->add_option("-o,--output", c.output, "Write the program to this file");
    construct->add_option("--svg", c.svg, "Write an SVG drawing to this file");
    auto* verify = app.add_subcommand("verify", "Re-check a construction program against the n-gon");
    verify->add_option("file", c.file)->required();
    verify->add_option("n", c.n)->required();
    auto* trisect = app.add_subcommand("trisect-demo", "60 versus 20 degrees");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (c.digits < 10 || c.digits > 10000)
            throw UsageError("digits must lie in [10, 10000], got " + std::to_string(c.digits));
        if (*check) return cmd_check(c, out);
        if (*list) return cmd_list(c, out);
        if (*cyclo) return cmd_cyclotomic(c, out);
        if (*cos) return cmd_cos(c, out, err);
        if (*tower) return cmd_tower(c, out, err);
        if (*construct) return cmd_construct(c, out, err);
        if (*verify) return cmd_verify(c, out, err);
        if (*trisect) return cmd_trisect(c, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const gate::NotConstructible& e) {
        return refuse(c, e, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kUsage;
}

}  // namespace cyclotomy::cli
