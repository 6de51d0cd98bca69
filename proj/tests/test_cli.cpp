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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cyclotomy/cli.hpp"
#include "doctest.h"
#include "json.hpp"

using cyclotomy::cli::run;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("cyclotomy-test-" + std::to_string(::getpid()) + "-" + name);
}

}  // namespace

TEST_CASE("check") {
    const auto ok = call({"check", "257"});
    CHECK(ok.code == 0);
    CHECK(ok.out == "257: constructible (2^0 * 257)\n");
    const auto no = call({"check", "7"});
    CHECK(no.code == 1);
    CHECK(no.out.find("7 is not a Fermat prime") != std::string::npos);
    CHECK(call({"check", "0"}).code == 2);
    CHECK(call({"check", "-3"}).code == 2);
    CHECK(call({"check", "12x"}).code == 2);
    CHECK(call({"check"}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({}).code == 2);

    const auto j = nlohmann::json::parse(call({"--json", "check", "18"}).out);
    CHECK(j["schema"] == "cyclotomy.check/1");
    CHECK(j["obstruction"]["prime"] == 3);
}

TEST_CASE("list") {
    const auto l = call({"list", "20"});
    CHECK(l.code == 0);
    CHECK(l.out == "12 constructible n with 2 <= n <= 20\n2 3 4 5 6 8 10 12 15 16\n17 20\n");
    CHECK(call({"list", "2"}).out == "1 constructible n with 2 <= n <= 2\n2\n");
    const auto j = nlohmann::json::parse(call({"list", "300", "--json"}).out);
    CHECK(j["count"] == 38);
    CHECK(j["values"].back() == 272);
    CHECK(call({"list", "1000001"}).code == 2);
    CHECK(call({"list", "0"}).code == 2);
}

TEST_CASE("cos") {
    const auto c5 = call({"cos", "5"});
    CHECK(c5.code == 0);
    CHECK(c5.out.find("expression: div(add((-1),sqrt((5))),(4))\n") != std::string::npos);
    CHECK(c5.out.find("result: pass\n") != std::string::npos);
    const auto j = nlohmann::json::parse(call({"--json", "cos", "5"}).out);
    // deviation below 1e-40
    const std::string dev = j["deviation"];
    CHECK(std::stoi(dev.substr(dev.find('e') + 1)) < -40);
    CHECK(j["enclosure"].size() == 2);
    // text and JSON agree
    CHECK(c5.out.find("reference: " + j["reference"].get<std::string>() + "\n") != std::string::npos);
    CHECK(c5.out.find("deviation: " + dev + "\n") != std::string::npos);

    CHECK(call({"cos", "3"}).out.find("expression: (-1/2)\n") != std::string::npos);
    const auto c7 = call({"cos", "7"});
    CHECK(c7.code == 1);
    CHECK(c7.err.find("7 is not a Fermat prime") != std::string::npos);
    CHECK(call({"cos", "5", "--digits", "9"}).code == 2);
    CHECK(call({"cos", "5", "--digits", "10001"}).code == 2);
    CHECK(call({"cos", "2"}).code == 2);
}

TEST_CASE("digits from the environment") {
    ::setenv("CYCLOTOMY_DIGITS", "20", 1);
    const auto j = nlohmann::json::parse(call({"--json", "cos", "17"}).out);
    CHECK(j["digits"] == 20);
    CHECK(j["reference"].get<std::string>().size() == 22);
    const auto flag = nlohmann::json::parse(call({"--json", "cos", "17", "--digits", "30"}).out);
    CHECK(flag["digits"] == 30);
    ::setenv("CYCLOTOMY_DIGITS", "3", 1);
    CHECK(call({"cos", "17"}).code == 2);
    ::setenv("CYCLOTOMY_DIGITS", "fifty", 1);
    CHECK(call({"cos", "17"}).code == 2);
    ::unsetenv("CYCLOTOMY_DIGITS");
}

TEST_CASE("cyclotomic and tower") {
    CHECK(call({"cyclotomic", "12"}).out == "Phi_12 = x^4 - x^2 + 1\ndegree: 4\n");
    const auto j = nlohmann::json::parse(call({"--json", "cyclotomic", "9"}).out);
    CHECK(j["coefficients"] == nlohmann::json::array({1, 0, 0, 1, 0, 0, 1}));

    const auto t = call({"tower", "17"});
    CHECK(t.code == 0);
    CHECK(t.out.find("= x^2 + x - 4\n") != std::string::npos);
    CHECK(t.out.find("certificate: valid\n") != std::string::npos);
    CHECK(call({"tower", "5"}).out.find("= x^2 + x - 1\n") != std::string::npos);
    CHECK(call({"tower", "7"}).code == 1);
    CHECK(call({"tower", "65537"}).code == 1);
    const auto tj = nlohmann::json::parse(call({"--json", "tower", "5"}).out);
    CHECK(tj["certificate"]["valid"] == true);
}

TEST_CASE("construct, verify and trisect-demo") {
    const auto program = scratch("p17.txt"), svg = scratch("p17.svg");
    const auto c = call({"construct", "17", "--digits", "50", "-o", program.string(), "--svg", svg.string()});
    CHECK(c.code == 0);
    CHECK(c.out.find("result: pass\n") != std::string::npos);
    CHECK(std::filesystem::file_size(svg) > 1000);

    const auto v = call({"verify", program.string(), "17"});
    CHECK(v.code == 0);
    CHECK(v.out.find("result: pass\n") != std::string::npos);
    CHECK(call({"verify", program.string(), "16"}).code == 1);
    CHECK(call({"verify", (program.string() + ".missing"), "17"}).code == 2);

    {
        std::ofstream broken(program);
        broken << "euclid/1\np0 = origin\n";
    }
    CHECK(call({"verify", program.string(), "17"}).code == 1);
    std::filesystem::remove(program);
    std::filesystem::remove(svg);

    const auto stdout_program = call({"construct", "6"});
    CHECK(stdout_program.code == 0);
    CHECK(stdout_program.out.rfind("euclid/1\n", 0) == 0);
    CHECK(stdout_program.err.find("result: pass") != std::string::npos);
    CHECK(call({"construct", "18"}).code == 1);
    const auto refusal = nlohmann::json::parse(call({"--json", "construct", "18"}).out);
    CHECK(refusal["verdict"]["obstruction"]["prime"] == 3);

    const auto t = call({"trisect-demo"});
    CHECK(t.code == 0);
    CHECK(t.out.find("trisection impossible in general") != std::string::npos);
    const auto tj = nlohmann::json::parse(call({"trisect-demo", "--json"}).out);
    CHECK(tj["angles"].size() == 2);
    CHECK(tj["angles"][0]["verdict"]["constructible"] == true);
    CHECK(tj["angles"][1]["verdict"]["constructible"] == false);
}

TEST_CASE("output is deterministic") {
    for (const auto& args : std::vector<std::vector<std::string>>{{"cos", "17"}, {"construct", "17"}, {"list", "300"}}) {
        const auto a = call(args), b = call(args);
        CHECK(a.out == b.out);
        CHECK(a.err == b.err);
    }
}
