#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "kha/cli.hpp"

namespace {

const std::filesystem::path kGolden = KHA_TEST_DATA;

struct Result {
    int code;
    std::string out;
    std::string err;
};

std::vector<std::string> split_args(const std::string& s) {
    std::istringstream in(s);
    return {std::istream_iterator<std::string>(in), {}};
}

Result run(const std::string& args, const std::string& input = "") {
    std::filesystem::current_path(kGolden);
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = kha::cli::run(split_args(args), in, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(' ');
    auto b = s.find_last_not_of(' ');
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

} // namespace

TEST_CASE("golden CLI outputs are byte-identical across runs") {
    std::ifstream manifest(kGolden / "cli" / "manifest.txt");
    std::string line;
    int checked = 0;
    while (std::getline(manifest, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto bar = line.find('|');
        std::string name = trim(line.substr(0, bar)), args = trim(line.substr(bar + 1));
        INFO("command: " << name);
        std::string expected = slurp(kGolden / "cli" / (name + ".out"));
        for (int rep = 0; rep < 3; ++rep) {
            Result r = run(args);
            CHECK(r.code == 0);
            CHECK(r.out == expected);
        }
        ++checked;
    }
    CHECK(checked >= 20);
}

TEST_CASE("stdin and output files") {
    std::string jordan = slurp(kGolden / "jordan.json");
    Result r = run("triple --quiver -", jordan);
    CHECK(r.code == 0);
    CHECK(r.out == slurp(kGolden / "cli" / "triple_jordan.out"));

    auto tmp = std::filesystem::temp_directory_path() / "kha_cli_out.json";
    Result w = run("zeta --quiver jordan.json --src 0 --tgt 0 --out " + tmp.string());
    CHECK(w.code == 0);
    CHECK(w.out.empty());
    CHECK(slurp(tmp) == slurp(kGolden / "cli" / "zeta_jordan.out"));
    std::filesystem::remove(tmp);
}

TEST_CASE("domain errors exit with 1") {
    struct Case {
        const char* args;
        const char* message;
    };
    for (const Case& c : std::vector<Case>{
             {"triple --quiver bad/potential_cycle.json", "potential term 1"},
             {"triple --quiver bad/torus_edge.json", "unknown edge id 'nope'"},
             {"double --quiver bad/edge_target.json", "undeclared target"},
             {"double --quiver bad/syntax.json", "invalid JSON"},
             {"double --quiver bad/unknown_key.json", "unknown key"},
             {"double --quiver missing.json", "cannot read 'missing.json'"},
             {"mul --quiver jordan.json --lhs bad/element_coeff.json --rhs jordan_one.json", "decimal integer"},
             {"mul --quiver jordan.json --lhs bad/element_asym.json --rhs jordan_one.json", "not symmetric"},
             {"mul --quiver jordan.json --lhs bad/element_qlen.json --rhs jordan_one.json", "q count"},
             {"mul --quiver jordan.json --lhs a2_e1.json --rhs jordan_one.json", "unknown vertex"},
             {"euler --weights bad/weights_len.json", "weight length"},
             {"zerodiv-cert --weights weights.json --lambda [0]", "fixed-locus hypothesis fails"},
             {"zerodiv-cert --weights weights.json --lambda [\"a\"]", "expected an integer"},
             {"zeta --quiver jordan.json --src 0 --tgt 7", "unknown vertex id '7'"},
             {"strata --quiver a2_plain.json --theta [1,2] --dim [0,0]", "nonzero dimension vector"},
             {"strata --quiver a2_plain.json --theta [1,2] --dim [1]", "one entry per vertex"},
             {"verify-generation --quiver a2.json --theta [2,1] --dim [1,1] --window -1:1", "increasing stability"},
             {"verify-generation --quiver jordan.json --theta [1] --dim [1] --window -1:1", "type-A"},
             {"jacobi --quiver jordan.json", "no potential"},
             {"relation-search --quiver a2.json", "Jordan quiver"},
             {"mul --quiver tripled_jordan.json --lhs jordan_one_r2.json --rhs jordan_one_r2.json --cut zz", "unknown edge"},
             {"frame --quiver a2_plain.json --framing [1]", "framing vector length"},
         }) {
        INFO("args: " << c.args);
        Result r = run(c.args);
        CHECK(r.code == 1);
        CHECK(r.out.empty());
        CHECK(r.err.find(c.message) != std::string::npos);
    }
}

TEST_CASE("usage errors exit with 2") {
    for (const char* args : {"", "bogus", "mul --nope 1", "verify-generation --quiver a2.json --theta [1,2] --dim [1,1]",
                             "verify-generation --quiver a2.json --theta [1,2] --dim [1,1] --window 1",
                             "verify-generation --quiver a2.json --theta [1,2] --dim [1,1] --window 2:1",
                             "verify-generation --quiver a2.json --theta [1,2] --dim [1,1] --window -1:1 --gen-degree -1",
                             "mul --quiver jordan.json --lhs jordan_one.json", "zeta --quiver jordan.json --src 0",
                             "strata --quiver a2.json", "relation-search --r-max x", "double"}) {
        INFO("args: " << args);
        Result r = run(args);
        CHECK(r.code == 2);
        CHECK(r.out.empty());
        CHECK(r.err.rfind("usage error", 0) == 0);
    }
}

TEST_CASE("help exits with 0") {
    Result r = run("--help");
    CHECK(r.code == 0);
    CHECK(r.out.find("verify-generation") != std::string::npos);
    CHECK(run("mul --help").code == 0);
}
