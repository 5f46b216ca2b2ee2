#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iterator>

#include "kha/error.hpp"
#include "kha/io.hpp"
#include "golden_cases.hpp"
#include "support.hpp"

using namespace kha;
using io::json;

namespace {

const std::filesystem::path kGolden = KHA_TEST_DATA;

std::string slurp(const std::string& name) {
    std::ifstream f(kGolden / name, std::ios::binary);
    REQUIRE_MESSAGE(f.good(), "missing golden file " << name);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

json load(const std::string& name) { return io::parse_text(slurp(name)); }

void check_round_trip(const std::string& name, const std::function<json(const json&)>& cycle) {
    INFO("golden file: " << name);
    std::string text = slurp(name);
    CHECK(io::dump(cycle(io::parse_text(text))) == text);
}

std::string schema_error(const std::function<void()>& f) {
    try {
        f();
    } catch (const SchemaError& e) {
        return e.what();
    }
    return "no schema error";
}

} // namespace

TEST_CASE("golden round trips for workspaces and constructions") {
    for (const char* name : {"jordan.json", "a2.json", "a2_plain.json", "tripled_jordan.json", "workspace.json",
                             "cli/triple_jordan.out", "cli/triple_a2.out", "cli/double_a2.out", "cli/frame_a2.out"})
        check_round_trip(name, [](const json& j) { return io::to_json(io::workspace_from_json(j)); });
}

TEST_CASE("golden round trips for elements") {
    Quiver jordan = jordan_quiver("x");
    Quiver a2 = type_a_quiver(2);
    auto with = [](const Quiver& q) {
        return [q](const json& j) { return io::to_json(io::laurent_from_json(j, "", &q.vertices())); };
    };
    for (const char* name : {"jordan_one.json", "jordan_one_r2.json", "cli/mul_jordan.out", "cli/mul_jordan_torus.out",
                             "cli/mul_twisted.out"})
        check_round_trip(name, with(jordan));
    for (const char* name : {"a2_e1.json", "a2_e2.json", "cli/mul_a2_12.out", "cli/mul_a2_21.out"})
        check_round_trip(name, with(a2));
    for (const char* name : {"cli/euler.out", "cli/euler_z.out"})
        check_round_trip(name, [](const json& j) { return io::to_json(io::laurent_from_json(j)); });
}

TEST_CASE("golden round trips for the remaining domain types") {
    ShuffleAlgebra jordan = io::workspace_from_json(load("jordan.json")).algebra();
    for (const char* name : {"jordan_framed.json", "cli/act_jordan.out"})
        check_round_trip(name, [&](const json& j) { return io::to_json(io::framed_from_json(jordan, j)); });
    for (const char* name : {"cli/zeta_jordan.out", "cli/zeta_a2.out"})
        check_round_trip(name, [](const json& j) { return io::to_json(io::rational_from_json(j)); });
    for (const char* name : {"weights.json", "weights_z.json"})
        check_round_trip(name, [](const json& j) { return io::to_json(io::weights_from_json(j)); });
    check_round_trip("theta.json", [](const json& j) { return io::to_json(io::theta_from_json(j)); });
    check_round_trip("dim11.json", [](const json& j) { return io::to_json(io::dim_from_json(j)); });
    Quiver jq = jordan_quiver("x");
    check_round_trip("torus_jordan.json", [&](const json& j) { return io::to_json(io::torus_from_json(jq, j)); });

    StabilityCondition up({Rational(1), Rational(2)}), down({Rational(2), Rational(1)});
    check_round_trip("cli/strata_a2.out", [&](const json& j) { return io::to_json(io::strata_from_json(up, j)); });
    check_round_trip("cli/strata_a3.out", [&](const json& j) { return io::to_json(io::strata_from_json(down, j)); });
    for (const char* name : {"cli/generation_a2.out", "cli/generation_a2_low.out"})
        check_round_trip(name, [](const json& j) { return io::to_json(io::report_from_json(j)); });

    Quiver tripled = io::workspace_from_json(load("cli/triple_jordan.out")).quiver;
    check_round_trip("cli/jacobi_jordan.out", [&](const json& j) {
        json out = j;
        for (auto& r : out["relations"]) r["derivative"] = io::to_json(io::path_poly_from_json(tripled, r["derivative"]));
        return out;
    });
}

TEST_CASE("random elements survive serialization") {
    testing::Rng rng(41);
    ShuffleAlgebra a = testing::a2_algebra();
    for (int trial = 0; trial < 30; ++trial) {
        DimVector d({testing::uniform(rng, 0, 2), testing::uniform(rng, 0, 2)});
        LaurentPoly p = testing::random_symmetric(rng, a.space(d));
        json j = io::to_json(p);
        LaurentPoly back = io::laurent_from_json(io::parse_text(io::dump(j)), "", &a.quiver().vertices());
        CHECK(back == p);
        CHECK(io::dump(io::to_json(back)) == io::dump(j));
    }
    StabilityCondition theta({Rational(3, 2), Rational(-1)});
    CHECK(io::theta_from_json(io::to_json(theta)) == theta);
    CHECK(io::to_json(theta) == json({"3/2", "-1"}));
}

TEST_CASE("schema errors carry paths") {
    CHECK(schema_error([] { io::workspace_from_json(load("bad/potential_cycle.json")); }) ==
          "/potential: potential term 1: unknown edge id 'y'");
    CHECK(schema_error([] { io::workspace_from_json(load("bad/torus_edge.json")); }) ==
          "/torus/weights/nope: unknown edge id 'nope'");
    CHECK(schema_error([] { io::workspace_from_json(load("bad/unknown_key.json")); }) == "/extra: unknown key");
    CHECK(schema_error([] { io::workspace_from_json(load("bad/edge_target.json")); }) ==
          "/: edge 'x' has undeclared target '9'");
    CHECK(schema_error([] { load("bad/syntax.json"); }).rfind("/: invalid JSON", 0) == 0);
    CHECK(schema_error([] { io::laurent_from_json(load("bad/element_coeff.json")); }) ==
          "/terms/0/coeff: expected a decimal integer string");
    CHECK(schema_error([] { io::laurent_from_json(load("bad/element_qlen.json")); }) ==
          "/terms/0/q: length differs from the q count");
    CHECK(schema_error([] { io::weights_from_json(load("bad/weights_len.json")); }) ==
          "/weights/0: weight length differs from the variable count");
    CHECK(schema_error([] { io::dim_from_json(json{1, -1}); }) == "/1: integer out of range");
    CHECK(schema_error([] { io::theta_from_json(json{"1/0"}); }) == "/0: zero denominator");
    CHECK(schema_error([] { io::theta_from_json(json{"x"}); }) == "/0: expected a rational such as \"3/2\"");
    CHECK(schema_error([] { io::laurent_from_json(json::parse(R"({"vars":{"q":0,"z":{"a":1}},"terms":[{"coeff":"1","q":[],"z":{}}]})")); }) ==
          "/terms/0/z/a: missing exponents");
    std::vector<std::string> order{"0"};
    CHECK(schema_error([] {
              std::vector<std::string> vs{"0"};
              io::laurent_from_json(json::parse(R"({"vars":{"q":0,"z":{"b":0}},"terms":[]})"), "", &vs);
          }) == "/vars/z/b: unknown vertex 'b'");
    // An asymmetric payload is a domain error of the element, not a schema error.
    ShuffleAlgebra jordan = jordan_algebra();
    CHECK_THROWS_WITH(jordan.element(io::laurent_from_json(load("bad/element_asym.json"), "", &order)),
                      "shuffle element payload is not symmetric");
}

TEST_CASE("workspace elements are validated against the algebra") {
    io::Workspace ws = io::workspace_from_json(load("workspace.json"));
    CHECK(ws.elements.size() == 2);
    CHECK(ws.algebra().element(ws.elements.at("sym")).dim() == DimVector({2}));
    json bad = load("workspace.json");
    bad["elements"]["sym"]["terms"][0]["coeff"] = "5";
    CHECK(schema_error([&] { io::workspace_from_json(bad); }) == "/elements/sym: shuffle element payload is not symmetric");
}

TEST_CASE("every golden document has a reader and round-trips") {
    auto table = testing::golden_table(kGolden);
    for (const auto& name : testing::golden_files(kGolden)) {
        INFO("golden file: " << name);
        REQUIRE(table.count(name) == 1);
        check_round_trip(name, table.at(name));
    }
}
