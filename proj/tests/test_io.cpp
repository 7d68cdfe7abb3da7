#include "fixtures.hpp"
#include "torbun/io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <string>

using namespace torbun;
using Catch::Matchers::ContainsSubstring;

namespace {

Document sample_doc() {
    Fan f = fixtures::p1_fan();
    GroupTag g{GroupKind::GeneralLinear, 1};
    std::map<std::string, AdmissibleCollection> named;
    named.emplace("trivial", trivial_collection(f, g));
    named.emplace("onetwo",
                  fixtures::gl1_collection(f, {{1, {Int(1)}}, {2, {Int(2)}}},
                                           {{{1, 2}, Rat(3)}, {{2, 1}, Rat(1, 3)}}));
    return make_document(f, g, named);
}

nlohmann::json base_json() { return nlohmann::json::parse(emit_document(sample_doc())); }

}  // namespace

TEST_CASE("io: documents round-trip bit-exactly", "[io]") {
    Document d = sample_doc();
    std::string text = emit_document(d);
    Document d2 = parse_document(text);
    REQUIRE(emit_document(d2) == text);

    AdmissibleCollection c1 = build_collection(d, "onetwo");
    AdmissibleCollection c2 = build_collection(d2, "onetwo");
    REQUIRE(collections_equal(c1, c2));
    REQUIRE(fans_equal(build_fan(d), fixtures::p1_fan()));
}

TEST_CASE("io: non-canonical input normalizes in one pass", "[io]") {
    std::string text = R"({
        "collections": {"c": {
            "p": {"1,1": [["2/4"]], "1,2": [["1"]], "2,1": [["1"]], "2,2": [["-3/3"]]},
            "rho": {"2": {"weights": [[0]], "A": [["1"]]},
                    "1": {"A": [["5/5"]], "weights": [[0]]}}}},
        "group": {"n": 1, "kind": "GL"},
        "schema_version": "1",
        "fan": {"cones": [[], [[1]], [[-1]]], "maximal": [1, 2], "rank": 1}
    })";
    Document d = parse_document(text);
    REQUIRE(d.collections.at("c").p.at({1, 1})(0, 0) == Rat(1, 2));
    REQUIRE(d.collections.at("c").p.at({2, 2})(0, 0) == Rat(-1));
    REQUIRE(d.collections.at("c").rho.at(1).a(0, 0) == Rat(1));

    std::string once = emit_document(d);
    REQUIRE(once != text);
    REQUIRE(emit_document(parse_document(once)) == once);
}

TEST_CASE("io: load_document reads files and reports missing ones", "[io]") {
    std::string path = "io_roundtrip_tmp.json";
    {
        std::ofstream out(path, std::ios::binary);
        out << emit_document(sample_doc());
    }
    Document d = load_document(path);
    REQUIRE(d.collections.count("onetwo") == 1);
    std::remove(path.c_str());

    REQUIRE_THROWS_AS(load_document("no_such_file.json"), ParseError);
}

TEST_CASE("io: group kinds round-trip", "[io]") {
    const std::pair<const char*, GroupKind> kinds[] = {
        {"GL", GroupKind::GeneralLinear},
        {"T", GroupKind::DiagonalTorus},
        {"B", GroupKind::UpperTriangular},
        {"U", GroupKind::Unipotent},
    };
    for (const auto& [name, kind] : kinds) {
        nlohmann::json j = base_json();
        j["group"]["kind"] = name;
        Document d = parse_document(j.dump());
        REQUIRE(d.group.kind == kind);
        REQUIRE(parse_document(emit_document(d)).group.kind == kind);
    }
}

TEST_CASE("io: parse errors carry field context", "[io]") {
    auto expect = [](nlohmann::json j, const std::string& needle) {
        REQUIRE_THROWS_AS(parse_document(j.dump()), ParseError);
        REQUIRE_THROWS_WITH(parse_document(j.dump()), ContainsSubstring(needle));
    };

    SECTION("not json at all") {
        REQUIRE_THROWS_AS(parse_document("hello"), ParseError);
        REQUIRE_THROWS_WITH(parse_document("hello"), ContainsSubstring("invalid JSON"));
    }
    SECTION("wrong-length ray names the cone") {
        nlohmann::json j = base_json();
        j["fan"]["cones"][1] = {{1, 0, 3}};
        j["fan"]["rank"] = 2;
        expect(j, "fan.cones[1]");
    }
    SECTION("missing field") {
        nlohmann::json j = base_json();
        j["fan"].erase("maximal");
        expect(j, "missing field \"maximal\"");
    }
    SECTION("unsupported schema version") {
        nlohmann::json j = base_json();
        j["schema_version"] = "0";
        expect(j, "unsupported version");
    }
    SECTION("unknown group kind") {
        nlohmann::json j = base_json();
        j["group"]["kind"] = "SL";
        expect(j, "unknown group kind \"SL\"");
    }
    SECTION("zero denominator") {
        nlohmann::json j = base_json();
        j["collections"]["onetwo"]["p"]["1,2"] = {{"1/0"}};
        expect(j, "malformed rational");
    }
    SECTION("rational must be a string") {
        nlohmann::json j = base_json();
        j["collections"]["onetwo"]["rho"]["1"]["A"] = {{1}};
        expect(j, "expected a rational string");
    }
    SECTION("matrix shape") {
        nlohmann::json j = base_json();
        j["collections"]["onetwo"]["rho"]["1"]["A"] = {{"1"}, {"2"}};
        expect(j, "expected 1 rows");
    }
    SECTION("weights row count") {
        nlohmann::json j = base_json();
        j["collections"]["onetwo"]["rho"]["1"]["weights"] = {{1}, {2}};
        expect(j, "weights: expected 1 rows");
    }
    SECTION("weights entries are integers") {
        nlohmann::json j = base_json();
        j["collections"]["onetwo"]["rho"]["1"]["weights"] = {{"1"}};
        expect(j, "expected an integer");
    }
    SECTION("transition key format") {
        nlohmann::json j = base_json();
        j["collections"]["onetwo"]["p"]["12"] = {{"1"}};
        expect(j, "key must be \"tau,sigma\"");
    }
    SECTION("unknown fields are rejected") {
        nlohmann::json j = base_json();
        j["extra"] = 1;
        expect(j, "unknown field \"extra\"");
    }
    SECTION("rho keys are cone indices") {
        nlohmann::json j = base_json();
        j["collections"]["onetwo"]["rho"]["east"] =
            j["collections"]["onetwo"]["rho"]["1"];
        expect(j, "malformed cone index \"east\"");
    }
}

TEST_CASE("io: build_collection rejects unknown names", "[io]") {
    Document d = sample_doc();
    REQUIRE_THROWS_WITH(build_collection(d, "zzz"), "unknown collection \"zzz\"");
}

TEST_CASE("io: splitting override files", "[io]") {
    SplitOverride ov = parse_split_override(R"({"1": [[1, -1]]})", 2);
    REQUIRE(ov.size() == 1);
    REQUIRE(ov.at(1).ambient_rank == 2);
    REQUIRE(ov.at(1).rank() == 1);
    REQUIRE(ov.at(1).basis.row(0) == IntVec{Int(1), Int(-1)});

    REQUIRE_THROWS_AS(parse_split_override("[]", 2), ParseError);
    REQUIRE_THROWS_WITH(parse_split_override(R"({"x": [[1, 0]]})", 2),
                        ContainsSubstring("malformed cone index"));
    REQUIRE_THROWS_WITH(parse_split_override(R"({"1": [[1]]})", 2),
                        ContainsSubstring("expected 2"));
}

TEST_CASE("io: shipped example parses and validates", "[io]") {
    Document d = load_document(std::string(TORBUN_EXAMPLES_DIR) + "/p1_gl1.json");
    REQUIRE(d.rank == 1);
    REQUIRE(d.maximal.size() == 2);
    REQUIRE(d.collections.size() == 4);
    REQUIRE(validate_fan(build_fan(d)).ok);
    for (const auto& [name, cd] : d.collections) {
        AdmissibleCollection c = build_collection(d, name);
        REQUIRE(validate(c).ok);
    }
}
