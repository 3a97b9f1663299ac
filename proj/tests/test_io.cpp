#include <doctest.h>

#include <fstream>
#include <sstream>

#include "dgper/io.hpp"
#include "fixtures.hpp"

using namespace dgper;
using namespace dgper::testing;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(DGPER_TEST_DATA_DIR) + "/" + name);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("emit(parse(golden)) is byte-identical for every golden file") {
    for (const char* name : {"D2_Q.alg.json", "D2_F13.alg.json", "polyXY_F7.alg.json"}) {
        std::string text = slurp(name);
        AlgebraPtr alg = parse_algebra(text);
        CHECK(emit_algebra(*alg) == text);
    }
    AlgebraPtr d2 = parse_algebra(slurp("D2_Q.alg.json"));
    for (const char* name : {"L_Q.mod.json", "M_Q.mod.json", "cone_id.mod.json"}) {
        std::string text = slurp(name);
        ModuleDocument doc = parse_module(text, d2);
        CHECK(emit_module(doc.module, doc.algebra_ref) == text);
    }
    {
        std::string text = slurp("idL.map.json");
        DgModule l = parse_module(slurp("L_Q.mod.json"), d2).module;
        MapDocument doc = parse_map(text, l, l);
        CHECK(emit_map(doc.map, doc.source_ref, doc.target_ref) == text);
    }
}

TEST_CASE("round trips survive an emit/parse/emit cycle on fresh objects") {
    AlgebraPtr r2 = rad2(Field::prime(5), 3);
    std::string once = emit_algebra(*r2);
    std::string twice = emit_algebra(*parse_algebra(once));
    CHECK(once == twice);

    AlgebraPtr dga = dg_with_derivation(Field::rationals());
    std::string dtext = emit_algebra(*dga);
    AlgebraPtr back = parse_algebra(dtext);
    CHECK(back->has_derivation());
    CHECK(emit_algebra(*back) == dtext);
}

TEST_CASE("zero denominators are a ParseError") {
    std::string text = slurp("M_Q.mod.json");
    std::string broken = text;
    std::size_t pos = broken.find("\"coeff\": \"1\"");
    REQUIRE(pos != std::string::npos);
    broken.replace(pos, 12, "\"coeff\": \"1/0\"");
    AlgebraPtr d2 = parse_algebra(slurp("D2_Q.alg.json"));
    try {
        parse_module(broken, d2);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
    }
}

TEST_CASE("unknown keys are rejected with their path") {
    std::string text = slurp("D2_Q.alg.json");
    std::string broken = text;
    broken.replace(broken.find("\"field\""), 7, "\"fields\"");
    try {
        parse_algebra(broken);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("fields") != std::string::npos);
    }
}

TEST_CASE("a module referencing an unknown vertex fails as VertexMismatch") {
    AlgebraPtr d2 = parse_algebra(slurp("D2_Q.alg.json"));
    std::string text = slurp("L_Q.mod.json");
    std::string broken = text;
    std::size_t pos = broken.find("\"vertex\": \"v\"");
    REQUIRE(pos != std::string::npos);
    broken.replace(pos, 13, "\"vertex\": \"w\"");
    try {
        parse_module(broken, d2);
        FAIL("expected VertexMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::VertexMismatch);
    }
}

TEST_CASE("document kinds are sniffed") {
    CHECK(sniff_document_kind(slurp("D2_Q.alg.json")) == "algebra");
    CHECK(sniff_document_kind(slurp("M_Q.mod.json")) == "module");
    CHECK(sniff_document_kind(slurp("idL.map.json")) == "map");
    CHECK_THROWS_AS(sniff_document_kind("{}"), Error);
    CHECK_THROWS_AS(sniff_document_kind("not json"), Error);
}

TEST_CASE("parsed differentials are validated: a d^2 break is caught") {
    AlgebraPtr d2 = parse_algebra(slurp("D2_Q.alg.json"));
    std::string text = R"({
  "algebra_ref": "D2_Q.alg.json",
  "generators": [
    {"shift": 0, "vertex": "v"},
    {"shift": 0, "vertex": "v"}
  ],
  "differential": [
    {"row": 0, "col": 0, "terms": [{"basis": "x", "coeff": "1"}]}
  ]
})";
    try {
        parse_module(text, d2);
        FAIL("expected DSquareViolation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DSquareViolation);
    }
}

TEST_CASE("differential terms that do not fit their slot are domain errors") {
    AlgebraPtr r2 = rad2(Field::prime(7), 3);
    // the arrow joins u to w, so it cannot sit in a (w-row, u-column) slot
    std::string text = R"({
  "algebra_ref": "rad2.alg.json",
  "generators": [
    {"shift": 0, "vertex": "w"},
    {"shift": 0, "vertex": "u"}
  ],
  "differential": [
    {"row": 0, "col": 1, "terms": [{"basis": "a", "coeff": "1"}]}
  ]
})";
    try {
        parse_module(text, r2);
        FAIL("expected VertexMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::VertexMismatch);
    }
    // and a term of the wrong degree
    std::string deg = R"({
  "algebra_ref": "rad2.alg.json",
  "generators": [
    {"shift": 1, "vertex": "u"},
    {"shift": 0, "vertex": "w"}
  ],
  "differential": [
    {"row": 0, "col": 1, "terms": [{"basis": "a", "coeff": "1"}]}
  ]
})";
    try {
        parse_module(deg, r2);
        FAIL("expected DegreeMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegreeMismatch);
    }
}

TEST_CASE("maps of nonzero degree round trip") {
    AlgebraPtr d2 = truncated_poly(Field::rationals(), 2);
    DgModule l1 = generator_module(d2, 0, 1); // {1}L
    DgModule m = two_step_module(d2);
    // a degree -1 map (a homotopy candidate): the slot 1 - 0 - 1 = 0 is scalar
    ChainMap h = ChainMap::zero(m, l1, -1);
    h.set_entry(0, 1, d2->unit_at(0));
    std::string text = emit_map(h, "M_Q.mod.json", "L1_Q.mod.json");
    MapDocument doc = parse_map(text, m, l1);
    CHECK(doc.map.degree == -1);
    CHECK(doc.map == h);
    CHECK(emit_map(doc.map, doc.source_ref, doc.target_ref) == text);
}
