#include "doctest.h"

#include "expocert/io.hpp"

using namespace expocert;

namespace {

const char* kTransposeDoc = R"({
  "kind": "conjugation",
  "dim_in": 2,
  "dim_out": 2,
  "transposed": true,
  "payload": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]],
  "meta": {"label": "transpose"}
})";

template <class F>
SchemaError schema_error_of(F&& f) {
    try {
        f();
    } catch (const SchemaError& e) {
        return e;
    }
    FAIL("expected SchemaError");
    return SchemaError("", "");
}

}  // namespace

TEST_CASE("conjugation document parses to the transpose map") {
    const MapDocument doc = parse_map_document(kTransposeDoc);
    CHECK(doc.kind == MapKind::Conjugation);
    CHECK(doc.transposed);
    CHECK(doc.meta.at("label") == "transpose");
    const MapOperator phi = to_map_operator(doc);
    CHECK((phi.choi() - transpose_map(2).choi()).norm() == 0.0);
}

TEST_CASE("kraus document with the identity operator") {
    const MapDocument doc = parse_map_document(
        R"({"kind": "kraus", "dim_in": 2, "dim_out": 2, "payload": [[[[1,0],[0,0]],[[0,0],[1,0]]]]})");
    CHECK(doc.kind == MapKind::Kraus);
    CHECK((to_map_operator(doc).choi() - identity_map(2).choi()).norm() == 0.0);
}

TEST_CASE("choi document round trip") {
    Rng rng(1);
    const MapOperator phi = random_decomposable_map(2, 3, 2, rng);
    const MapDocument doc = choi_document(phi, {{"label", "random"}});
    CHECK(doc.kind == MapKind::Choi);
    const std::string text = render_map_document(doc);
    CHECK(text.back() == '\n');
    const MapDocument back = parse_map_document(text);
    CHECK(back == doc);
    CHECK(render_map_document(back) == text);
    CHECK((to_map_operator(back).choi() - phi.choi()).norm() == 0.0);
    CHECK(content_digest(back) == content_digest(doc));
}

TEST_CASE("serialization round trip for every kind") {
    Rng rng(2);
    MapDocument k;
    k.kind = MapKind::Kraus;
    k.dim_in = 3;
    k.dim_out = 2;
    k.payload = {ginibre(2, 3, rng), ginibre(2, 3, rng)};
    MapDocument c;
    c.kind = MapKind::Conjugation;
    c.dim_in = 2;
    c.dim_out = 4;
    c.transposed = false;
    c.payload = {ginibre(2, 4, rng)};
    c.meta = {{"a", "1"}, {"b", "two"}};
    for (const auto& doc : {k, c}) CHECK(parse_map_document(render_map_document(doc)) == doc);
}

TEST_CASE("content digest") {
    const MapDocument a = parse_map_document(kTransposeDoc);
    MapDocument b = a;
    CHECK(content_digest(a).size() == 64);
    b.payload[0](0, 1) = Complex(1e-12, 0);
    CHECK(content_digest(a) != content_digest(b));
    b = a;
    b.meta["label"] = "other";
    CHECK(content_digest(a) != content_digest(b));
}

TEST_CASE("parse errors carry a position") {
    try {
        parse_map_document("{\"kind\": \"choi\",, }");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position > 0);
    }
    CHECK_THROWS_AS(parse_map_document(""), ParseError);
}

TEST_CASE("schema errors name the field") {
    CHECK(schema_error_of([] { parse_map_document("[1, 2]"); }).field == "<root>");
    CHECK(schema_error_of([] { parse_map_document(R"({"kind": "lindblad", "dim_in": 2, "dim_out": 2, "payload": []})"); })
              .field == "kind");
    CHECK(schema_error_of([] { parse_map_document(R"({"kind": "choi", "dim_out": 2, "payload": []})"); }).field == "dim_in");
    CHECK(schema_error_of([] { parse_map_document(R"({"kind": "choi", "dim_in": 0, "dim_out": 2, "payload": []})"); })
              .field == "dim_in");
    CHECK(schema_error_of([] {
              parse_map_document(R"({"kind": "conjugation", "dim_in": 1, "dim_out": 2, "payload": [[[1,0]]]})");
          }).field == "payload");
    CHECK(schema_error_of([] {
              parse_map_document(R"({"kind": "conjugation", "dim_in": 1, "dim_out": 1, "payload": [[[1]]]})");
          }).field == "payload");
    CHECK(schema_error_of([] {
              parse_map_document(R"({"kind": "conjugation", "dim_in": 1, "dim_out": 1, "payload": [[[0,0]]]})");
          }).field == "payload");
    CHECK(schema_error_of([] {
              parse_map_document(
                  R"({"kind": "choi", "dim_in": 1, "dim_out": 1, "transposed": true, "payload": [[[1,0]]]})");
          }).field == "transposed");
    CHECK(schema_error_of([] {
              parse_map_document(R"({"kind": "choi", "dim_in": 1, "dim_out": 1, "payload": [[[1,0]]], "meta": {"x": 3}})");
          }).field == "meta");
    CHECK(schema_error_of([] { parse_map_document(R"({"kind": "kraus", "dim_in": 1, "dim_out": 1, "payload": []})"); })
              .field == "payload");
}

TEST_CASE("non-Hermitian choi payload") {
    const SchemaError e = schema_error_of([] {
        parse_map_document(R"({"kind": "choi", "dim_in": 1, "dim_out": 2, "payload": [[[1,0],[1,0]],[[0,0],[1,0]]]})");
    });
    CHECK(e.field == "choi");
    CHECK(e.constraint == "hermiticity");
}

TEST_CASE("certificate document round trip") {
    const MapOperator phi = transpose_map(2);
    const ZeroSet zs = harvest_zeros(phi, 0);
    CertificateDocument doc;
    doc.input_digest = content_digest(parse_map_document(kTransposeDoc));
    doc.certificates = {certify_optimal(phi, zs), certify_exposed(phi, zs)};
    doc.zero_set_summary = {int(zs.size()), 4, 4, 6, 6, zs.saturated};
    doc.seed = 17;
    doc.tolerances = ToleranceConfig{}.with_rank_tol(3e-7);
    doc.sweep = std::vector<SweepReport>{run_dimension_sweep(2, 3, 1, 0)};
    const std::string json = render_certificate_json(doc);
    const CertificateDocument back = parse_certificate_json(json);
    CHECK(back == doc);
    CHECK(render_certificate_json(back) == json);

    CertificateDocument bare;
    CHECK(parse_certificate_json(render_certificate_json(bare)) == bare);
}

TEST_CASE("certificate text uses measured / required") {
    const MapOperator phi = trace_map(2, 2);
    const ZeroSet zs = harvest_zeros(phi, 0);
    CertificateDocument doc;
    doc.certificates = {certify_optimal(phi, zs), certify_exposed(phi, zs)};
    doc.zero_set_summary = {0, 0, 4, 0, 6, true};
    const std::string text = render_certificate_text(doc);
    CHECK(text.find("Optimal: Inconclusive  (0 / 4)") != std::string::npos);
    CHECK(text.find("Exposed: Inconclusive  (0 / 6, irreducible on image: no)") != std::string::npos);
    CHECK(text.find("weak span   0 / 4") != std::string::npos);
}

TEST_CASE("sweep table") {
    const std::string t = render_sweep_table({run_dimension_sweep(2, 2, 2, 0)});
    CHECK(t.find("measured") != std::string::npos);
    CHECK(t.find("Both") != std::string::npos);
    CHECK(t.find("mismatch") == std::string::npos);
}

TEST_CASE("read_file on a missing path") { CHECK_THROWS_AS(read_file("/nonexistent/expocert/input.json"), Error); }
