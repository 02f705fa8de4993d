#include "expocert/io.hpp"

#include "json.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace expocert {

using nlohmann::json;

const char* to_string(MapKind k) {
    switch (k) {
        case MapKind::Choi: return "choi";
        case MapKind::Conjugation: return "conjugation";
        case MapKind::Kraus: return "kraus";
    }
    return "choi";
}

namespace {

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& field, Eigen::Index rows, Eigen::Index cols) {
    if (!j.is_array() || Eigen::Index(j.size()) != rows)
        throw SchemaError(field, "expected " + std::to_string(rows) + " rows");
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[std::size_t(i)];
        if (!row.is_array() || Eigen::Index(row.size()) != cols)
            throw SchemaError(field, "row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const json& z = row[std::size_t(c)];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw SchemaError(field, "entries must be [re, im] number pairs");
            const double re = z[0].get<double>();
            const double im = z[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im)) throw SchemaError(field, "entries must be finite");
            m(i, c) = Complex(re, im);
        }
    }
    return m;
}

const json& require(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(key, "missing");
    return *it;
}

int require_positive_int(const json& obj, const char* key) {
    const json& v = require(obj, key);
    if (!v.is_number_integer() || v.get<long long>() <= 0 || v.get<long long>() > 4096)
        throw SchemaError(key, "must be a positive integer");
    return int(v.get<long long>());
}

json document_to_json(const MapDocument& doc) {
    json j;
    j["kind"] = to_string(doc.kind);
    j["dim_in"] = doc.dim_in;
    j["dim_out"] = doc.dim_out;
    if (doc.kind == MapKind::Conjugation) j["transposed"] = doc.transposed;
    if (doc.kind == MapKind::Kraus) {
        json ops = json::array();
        for (const auto& k : doc.payload) ops.push_back(matrix_to_json(k));
        j["payload"] = std::move(ops);
    } else {
        j["payload"] = doc.payload.empty() ? json::array() : matrix_to_json(doc.payload.front());
    }
    j["meta"] = json::object();
    for (const auto& [k, v] : doc.meta) j["meta"][k] = v;
    return j;
}

json tolerances_to_json(const ToleranceConfig& t) {
    return {{"rank_rel_tol", t.rank_rel_tol},
            {"residual_rel_tol", t.residual_rel_tol},
            {"convergence_tol", t.convergence_tol},
            {"max_iters", t.max_iters}};
}

ToleranceConfig tolerances_from_json(const json& j) {
    ToleranceConfig t;
    t.rank_rel_tol = j.at("rank_rel_tol").get<double>();
    t.residual_rel_tol = j.at("residual_rel_tol").get<double>();
    t.convergence_tol = j.at("convergence_tol").get<double>();
    t.max_iters = j.at("max_iters").get<int>();
    return t;
}

json certificate_to_json(const Certificate& c) {
    json j{{"property", to_string(c.property)},
           {"verdict", to_string(c.verdict)},
           {"measured_dim", c.measured_dim},
           {"required_dim", c.required_dim},
           {"tolerances", tolerances_to_json(c.tolerances)},
           {"conditional_note", c.conditional_note}};
    if (c.irreducible_on_image) j["irreducible_on_image"] = *c.irreducible_on_image;
    return j;
}

Certificate certificate_from_json(const json& j) {
    Certificate c;
    const std::string prop = j.at("property").get<std::string>();
    if (prop == "Optimal") c.property = Property::Optimal;
    else if (prop == "Exposed") c.property = Property::Exposed;
    else throw SchemaError("property", "unknown value " + prop);
    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict == "Certified") c.verdict = Verdict::Certified;
    else if (verdict == "Inconclusive") c.verdict = Verdict::Inconclusive;
    else throw SchemaError("verdict", "unknown value " + verdict);
    c.measured_dim = j.at("measured_dim").get<int>();
    c.required_dim = j.at("required_dim").get<int>();
    if (j.contains("irreducible_on_image")) c.irreducible_on_image = j.at("irreducible_on_image").get<bool>();
    c.tolerances = tolerances_from_json(j.at("tolerances"));
    c.conditional_note = j.at("conditional_note").get<std::string>();
    return c;
}

json sweep_to_json(const SweepReport& r) {
    return {{"n", r.n},
            {"m", r.m},
            {"rank_v", r.rank_v},
            {"measured_strong_dim", r.measured_strong_dim},
            {"harvest_strong_dim", r.harvest_strong_dim},
            {"oracle_strong_dim", r.oracle_strong_dim},
            {"oracle_stable", r.oracle_stable},
            {"formula_stated", r.formula_stated},
            {"formula_derived", r.formula_derived},
            {"strong_target", r.strong_target},
            {"agrees_with", to_string(r.agrees_with)},
            {"seed", r.seed}};
}

SweepReport sweep_from_json(const json& j) {
    SweepReport r;
    r.n = j.at("n").get<int>();
    r.m = j.at("m").get<int>();
    r.rank_v = j.at("rank_v").get<int>();
    r.measured_strong_dim = j.at("measured_strong_dim").get<int>();
    r.harvest_strong_dim = j.at("harvest_strong_dim").get<int>();
    r.oracle_strong_dim = j.at("oracle_strong_dim").get<int>();
    r.oracle_stable = j.at("oracle_stable").get<bool>();
    r.formula_stated = j.at("formula_stated").get<int>();
    r.formula_derived = j.at("formula_derived").get<int>();
    r.strong_target = j.at("strong_target").get<int>();
    r.agrees_with = agreement_from_string(j.at("agrees_with").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    return r;
}

}  // namespace

MapDocument parse_map_document(std::string_view text, const ToleranceConfig& tol) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(e.byte, e.what());
    }
    if (!j.is_object()) throw SchemaError("<root>", "must be an object");

    MapDocument doc;
    const json& kind = require(j, "kind");
    if (!kind.is_string()) throw SchemaError("kind", "must be a string");
    const std::string k = kind.get<std::string>();
    if (k == "choi") doc.kind = MapKind::Choi;
    else if (k == "conjugation") doc.kind = MapKind::Conjugation;
    else if (k == "kraus") doc.kind = MapKind::Kraus;
    else throw SchemaError("kind", "must be one of choi, conjugation, kraus");

    doc.dim_in = require_positive_int(j, "dim_in");
    doc.dim_out = require_positive_int(j, "dim_out");
    const int n = doc.dim_in;
    const int m = doc.dim_out;
    const json& payload = require(j, "payload");

    switch (doc.kind) {
        case MapKind::Choi: {
            ComplexMatrix c = matrix_from_json(payload, "payload", Eigen::Index(n) * m, Eigen::Index(n) * m);
            const RealVector sigma = singular_values(c);
            const double smax = sigma.size() ? sigma(0) : 0.0;
            if (hermiticity_defect(c) > tol.residual_rel_tol * smax * std::sqrt(double(n) * m))
                throw SchemaError("choi", "hermiticity");
            doc.payload.push_back(std::move(c));
            break;
        }
        case MapKind::Conjugation: {
            ComplexMatrix v = matrix_from_json(payload, "payload", n, m);
            if (v.isZero(0.0)) throw SchemaError("payload", "conjugation operator must be nonzero");
            doc.payload.push_back(std::move(v));
            break;
        }
        case MapKind::Kraus: {
            if (!payload.is_array() || payload.empty()) throw SchemaError("payload", "kraus payload must be a non-empty list");
            for (const auto& op : payload) doc.payload.push_back(matrix_from_json(op, "payload", m, n));
            break;
        }
    }

    if (auto it = j.find("transposed"); it != j.end()) {
        if (!it->is_boolean()) throw SchemaError("transposed", "must be a boolean");
        if (doc.kind != MapKind::Conjugation) throw SchemaError("transposed", "only allowed for conjugation documents");
        doc.transposed = it->get<bool>();
    }
    if (auto it = j.find("meta"); it != j.end()) {
        if (!it->is_object()) throw SchemaError("meta", "must be an object of strings");
        for (const auto& [key, val] : it->items()) {
            if (!val.is_string()) throw SchemaError("meta", "value of '" + key + "' must be a string");
            doc.meta[key] = val.get<std::string>();
        }
    }
    return doc;
}

std::string render_map_document(const MapDocument& doc) { return document_to_json(doc).dump(2) + "\n"; }

MapOperator to_map_operator(const MapDocument& doc) {
    switch (doc.kind) {
        case MapKind::Choi: return MapOperator(doc.dim_in, doc.dim_out, doc.payload.front());
        case MapKind::Conjugation: return from_conjugation(doc.payload.front(), doc.transposed);
        case MapKind::Kraus: return from_kraus(doc.payload);
    }
    throw SchemaError("kind", "unsupported");
}

MapDocument choi_document(const MapOperator& phi, std::map<std::string, std::string> meta) {
    MapDocument doc;
    doc.kind = MapKind::Choi;
    doc.dim_in = phi.dim_in();
    doc.dim_out = phi.dim_out();
    doc.payload.push_back(phi.choi());
    doc.meta = std::move(meta);
    return doc;
}

std::string content_digest(const MapDocument& doc) {
    const std::string bytes = document_to_json(doc).dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("content_digest: SHA-256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

std::string render_certificate_json(const CertificateDocument& doc) {
    json j;
    j["input_digest"] = doc.input_digest;
    j["certificates"] = json::array();
    for (const auto& c : doc.certificates) j["certificates"].push_back(certificate_to_json(c));
    const auto& z = doc.zero_set_summary;
    j["zero_set_summary"] = {{"pairs", z.pairs},
                             {"weak_dim", z.weak_dim},
                             {"weak_required", z.weak_required},
                             {"strong_dim", z.strong_dim},
                             {"strong_required", z.strong_required},
                             {"saturated", z.saturated}};
    if (doc.sweep) {
        j["sweep"] = json::array();
        for (const auto& r : *doc.sweep) j["sweep"].push_back(sweep_to_json(r));
    }
    j["tool_version"] = doc.tool_version;
    j["seed"] = doc.seed;
    j["tolerances"] = tolerances_to_json(doc.tolerances);
    return j.dump(2) + "\n";
}

CertificateDocument parse_certificate_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(e.byte, e.what());
    }
    try {
        CertificateDocument doc;
        doc.input_digest = j.at("input_digest").get<std::string>();
        for (const auto& c : j.at("certificates")) doc.certificates.push_back(certificate_from_json(c));
        const json& z = j.at("zero_set_summary");
        doc.zero_set_summary = {z.at("pairs").get<int>(),      z.at("weak_dim").get<int>(),
                                z.at("weak_required").get<int>(), z.at("strong_dim").get<int>(),
                                z.at("strong_required").get<int>(), z.at("saturated").get<bool>()};
        if (j.contains("sweep")) {
            std::vector<SweepReport> rows;
            for (const auto& r : j.at("sweep")) rows.push_back(sweep_from_json(r));
            doc.sweep = std::move(rows);
        }
        doc.tool_version = j.at("tool_version").get<std::string>();
        doc.seed = j.at("seed").get<std::uint64_t>();
        doc.tolerances = tolerances_from_json(j.at("tolerances"));
        return doc;
    } catch (const json::exception& e) {
        throw SchemaError("<certificate>", e.what());
    }
}

std::string render_certificate_text(const CertificateDocument& doc) {
    std::ostringstream os;
    const auto& z = doc.zero_set_summary;
    os << "expocert " << doc.tool_version << "\n";
    os << "input    sha256:" << doc.input_digest << "\n";
    os << "seed     " << doc.seed << "\n";
    os << "zero set " << z.pairs << " pairs" << (z.saturated ? " (saturated)" : " (budget exhausted)") << "\n";
    os << "  weak span   " << z.weak_dim << " / " << z.weak_required << "\n";
    os << "  strong span " << z.strong_dim << " / " << z.strong_required << "\n";
    for (const auto& c : doc.certificates) {
        os << to_string(c.property) << ": " << to_string(c.verdict) << "  (" << c.measured_dim << " / " << c.required_dim;
        if (c.irreducible_on_image) os << ", irreducible on image: " << (*c.irreducible_on_image ? "yes" : "no");
        os << ")\n";
    }
    if (!doc.certificates.empty()) os << "note: " << doc.certificates.back().conditional_note << "\n";
    return os.str();
}

std::string render_sweep_table(const std::vector<SweepReport>& rows) {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%3s %3s %3s %9s %8s %7s %7s %8s %7s  %s\n", "n", "m", "r", "measured", "harvest",
                  "oracle", "stated", "derived", "target", "agrees");
    os << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%3d %3d %3d %9d %8d %7d %7d %8d %7d  %s%s\n", r.n, r.m, r.rank_v,
                      r.measured_strong_dim, r.harvest_strong_dim, r.oracle_strong_dim, r.formula_stated,
                      r.formula_derived, r.strong_target, to_string(r.agrees_with),
                      r.cross_checked() ? "" : "  [cross-check mismatch]");
        os << line;
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace expocert
