#ifndef EXPOCERT_IO_HPP
#define EXPOCERT_IO_HPP

#include "expocert/theorem_lab.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace expocert {

inline constexpr const char* kToolVersion = EXPOCERT_VERSION;

struct ParseError : Error {
    ParseError(std::size_t pos, const std::string& msg)
        : Error("parse error at byte " + std::to_string(pos) + ": " + msg), position(pos) {}
    std::size_t position;
};

struct SchemaError : Error {
    SchemaError(std::string f, std::string c)
        : Error("schema error in field '" + f + "': " + c), field(std::move(f)), constraint(std::move(c)) {}
    std::string field;
    std::string constraint;
};

enum class MapKind { Choi, Conjugation, Kraus };

const char* to_string(MapKind k);

/**
 * On-disk description of a map. JSON layout:
 *
 *   {
 *     "kind": "choi" | "conjugation" | "kraus",
 *     "dim_in": n, "dim_out": m,
 *     "transposed": bool,            // conjugation only
 *     "payload": matrix | [matrix],  // choi: one nm x nm; conjugation: one n x m;
 *                                    // kraus: list of m x n
 *     "meta": { "label": "text", ... }
 *   }
 *
 * A matrix is a list of rows, each row a list of [re, im] pairs. A choi
 * payload is the unnormalized Choi matrix sum_ij e_ij (x) Phi(e_ij), i.e. n
 * times the witness built from the normalized maximally entangled state.
 */
struct MapDocument {
    MapKind kind = MapKind::Choi;
    int dim_in = 0;
    int dim_out = 0;
    std::vector<ComplexMatrix> payload;
    bool transposed = false;
    std::map<std::string, std::string> meta;

    bool operator==(const MapDocument&) const = default;
};

/// Throws ParseError for malformed JSON and SchemaError naming the field.
MapDocument parse_map_document(std::string_view text, const ToleranceConfig& tol = {});

/// Canonical JSON (sorted keys, two-space indent, trailing newline).
std::string render_map_document(const MapDocument& doc);

MapOperator to_map_operator(const MapDocument& doc);

MapDocument choi_document(const MapOperator& phi, std::map<std::string, std::string> meta = {});

/// Hex SHA-256 of the compact canonical JSON of doc.
std::string content_digest(const MapDocument& doc);

struct ZeroSetSummary {
    int pairs = 0;
    int weak_dim = 0;
    int weak_required = 0;
    int strong_dim = 0;
    int strong_required = 0;
    bool saturated = false;

    bool operator==(const ZeroSetSummary&) const = default;
};

struct CertificateDocument {
    std::string input_digest;
    std::vector<Certificate> certificates;
    ZeroSetSummary zero_set_summary;
    std::optional<std::vector<SweepReport>> sweep;
    std::string tool_version = kToolVersion;
    std::uint64_t seed = 0;
    ToleranceConfig tolerances;

    bool operator==(const CertificateDocument&) const = default;
};

std::string render_certificate_json(const CertificateDocument& doc);
CertificateDocument parse_certificate_json(std::string_view text);

/// Human-readable report, dimensions printed as "measured / required".
std::string render_certificate_text(const CertificateDocument& doc);

std::string render_sweep_table(const std::vector<SweepReport>& rows);

std::string read_file(const std::string& path);

}  // namespace expocert

#endif  // EXPOCERT_IO_HPP
