#ifndef TORIC_JSON_IO_HPP
#define TORIC_JSON_IO_HPP

// JSON (de)serialization for the domain objects and the provenance envelope
// used by the CLI.  Rationals travel as "p" or "p/q" strings, integers as
// JSON numbers, degrees as integer arrays.  Readers validate shape and the
// schema version and throw SchemaError on any violation; writers are
// deterministic (sorted keys, sorted entries), so identical objects always
// produce identical text.

#include "toric/cohomology.hpp"
#include "toric/extension.hpp"

#include "json.hpp"

#include <memory>
#include <string>

namespace toric {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolVersion = "toricsheaf 1.0";

// Deterministic hex digest of the fan combinatorics (FNV-1a over a canonical
// rendering); embedded in every output for reproducibility.
std::string fan_hash(const Fan& fan);

// Envelope helpers: body + {"schema", "kind", "provenance"}.  The optional
// twist/box slots record what a computation actually used.
Json document(const std::string& kind, Json body, const Fan& fan);
void check_schema(const Json& doc);  // SchemaError on missing/unknown version
void check_kind(const Json& doc, const std::string& kind);

Json fan_to_json(const Fan& fan);
Fan fan_from_json(const Json& j);  // {"ample_polytope": ...} or {"rays", "max_cones"}

Json divisor_to_json(const ToricDivisor& d);
ToricDivisor divisor_from_json(const Json& j, const Fan& fan);

Json matrix_to_json(const QMat& m);
QMat matrix_from_json(const Json& j);

Json polyhedron_to_json(const LatticePolyhedron& p);
LatticePolyhedron polyhedron_from_json(const Json& j);

Json decoration_to_json(const WeilDecoration& dec);
WeilDecoration decoration_from_json(const Json& j, const Fan& fan);

Json box_to_json(const DegreeBox& box);
DegreeBox box_from_json(const Json& j);

// Graded cohomology table; zero rows are suppressed unless verbose.
Json table_to_json(const GradedTable& table, bool verbose);

Json e1_to_json(const SpectralE1Report& rep);
Json cells_to_json(const CellComplex& cx);
Json extension_to_json(const ExtensionResult& res);

// Self-contained file documents carrying their own variety.  The fan is
// heap-owned so that the decoration's back-pointer stays valid.
struct LoadedSheaf {
    std::shared_ptr<const Fan> fan;
    WeilDecoration decoration;
};
Json sheaf_to_json(const WeilDecoration& dec);
LoadedSheaf sheaf_from_json(const Json& doc);

struct LoadedDivisor {
    std::shared_ptr<const Fan> fan;
    ToricDivisor divisor;
};
Json divisor_doc_to_json(const ToricDivisor& d);
LoadedDivisor divisor_doc_from_json(const Json& doc);

}  // namespace toric

#endif
