#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtoric/extend.hpp"
#include "qtoric/momentgeo.hpp"
#include "qtoric/polytope.hpp"

namespace qtoric {

// Interchange schema version of the polytope JSON format.
inline constexpr int kPolytopeSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Polytope JSON:  {"schema": 1, "dim": m, "name": optional,
//                  "facets": [{"normal": [int...], "offset": "p/q"}...]}
// Offsets are exact fraction strings; a missing "schema" means version 1.
// ---------------------------------------------------------------------------

HRepPolytope polytope_from_json_text(const std::string& text);
std::string polytope_to_json_text(const HRepPolytope& P);

// File variants; saving writes to a temporary file and renames (atomic on
// POSIX), loading throws ParseError when the file cannot be read.
HRepPolytope load_polytope(const std::string& path);
void save_polytope(const HRepPolytope& P, const std::string& path);

// ---------------------------------------------------------------------------
// Action tables as text: one line per coordinate, e.g.
//   q3 <- h1 * q3 * g2^-1
// Lines are emitted in coordinate order.  Parsing infers the h/g column
// counts from the largest indices that appear.
// ---------------------------------------------------------------------------

std::string action_table_to_text(const ActionTable& table);
ActionTable action_table_from_text(const std::string& text);

// ---------------------------------------------------------------------------
// CSV emission (deterministic: fixed %.17g formatting, no timestamps;
// metadata rides in leading '#' comment lines)
// ---------------------------------------------------------------------------

// Rows: image coordinates, then projection coordinates.
std::string samples_to_csv(const SampleSet& samples, const std::string& polytope_name);

// Rows: one fixed-point image / hull generator per line.
std::string hull_to_csv(const std::vector<std::vector<double>>& generators,
                        const std::string& label);

// Atomic text-file write helper used for all CLI outputs.
void write_text_file(const std::string& path, const std::string& content);

// ---------------------------------------------------------------------------
// Catalog of built-in polytopes (data files under the catalog directory)
// ---------------------------------------------------------------------------

struct CatalogEntry {
    std::string name;  // "name" field of the file (or the filename stem)
    std::string path;
};

// Directory holding the catalog: the QTORIC_CATALOG_DIR environment variable
// when set, otherwise the compiled-in default passed by the build.
std::string catalog_directory();

// All catalog polytopes, sorted by filename for deterministic listings.
std::vector<CatalogEntry> catalog_polytopes();

}  // namespace qtoric
