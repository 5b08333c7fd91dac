/*
 * json_io.hpp
 * -----------
 * JSON input and output: weights, windows, finite characters, character
 * databases, unitriangular matrices and the partition memo cache.
 *
 * Schemas:
 *   weight            [1,-1]                      (fundamental coordinates)
 *   window            {"ceilings":[[1,-1]],"depth":6}
 *   coefficient list  [[[2],"1"],[[0],"1"]]
 *   finite character  {"window":{...},"coeffs":[...]}
 *   database          {"type":"A","rank":1,"p":3,"kind":"simple","entries":
 *                       [{"weight":[2],"char":[...],"provenance":"..."},
 *                        {"weight":[-1],"builtin":"verma"}]}
 *   matrix            {"index":[[2],[0]],"entries":[[1,0,"-1"]]}
 *
 * Coefficients are decimal strings on output and accept plain integers on
 * input. Matrix files list off-diagonal entries only; the unit diagonal is
 * implied. The partition cache is one versioned file per root system under a
 * user-chosen directory, and a missing, stale or mismatched cache file reads
 * as absent. Cache contents are trusted when present, so point the cache at
 * directories this tool wrote.
 */
#pragma once

#include <map>
#include <string>

#include "json.hpp"

#include "charop/charexpr.hpp"
#include "charop/linkage.hpp"
#include "charop/steinberg.hpp"

namespace charop {

using Json = nlohmann::ordered_json;

Json weight_to_json(const Weight& w);
Weight weight_from_json(const Json& j);

Json window_to_json(const Window& w);
Window window_from_json(const Json& j);

// Coefficient lists keep explicit zeros; producers decide whether to drop
// them. Duplicate weights are rejected.
Json coeffs_to_json(const std::map<Weight, Int>& coeffs);
std::map<Weight, Int> coeffs_from_json(const Json& j);

Json finite_character_to_json(const FiniteCharacter& fc);
FiniteCharacter finite_character_from_json(const Json& j);

Json database_to_json(const CharDatabase& db);
CharDatabase database_from_json(const Json& j);
CharDatabase load_database(const std::string& path);
void save_database(const CharDatabase& db, const std::string& path);

Json matrix_to_json(const UniTriangularMatrix& m);
UniTriangularMatrix matrix_from_json(RootSystemPtr rs, const Json& j);

// Partition memo persistence. Loading merges a usable cache file into the
// table and reports whether one was found; saving overwrites the file for
// this root system.
bool load_partition_cache(const PartitionTable& table, const std::string& dir);
void save_partition_cache(const PartitionTable& table, const std::string& dir);

} // namespace charop
