/*
 * json_io.cpp
 * -----------
 * JSON serialization and the on-disk partition cache.
 */
#include "charop/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <utility>
#include <vector>

#include "charop/errors.hpp"

namespace charop {

namespace {

void require(bool ok, const std::string& msg)
{
    if (!ok) throw DomainError("json: " + msg);
}

Coord coord_from_json(const Json& j, const char* what)
{
    require(j.is_number_integer(), std::string(what) + " must be an integer");
    return j.get<Coord>();
}

// Decimal string preferred, plain integers accepted for hand-written files.
Int int_from_json(const Json& j, const char* what)
{
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    require(j.is_string(), std::string(what) + " must be a decimal string or integer");
    try {
        return Int(j.get<std::string>());
    } catch (const std::exception&) {
        throw DomainError(std::string("json: ") + what + " is not a valid decimal string");
    }
}

Json parse_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw DomainError(path + ": " + e.what());
    }
}

void write_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw DomainError("write failed: " + path);
}

constexpr int kCacheFormat = 1;

std::string cache_path(const PartitionTable& table, const std::string& dir)
{
    return dir + "/kostant-" + table.root_system().name() + ".json";
}

} // namespace

Json weight_to_json(const Weight& w)
{
    return Json(w.coords);
}

Weight weight_from_json(const Json& j)
{
    require(j.is_array(), "weight must be an array");
    std::vector<Coord> coords;
    coords.reserve(j.size());
    for (const Json& c : j) coords.push_back(coord_from_json(c, "weight coordinate"));
    return Weight(std::move(coords));
}

Json window_to_json(const Window& w)
{
    Json ceilings = Json::array();
    for (const Weight& c : w.ceilings) ceilings.push_back(weight_to_json(c));
    return Json{{"ceilings", std::move(ceilings)}, {"depth", w.depth}};
}

Window window_from_json(const Json& j)
{
    require(j.is_object() && j.contains("ceilings") && j.contains("depth"),
            "window must have ceilings and depth");
    Window w;
    require(j["ceilings"].is_array(), "window ceilings must be an array");
    for (const Json& c : j["ceilings"]) w.ceilings.push_back(weight_from_json(c));
    w.depth = coord_from_json(j["depth"], "window depth");
    return w;
}

Json coeffs_to_json(const std::map<Weight, Int>& coeffs)
{
    Json out = Json::array();
    for (const auto& [w, c] : coeffs) out.push_back(Json{weight_to_json(w), c.str()});
    return out;
}

std::map<Weight, Int> coeffs_from_json(const Json& j)
{
    require(j.is_array(), "coefficient list must be an array");
    std::map<Weight, Int> coeffs;
    for (const Json& pair : j) {
        require(pair.is_array() && pair.size() == 2,
                "coefficient entry must be a [weight, value] pair");
        Weight w = weight_from_json(pair[0]);
        require(coeffs.find(w) == coeffs.end(), "duplicate weight in coefficient list");
        coeffs.emplace(std::move(w), int_from_json(pair[1], "coefficient"));
    }
    return coeffs;
}

Json finite_character_to_json(const FiniteCharacter& fc)
{
    return Json{{"window", window_to_json(fc.window)}, {"coeffs", coeffs_to_json(fc.coeffs)}};
}

FiniteCharacter finite_character_from_json(const Json& j)
{
    require(j.is_object() && j.contains("window") && j.contains("coeffs"),
            "finite character must have window and coeffs");
    FiniteCharacter fc;
    fc.window = window_from_json(j["window"]);
    fc.ceilings = fc.window.ceilings;
    fc.coeffs = coeffs_from_json(j["coeffs"]);
    return fc;
}

Json database_to_json(const CharDatabase& db)
{
    Json entries = Json::array();
    for (const auto& [w, e] : db.entries()) {
        Json entry{{"weight", weight_to_json(w)}};
        if (e.builtin)
            entry["builtin"] = *e.builtin;
        else
            entry["char"] = coeffs_to_json(*e.values);
        if (!e.provenance.empty()) entry["provenance"] = e.provenance;
        entries.push_back(std::move(entry));
    }
    return Json{{"type", std::string(1, db.type())},
                {"rank", db.rank()},
                {"p", db.p()},
                {"kind", db.kind()},
                {"entries", std::move(entries)}};
}

CharDatabase database_from_json(const Json& j)
{
    require(j.is_object(), "database must be an object");
    for (const char* field : {"type", "rank", "p", "entries"})
        require(j.contains(field), std::string("database is missing ") + field);
    require(j["type"].is_string() && j["type"].get<std::string>().size() == 1,
            "database type must be a single letter");
    const char type = j["type"].get<std::string>()[0];
    const int rank = static_cast<int>(coord_from_json(j["rank"], "database rank"));
    const Coord p = coord_from_json(j["p"], "database p");
    const std::string kind = j.value("kind", std::string("simple"));

    CharDatabase db(type, rank, p, kind);
    require(j["entries"].is_array(), "database entries must be an array");
    for (const Json& e : j["entries"]) {
        require(e.is_object() && e.contains("weight"), "database entry is missing weight");
        require(e.contains("char") != e.contains("builtin"),
                "database entry needs exactly one of char and builtin");
        DBEntry entry;
        entry.weight = weight_from_json(e["weight"]);
        if (e.contains("builtin")) {
            require(e["builtin"].is_string(), "builtin tag must be a string");
            entry.builtin = e["builtin"].get<std::string>();
        } else {
            entry.values = coeffs_from_json(e["char"]);
        }
        entry.provenance = e.value("provenance", std::string());
        db.insert(std::move(entry));
    }
    return db;
}

CharDatabase load_database(const std::string& path)
{
    return database_from_json(parse_file(path));
}

void save_database(const CharDatabase& db, const std::string& path)
{
    write_file(path, database_to_json(db));
}

Json matrix_to_json(const UniTriangularMatrix& m)
{
    Json index = Json::array();
    for (const Weight& w : m.index()) index.push_back(weight_to_json(w));
    Json entries = Json::array();
    for (const auto& [pos, v] : m.entries())
        if (pos.first != pos.second)
            entries.push_back(Json{pos.first, pos.second, v.str()});
    return Json{{"index", std::move(index)}, {"entries", std::move(entries)}};
}

UniTriangularMatrix matrix_from_json(RootSystemPtr rs, const Json& j)
{
    require(j.is_object() && j.contains("index") && j.contains("entries"),
            "matrix must have index and entries");
    require(j["index"].is_array(), "matrix index must be an array");
    std::vector<Weight> index;
    for (const Json& w : j["index"]) index.push_back(weight_from_json(w));
    UniTriangularMatrix m(std::move(rs), std::move(index));
    require(j["entries"].is_array(), "matrix entries must be an array");
    for (const Json& e : j["entries"]) {
        require(e.is_array() && e.size() == 3, "matrix entry must be [row, col, value]");
        const Coord row = coord_from_json(e[0], "matrix row");
        const Coord col = coord_from_json(e[1], "matrix column");
        require(row >= 0 && col >= 0 && static_cast<std::size_t>(row) < m.size() &&
                    static_cast<std::size_t>(col) < m.size(),
                "matrix entry out of range");
        m.set(static_cast<std::size_t>(row), static_cast<std::size_t>(col),
              int_from_json(e[2], "matrix value"));
    }
    return m;
}

bool load_partition_cache(const PartitionTable& table, const std::string& dir)
{
    const std::string path = cache_path(table, dir);
    std::ifstream in(path);
    if (!in) return false;
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error&) {
        return false;
    }
    if (!j.is_object() || j.value("format", 0) != kCacheFormat ||
        j.value("name", std::string()) != table.root_system().name() ||
        !j.contains("entries") || !j["entries"].is_array())
        return false;

    const auto rank = static_cast<std::size_t>(table.root_system().rank());
    std::vector<std::pair<RootVector, Int>> entries;
    for (const Json& e : j["entries"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_array() || e[0].size() != rank)
            return false;
        std::vector<Coord> coords;
        for (const Json& c : e[0]) {
            if (!c.is_number_integer()) return false;
            coords.push_back(c.get<Coord>());
        }
        try {
            entries.emplace_back(RootVector(std::move(coords)), int_from_json(e[1], "count"));
        } catch (const DomainError&) {
            return false;
        }
    }
    table.merge(entries);
    return true;
}

void save_partition_cache(const PartitionTable& table, const std::string& dir)
{
    std::filesystem::create_directories(dir);
    Json entries = Json::array();
    for (const auto& [nu, count] : table.snapshot())
        entries.push_back(Json{Json(nu.coords), count.str()});
    write_file(cache_path(table, dir),
               Json{{"format", kCacheFormat},
                    {"name", table.root_system().name()},
                    {"entries", std::move(entries)}});
}

} // namespace charop
