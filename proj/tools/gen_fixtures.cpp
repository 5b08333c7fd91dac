/*
 * gen_fixtures.cpp
 * ----------------
 * Regenerates the database fixtures under data/. Usage: gen_fixtures [dir].
 */
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "charop/json_io.hpp"
#include "charop/steinberg.hpp"
#include "charop/tilting.hpp"

using namespace charop;

namespace {

Weight W(std::vector<Coord> c) { return Weight(std::move(c)); }

std::map<Weight, Int> chi_map(const Context& ctx, const Weight& lambda)
{
    Weight lowest = weyl_apply(*ctx.rs, longest_weyl_element(*ctx.rs).word, lambda);
    auto depth = height_diff(*ctx.rs, lowest, lambda);
    return eval(weyl_char(ctx, lambda), Window{{lambda}, depth && *depth > 0 ? *depth : 0})
        .coeffs;
}

std::map<Weight, Int> sub(std::map<Weight, Int> a, const std::map<Weight, Int>& b)
{
    for (const auto& [w, c] : b) {
        a[w] -= c;
        if (a[w] == 0) a.erase(w);
    }
    return a;
}

// Restricted simple characters for A2 at p in {2, 3}: every restricted L
// equals the Weyl character chi except L(1,1) at p = 3, where the adjoint
// representation loses its center and ch L(1,1) = chi(1,1) - chi(0,0).
CharDatabase a2_db(Coord p)
{
    Context ctx = Context::make(build_root_system('A', 2), p);
    CharDatabase db('A', 2, p);
    for (Coord a = 0; a < p; ++a)
        for (Coord b = 0; b < p; ++b) {
            Weight w = W({a, b});
            std::map<Weight, Int> values = chi_map(ctx, w);
            std::string provenance = "equals the Weyl character chi";
            if (p == 3 && a == 1 && b == 1) {
                values = sub(values, chi_map(ctx, W({0, 0})));
                provenance = "chi(1,1) - chi(0,0), dimension 7";
            }
            db.insert({w, std::move(values), std::nullopt, provenance});
        }
    return db;
}

// Restricted simple characters for B2 at p = 2: the 5-dimensional natural
// representation drops a trivial summand, so ch L(1,0) = chi(1,0) - chi(0,0);
// the other three restricted weights keep their Weyl characters.
CharDatabase b2_db()
{
    Context ctx = Context::make(build_root_system('B', 2), 2);
    CharDatabase db('B', 2, 2);
    for (Coord a = 0; a < 2; ++a)
        for (Coord b = 0; b < 2; ++b) {
            Weight w = W({a, b});
            std::map<Weight, Int> values = chi_map(ctx, w);
            std::string provenance = "equals the Weyl character chi";
            if (a == 1 && b == 0) {
                values = sub(values, chi_map(ctx, W({0, 0})));
                provenance = "chi(1,0) - chi(0,0), dimension 4";
            }
            db.insert({w, std::move(values), std::nullopt, provenance});
        }
    return db;
}

} // namespace

int main(int argc, char** argv)
{
    const std::string dir = argc > 1 ? argv[1] : "data";
    std::filesystem::create_directories(dir);
    for (Coord p : {2, 3, 5})
        save_database(sl2_restricted_db(p), dir + "/sl2-p" + std::to_string(p) + ".json");
    save_database(a2_db(2), dir + "/a2-p2.json");
    save_database(a2_db(3), dir + "/a2-p3.json");
    save_database(b2_db(), dir + "/b2-p2.json");
    save_database(sl2_tilting_fixture(3), dir + "/sl2-tilting-p3.json");
    std::cout << "wrote 7 fixtures to " << dir << '\n';
    return 0;
}
