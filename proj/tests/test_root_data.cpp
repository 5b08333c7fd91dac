/*
 * test_root_data.cpp
 * ------------------
 * Root system construction, dominance order, Weyl and affine Weyl actions.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "charop/root_data.hpp"

using namespace charop;

namespace {

Weight W(std::vector<Coord> c) { return Weight(std::move(c)); }

} // namespace

TEST_CASE("build_root_system basic data")
{
    auto a1 = build_root_system('A', 1);
    CHECK(a1->positive_roots().size() == 1);
    CHECK(a1->coxeter_number() == 2);

    auto a2 = build_root_system('A', 2);
    CHECK(a2->positive_roots().size() == 3);
    CHECK(a2->coxeter_number() == 3);
    // closure by hand: alpha1, alpha2, alpha1+alpha2
    std::set<std::vector<Coord>> roots;
    for (const auto& r : a2->positive_roots())
        roots.insert(r.coords);
    CHECK(roots == std::set<std::vector<Coord>>{{1, 0}, {0, 1}, {1, 1}});

    auto g2 = build_root_system('G', 2);
    CHECK(g2->positive_roots().size() == 6);
    CHECK(g2->coxeter_number() == 6);

    auto b2 = build_root_system('B', 2);
    CHECK(b2->positive_roots().size() == 4);
    CHECK(b2->coxeter_number() == 4);
}

TEST_CASE("coxeter numbers match the classical table")
{
    struct Row { char t; int n; int h; };
    const Row table[] = {
        {'A', 3, 4}, {'A', 4, 5}, {'B', 3, 6}, {'C', 3, 6}, {'C', 2, 4},
        {'D', 4, 6}, {'D', 5, 8}, {'F', 4, 12}, {'E', 6, 12},
    };
    for (const Row& row : table) {
        auto rs = build_root_system(row.t, row.n);
        CHECK(rs->coxeter_number() == row.h);
        // and h = height of highest root + 1 as well
        Coord hmax = 0;
        for (const auto& r : rs->positive_roots())
            hmax = std::max(hmax, r.height());
        CHECK(rs->coxeter_number() == hmax + 1);
    }
}

TEST_CASE("invalid type/rank pairs are rejected")
{
    CHECK_THROWS_AS(build_root_system('A', 0), DomainError);
    CHECK_THROWS_AS(build_root_system('B', 1), DomainError);
    CHECK_THROWS_AS(build_root_system('D', 3), DomainError);
    CHECK_THROWS_AS(build_root_system('E', 9), DomainError);
    CHECK_THROWS_AS(build_root_system('G', 3), DomainError);
    CHECK_THROWS_AS(build_root_system('X', 2), DomainError);
}

TEST_CASE("rho pairs to 1 with every simple coroot")
{
    for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 3}, {'B', 2}, {'G', 2}}) {
        auto rs = build_root_system(t, n);
        for (int i = 0; i < rs->rank(); ++i)
            CHECK(rs->pairing(rs->rho(), i) == 1);
    }
}

TEST_CASE("dominance order")
{
    auto a1 = build_root_system('A', 1);
    CHECK(dominance_leq(*a1, W({-2}), W({0})));
    CHECK_FALSE(dominance_leq(*a1, W({-1}), W({0})));
    CHECK_FALSE(dominance_leq(*a1, W({2}), W({0})));

    auto a2 = build_root_system('A', 2);
    CHECK(dominance_leq(*a2, W({0, 0}), W({1, 1})));
    CHECK(dominance_leq(*a2, W({1, 1}), W({1, 1})));
    CHECK_FALSE(dominance_leq(*a2, W({1, 0}), W({0, 1})));

    CHECK(height_diff(*a2, W({0, 0}), W({1, 1})) == 2);
    CHECK(height_diff(*a1, W({0}), W({4})) == 2);
    CHECK_FALSE(height_diff(*a1, W({0}), W({1})).has_value());
}

TEST_CASE("dot action and affine reflections")
{
    auto a1 = build_root_system('A', 1);
    CHECK(dot_action(*a1, std::vector<int>{0}, W({0})) == W({-2}));
    CHECK(dot_action(*a1, std::vector<int>{}, W({5})) == W({5}));

    // s_{alpha, 1*3} . 0 = 4 in A1 with p = 3
    CHECK(affine_reflect(*a1, 0, 1, 3, W({0})) == W({4}));

    // involution fixing the wall <.+rho, alpha^vee> = mp
    auto a2 = build_root_system('A', 2);
    std::mt19937 rng(12345);
    std::uniform_int_distribution<Coord> coord(-6, 6), mdist(-2, 2);
    for (int iter = 0; iter < 200; ++iter) {
        Weight lam = W({coord(rng), coord(rng)});
        std::size_t beta = static_cast<std::size_t>(rng() % a2->positive_roots().size());
        Coord m = mdist(rng);
        Weight refl = affine_reflect(*a2, beta, m, 5, lam);
        CHECK(affine_reflect(*a2, beta, m, 5, refl) == lam);
        Coord v = a2->pairing(lam + a2->rho(), beta);
        Coord v2 = a2->pairing(refl + a2->rho(), beta);
        CHECK(v + v2 == 2 * m * 5);
    }
}

TEST_CASE("enumerate_weyl sizes and signs")
{
    auto a1 = build_root_system('A', 1);
    auto a2 = build_root_system('A', 2);
    auto b2 = build_root_system('B', 2);
    CHECK(enumerate_weyl(*a1).size() == 2);
    CHECK(enumerate_weyl(*a2).size() == 6);
    CHECK(enumerate_weyl(*b2).size() == 8);

    for (auto rs : {a1, a2, b2}) {
        int sign_sum = 0;
        for (const auto& w : enumerate_weyl(*rs))
            sign_sum += w.sign();
        CHECK(sign_sum == 0);
    }

    // the longest element sends rho to -rho
    for (auto rs : {a1, a2, b2}) {
        WeylElement w0 = longest_weyl_element(*rs);
        CHECK(w0.rho_image == rs->rho() * -1);
    }
}

TEST_CASE("dot action round trip through inverse words")
{
    std::mt19937 rng(777);
    for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}}) {
        auto rs = build_root_system(t, n);
        auto weyl = enumerate_weyl(*rs);
        std::uniform_int_distribution<Coord> coord(-5, 5);
        for (int iter = 0; iter < 100; ++iter) {
            const WeylElement& w = weyl[rng() % weyl.size()];
            std::vector<int> winv(w.word.rbegin(), w.word.rend());
            Weight lam = W({coord(rng), coord(rng)});
            CHECK(dot_action(*rs, w.word, dot_action(*rs, winv, lam)) == lam);
        }
    }
}

TEST_CASE("weyl element lengths count inversions")
{
    for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}, {'G', 2}}) {
        auto rs = build_root_system(t, n);
        for (const WeylElement& w : enumerate_weyl(*rs)) {
            // count positive roots sent negative by w (natural action on root
            // coordinates via repeated simple reflections on weight coords)
            int inversions = 0;
            for (const RootVector& beta : rs->positive_roots()) {
                Weight img = weyl_apply(*rs, w.word, rs->root_to_weight(beta));
                auto rv = rs->try_root_vector(img);
                REQUIRE(rv.has_value());
                bool negative = std::all_of(rv->coords.begin(), rv->coords.end(),
                                            [](Coord c) { return c <= 0; });
                if (negative)
                    ++inversions;
            }
            CHECK(inversions == w.length);
        }
    }
}

TEST_CASE("coroot pairings agree with rational root coordinates")
{
    auto g2 = build_root_system('G', 2);
    // <rho, theta^vee> + 1 = h = 6
    CHECK(g2->pairing(g2->rho(), g2->highest_coroot_index()) == 5);

    auto b2 = build_root_system('B', 2);
    // highest coroot of B2 is 2 alpha1^vee + alpha2^vee
    CHECK(b2->positive_coroots()[b2->highest_coroot_index()].coords == std::vector<Coord>{2, 1});
}
