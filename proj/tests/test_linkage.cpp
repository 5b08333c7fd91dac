/*
 * test_linkage.cpp
 * ----------------
 * Unit tests for orbit folding, strong linkage, Verma-basis algebra, and
 * orbit transport.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "charop/linkage.hpp"
#include "charop/steinberg.hpp"
#include "oracles.hpp"

using namespace charop;
namespace ct = charop::testing;

namespace {

Weight W(std::vector<Coord> c) { return Weight(std::move(c)); }

Weight random_weight(std::mt19937& rng, int rank, Coord lo, Coord hi)
{
    std::uniform_int_distribution<Coord> dist(lo, hi);
    std::vector<Coord> c(static_cast<std::size_t>(rank));
    for (Coord& x : c) x = dist(rng);
    return W(std::move(c));
}

AffineWeylWord random_word(std::mt19937& rng, const RootSystem& rs, int len)
{
    std::uniform_int_distribution<std::size_t> root(0, rs.positive_roots().size() - 1);
    std::uniform_int_distribution<Coord> level(-3, 3);
    AffineWeylWord w;
    for (int i = 0; i < len; ++i) w.push_back(AffineReflection{root(rng), level(rng)});
    return w;
}

} // namespace

TEST_CASE("affine words replay rightmost first")
{
    Context ctx = Context::make(build_root_system('A', 1), 3);
    const RootSystem& rs = *ctx.rs;

    CHECK(apply_affine_word(rs, {}, 3, W({5})) == W({5}));
    CHECK(apply_affine_word(rs, {AffineReflection{0, 0}}, 3, W({0})) == W({-2}));
    CHECK(apply_affine_word(rs, {AffineReflection{0, 2}, AffineReflection{0, 1}}, 3, W({1})) ==
          W({7}));
    CHECK_THROWS_AS((void)apply_affine_word(rs, {AffineReflection{9, 0}}, 3, W({0})),
                    DomainError);
}

TEST_CASE("fundamental domain representatives")
{
    Context ctx = Context::make(build_root_system('A', 1), 3);

    auto seven = fundamental_domain_rep(ctx, W({7}));
    CHECK(seven.rep == W({1}));
    CHECK(apply_affine_word(*ctx.rs, seven.witness, 3, seven.rep) == W({7}));

    auto minus_two = fundamental_domain_rep(ctx, W({-2}));
    CHECK(minus_two.rep == W({0}));
    CHECK(minus_two.witness.size() == 1);

    for (Coord c : {Coord(-1), Coord(0), Coord(1), Coord(2)}) {
        auto fixed = fundamental_domain_rep(ctx, W({c}));
        CHECK(fixed.rep == W({c}));
        CHECK(fixed.witness.empty());
        CHECK(in_fundamental_domain(ctx, W({c})));
    }
    CHECK_FALSE(in_fundamental_domain(ctx, W({3})));
    CHECK_FALSE(in_fundamental_domain(ctx, W({-2})));

    std::mt19937 rng(3);
    struct Case {
        char type;
        int rank;
        Coord p;
    };
    for (const Case& c : {Case{'A', 1, 3}, Case{'A', 2, 2}, Case{'A', 2, 3}, Case{'B', 2, 2},
                          Case{'B', 2, 5}}) {
        Context cc = Context::make(build_root_system(c.type, c.rank), c.p);
        for (int trial = 0; trial < 25; ++trial) {
            Weight lambda = random_weight(rng, c.rank, -30, 30);
            auto fr = fundamental_domain_rep(cc, lambda);
            CHECK(in_fundamental_domain(cc, fr.rep));
            CHECK(apply_affine_word(*cc.rs, fr.witness, c.p, fr.rep) == lambda);

            auto again = fundamental_domain_rep(cc, fr.rep);
            CHECK(again.rep == fr.rep);
            CHECK(again.witness.empty());

            // The representative is an orbit invariant.
            Weight moved = apply_affine_word(*cc.rs, random_word(rng, *cc.rs, 3), c.p, lambda);
            CHECK(fundamental_domain_rep(cc, moved).rep == fr.rep);
        }
    }
}

TEST_CASE("strong linkage in rank one")
{
    Context ctx = Context::make(build_root_system('A', 1), 3);
    CHECK(strongly_linked(ctx, W({0}), W({0})));
    CHECK(strongly_linked(ctx, W({-2}), W({0})));
    CHECK(strongly_linked(ctx, W({-6}), W({0})));
    CHECK_FALSE(strongly_linked(ctx, W({-1}), W({0})));
    CHECK_FALSE(strongly_linked(ctx, W({0}), W({-2})));
    CHECK_FALSE(strongly_linked(ctx, W({4}), W({0})));  // in the orbit, but above lambda
    CHECK_FALSE(strongly_linked(ctx, W({-4}), W({0}))); // below lambda, not in the orbit
}

TEST_CASE("strong linkage matches brute enumeration")
{
    std::mt19937 rng(7);
    struct Case {
        char type;
        int rank;
        Coord p;
        Coord span;
    };
    int linked_seen = 0;
    for (const Case& c : {Case{'A', 1, 2, 10}, Case{'A', 1, 3, 10}, Case{'A', 2, 2, 4},
                          Case{'A', 2, 3, 4}}) {
        Context ctx = Context::make(build_root_system(c.type, c.rank), c.p);
        for (int trial = 0; trial < 40; ++trial) {
            Weight lambda = random_weight(rng, c.rank, -c.span, c.span);
            Weight mu = random_weight(rng, c.rank, -c.span, c.span);
            if (trial % 2 == 0) {
                // Bias half the pairs onto the root lattice below lambda.
                std::uniform_int_distribution<Coord> steps(0, 3);
                mu = lambda;
                for (std::size_t k = 0; k < static_cast<std::size_t>(c.rank); ++k)
                    mu = mu - ctx.rs->root_to_weight(ctx.rs->positive_roots()[k]) * steps(rng);
            }
            bool fast = strongly_linked(ctx, mu, lambda);
            bool brute = ct::brute_strongly_linked(*ctx.rs, c.p, mu, lambda);
            CHECK(fast == brute);
            if (fast) {
                ++linked_seen;
                CHECK(fundamental_domain_rep(ctx, mu).rep ==
                      fundamental_domain_rep(ctx, lambda).rep);
            }
        }
    }
    CHECK(linked_seen > 10); // the sample must exercise the linked branch
}

TEST_CASE("verma expansion peels exactly")
{
    Context ctx = Context::make(build_root_system('A', 1), 3);

    auto unit = verma_expansion(CharExpr::basis(ctx, W({0})), Window{{W({0})}, 4});
    CHECK(unit.coeffs == std::map<Weight, Int>{{W({0}), 1}, {W({-2}), -1}});

    auto verma = verma_expansion(CharExpr::verma(ctx, W({5})), Window{{W({5})}, 9});
    CHECK(verma.coeffs == std::map<Weight, Int>{{W({5}), 1}});

    CharDatabase db = sl2_restricted_db(3);
    auto simple = verma_expansion(general_simple_char(ctx, W({-2}), db), Window{{W({-2})}, 40});
    for (Coord k = 0; k <= 6; ++k) {
        CHECK(simple.coeffs.at(W({-2 - 6 * k})) == 1);
        CHECK(simple.coeffs.at(W({-6 - 6 * k})) == -1);
    }
    CHECK(simple.coeffs.count(W({-4})) == 0);
    // +1 keys -2-6k down to -80, -1 keys -6-6k down to -78.
    CHECK(simple.coeffs.size() == 27);
}

TEST_CASE("verma expansion round trips on random expressions")
{
    for (Coord p : {Coord(3), Coord(2)}) {
        char type = p == 3 ? 'A' : 'B';
        int rank = p == 3 ? 1 : 2;
        Context ctx = Context::make(build_root_system(type, rank), p);
        ct::ExprGen gen(ctx, 1000 + static_cast<std::uint32_t>(p));
        for (int trial = 0; trial < 25; ++trial) {
            CharExpr e = gen.gen(3);
            Window win{{gen.random_weight(0, 4)}, 6};
            auto exp = verma_expansion(e, win);
            CHECK(equal_on(e, expansion_expr(ctx, exp), win));
        }
    }
}

TEST_CASE("unitriangular matrices invert exactly")
{
    RootSystemPtr rs = build_root_system('A', 1);

    UniTriangularMatrix one(rs, {W({0})});
    auto one_inv = invert_unitriangular(one);
    CHECK(one_inv.get(0, 0) == 1);

    UniTriangularMatrix two(rs, {W({2}), W({0})});
    two.set(1, 0, 5);
    auto two_inv = invert_unitriangular(two);
    CHECK(two_inv.get(1, 0) == -5);

    std::mt19937 rng(11);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Weight> index;
        for (Coord c = 10; c >= 0; c -= 2) index.push_back(W({c}));
        UniTriangularMatrix a(rs, index);
        for (std::size_t i = 0; i < index.size(); ++i)
            for (std::size_t j = 0; j < i; ++j) a.set(i, j, entry(rng));
        auto inv = invert_unitriangular(a);
        auto prod = multiply(a, inv);
        for (std::size_t i = 0; i < index.size(); ++i)
            for (std::size_t j = 0; j < index.size(); ++j)
                CHECK(prod.get(i, j) == (i == j ? 1 : 0));
        auto back = invert_unitriangular(inv);
        CHECK(back.entries() == a.entries());
    }
}

TEST_CASE("unitriangular matrices reject malformed input")
{
    RootSystemPtr a1 = build_root_system('A', 1);
    RootSystemPtr a2 = build_root_system('A', 2);

    CHECK_THROWS_AS(UniTriangularMatrix(a1, {W({0}), W({2})}), DomainError);
    CHECK_THROWS_AS(UniTriangularMatrix(a1, {W({0}), W({0})}), DomainError);
    CHECK_THROWS_AS(UniTriangularMatrix(a1, {W({0, 0})}), DomainError);

    UniTriangularMatrix m(a1, {W({2}), W({0})});
    CHECK_THROWS_AS(m.set(0, 0, 2), DomainError);
    CHECK_THROWS_AS(m.set(0, 1, 1), DomainError); // 2 is not below 0
    CHECK_THROWS_AS(m.set(2, 0, 1), DomainError);
    m.set(1, 0, 0); // explicit zero is always allowed
    CHECK(m.get(1, 0) == 0);

    // Incomparable weights admit no off-diagonal entry in either direction.
    UniTriangularMatrix inc(a2, {W({1, 0}), W({0, 1})});
    CHECK_THROWS_AS(inc.set(1, 0, 1), DomainError);
    CHECK_THROWS_AS(inc.set(0, 1, 1), DomainError);
}

TEST_CASE("split by linkage partitions expansions")
{
    Context ctx = Context::make(build_root_system('A', 1), 3);
    Window win{{W({0})}, 4};

    VermaExpansion exp{win, {{W({0}), 1}, {W({-2}), -1}, {W({-1}), 5}}};
    auto parts = split_by_linkage(ctx, exp);
    REQUIRE(parts.size() == 2);
    CHECK(parts.at(W({0})).coeffs == std::map<Weight, Int>{{W({0}), 1}, {W({-2}), -1}});
    CHECK(parts.at(W({-1})).coeffs == std::map<Weight, Int>{{W({-1}), 5}});

    std::map<Weight, Int> merged;
    for (const auto& kv : parts)
        for (const auto& term : kv.second.coeffs) merged[term.first] += term.second;
    CHECK(merged == exp.coeffs);

    CHECK(split_by_linkage(ctx, VermaExpansion{win, {}}).empty());
}

TEST_CASE("upper closure membership")
{
    Context a1 = Context::make(build_root_system('A', 1), 3);
    const AffineWeylWord e;
    const AffineWeylWord s0{AffineReflection{0, 0}};

    CHECK_FALSE(in_upper_closure(a1, e, W({-1})));
    CHECK(in_upper_closure(a1, s0, W({-1})));
    CHECK(in_upper_closure(a1, e, W({2})));

    // Regular weights lie in the upper closure of every alcove that contains
    // them, so the test passes for arbitrary words.
    std::mt19937 rng(13);
    for (int trial = 0; trial < 20; ++trial)
        CHECK(in_upper_closure(a1, random_word(rng, *a1.rs, trial % 4), W({trial % 2})));

    Context a2 = Context::make(build_root_system('A', 2), 5);
    CHECK(in_upper_closure(a2, e, W({0, 0})));
    for (int trial = 0; trial < 10; ++trial)
        CHECK(in_upper_closure(a2, random_word(rng, *a2.rs, 3), W({0, 0})));

    Context small = Context::make(build_root_system('A', 2), 2);
    CHECK_THROWS_AS((void)in_upper_closure(small, e, W({0, 0})), DomainError);
    CHECK_THROWS_AS((void)in_upper_closure(a1, e, W({5})), DomainError);
}

TEST_CASE("translate expansion transports orbits")
{
    Context ctx = Context::make(build_root_system('A', 1), 3);
    Window win{{W({0})}, 2};
    VermaExpansion exp{win, {{W({0}), 1}, {W({-2}), -1}}};

    auto identity = translate_expansion(ctx, exp, W({0}), W({0}));
    CHECK(identity.coeffs == exp.coeffs);

    auto wall = translate_expansion(ctx, exp, W({0}), W({-1}));
    CHECK(wall.coeffs == std::map<Weight, Int>{{W({-1}), 0}});

    auto other = translate_expansion(ctx, exp, W({0}), W({1}));
    CHECK(other.coeffs == std::map<Weight, Int>{{W({1}), 1}, {W({-3}), -1}});

    VermaExpansion bad{win, {{W({-1}), 1}}};
    CHECK_THROWS_AS((void)translate_expansion(ctx, bad, W({0}), W({1})), DomainError);
    CHECK_THROWS_AS((void)translate_expansion(ctx, exp, W({5}), W({0})), DomainError);
}

TEST_CASE("translation to a wall cancels the alternating sum")
{
    Context ctx = Context::make(build_root_system('A', 2), 3);
    Window win{{W({0, 0})}, 6};
    auto exp = verma_expansion(CharExpr::basis(ctx, W({0, 0})), win);
    CHECK(exp.coeffs.size() == 6); // the dot orbit of the Weyl group

    // (-1, 1) sits on the alpha_1 wall, so the six keys collide in pairs of
    // opposite sign and every merged coefficient vanishes.
    auto moved = translate_expansion(ctx, exp, W({0, 0}), W({-1, 1}));
    CHECK(moved.coeffs.size() == 3);
    for (const auto& kv : moved.coeffs) CHECK(kv.second == 0);

    // (0, 1) sits only on an affine wall; the finite stabilizer is trivial
    // and the transported keys stay distinct.
    auto regular_wall = translate_expansion(ctx, exp, W({0, 0}), W({0, 1}));
    CHECK(regular_wall.coeffs.size() == 6);
}

TEST_CASE("wall characters telescope in rank one")
{
    Context ctx = Context::make(build_root_system('A', 1), 3);
    CharDatabase db = sl2_restricted_db(3);
    const AffineWeylWord s0{AffineReflection{0, 0}};

    auto column = verma_expansion(general_simple_char(ctx, W({-2}), db), Window{{W({-2})}, 40});
    CharExpr wall = wall_simple_char(ctx, s0, W({-1}), column);
    CHECK(equal_on(wall, CharExpr::verma(ctx, W({-1})), Window{{W({-1})}, 36}));

    // The leading term: a regular weight translated along the identity.
    auto top = verma_expansion(CharExpr::verma(ctx, W({0})), Window{{W({0})}, 4});
    CHECK(equal_on(wall_simple_char(ctx, {}, W({0}), top), CharExpr::verma(ctx, W({0})),
                   Window{{W({0})}, 10}));

    CHECK_THROWS_AS((void)wall_simple_char(ctx, {}, W({-1}), top), DomainError);
    CHECK_THROWS_AS((void)wall_simple_char(ctx, s0, W({0}), top), DomainError);

    VermaExpansion singular{Window{{W({-1})}, 2}, {{W({-1}), 1}}};
    CHECK_THROWS_AS((void)wall_simple_char(ctx, {}, W({0}), singular), DomainError);
}
