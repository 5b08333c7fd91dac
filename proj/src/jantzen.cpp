/*
 * jantzen.cpp
 * -----------
 * Valuations and certified Verma families for the sum formulas.
 */
#include "charop/jantzen.hpp"

#include <memory>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace charop {

namespace {

void require_prime(const Context& ctx, const char* what)
{
    if (ctx.p < 2)
        throw DomainError(std::string(what) + " requires a prime characteristic");
}

void require_rank_one(const Context& ctx, const char* what)
{
    if (ctx.rs->rank() != 1)
        throw DomainError(std::string(what) + " is defined for rank 1 only");
}

// sum_{b > 0} nu_p(b) ch Delta(mu - b beta) as a certified family.
CharExpr valuation_verma_family(const Context& ctx, const Weight& mu, const Weight& beta,
                                Coord offset)
{
    const Coord p = ctx.p;
    auto factory = [ctx, mu, beta, offset, p]() -> FamilyEnumerator {
        auto k = std::make_shared<Coord>(0);
        return [ctx, mu, beta, offset, p, k]() -> std::optional<FamilyTerm> {
            *k += 1;
            const Weight w = mu - beta * *k;
            CharExpr term = CharExpr::scale(Int(nu_p(p, Int(offset + *k))),
                                            CharExpr::verma(ctx, w));
            return FamilyTerm{{w}, std::move(term)};
        };
    };
    return family_sum(ctx, {mu - beta}, std::move(factory));
}

} // namespace

int nu_p(Coord p, const Int& m)
{
    if (p < 2)
        throw DomainError("nu_p requires a prime p");
    if (m == 0)
        throw DomainError("nu_p is undefined at 0");
    Int a = abs(m);
    int v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

CharExpr sl2_torsion_char_binomial(const Context& ctx, Coord mu)
{
    require_prime(ctx, "sl2_torsion_char_binomial");
    require_rank_one(ctx, "sl2_torsion_char_binomial");
    if (mu >= 0)
        throw DomainError("sl2_torsion_char_binomial requires mu < 0");

    const Coord p = ctx.p;
    auto factory = [ctx, mu, p]() -> FamilyEnumerator {
        // |binom(mu, i)| = binom(i - mu - 1, i), maintained incrementally.
        struct State {
            Coord i = 0;
            Int binom = 1;
        };
        auto st = std::make_shared<State>();
        return [ctx, mu, p, st]() -> std::optional<FamilyTerm> {
            st->i += 1;
            st->binom = st->binom * (st->i - mu - 1) / st->i;
            const Weight w({mu - 2 * st->i});
            std::map<Weight, Int> vals{{w, Int(nu_p(p, st->binom))}};
            return FamilyTerm{{w}, CharExpr::finite(ctx, std::move(vals))};
        };
    };
    return family_sum(ctx, {Weight({mu - 2})}, std::move(factory));
}

CharExpr sl2_torsion_char_verma(const Context& ctx, Coord mu)
{
    require_prime(ctx, "sl2_torsion_char_verma");
    require_rank_one(ctx, "sl2_torsion_char_verma");
    if (mu >= 0)
        throw DomainError("sl2_torsion_char_verma requires mu < 0");

    const Weight alpha = ctx.rs->root_to_weight(ctx.rs->positive_roots()[0]);
    const Coord lambda = -mu - 2;
    // a > lambda + 1 reindexed as a = (lambda + 1) + k, so
    // Delta(lambda - 2a) = Delta(mu - 2k).
    CharExpr first = valuation_verma_family(ctx, Weight({mu}), alpha, lambda + 1);
    CharExpr second = valuation_verma_family(ctx, Weight({mu}), alpha, 0);
    return CharExpr::add(ctx, {std::move(first), CharExpr::scale(-1, std::move(second))});
}

CharExpr per_root_summand(const Context& ctx, const Weight& mu, std::size_t posroot_index)
{
    require_prime(ctx, "per_root_summand");
    if (mu.rank() != static_cast<std::size_t>(ctx.rs->rank()))
        throw DomainError("per_root_summand: weight rank does not match the root system");
    if (posroot_index >= ctx.rs->positive_roots().size())
        throw DomainError("per_root_summand: root index out of range");

    const RootSystem& rs = *ctx.rs;
    const Coord pairing = rs.pairing(mu, posroot_index) + rs.pairing(rs.rho(), posroot_index);
    if (pairing > 0)
        throw DomainError("per_root_summand requires <mu + rho, beta^vee> <= 0 at " + mu.str());
    const Weight beta = rs.root_to_weight(rs.positive_roots()[posroot_index]);

    // With n = -<mu + rho, beta^vee>, the reflected family reindexes as
    // s_beta . mu - a beta = mu - (a - n) beta, a = n + k.
    CharExpr reflected = valuation_verma_family(ctx, mu, beta, -pairing);
    CharExpr plain = valuation_verma_family(ctx, mu, beta, 0);
    return CharExpr::add(ctx, {std::move(reflected), CharExpr::scale(-1, std::move(plain))});
}

SumFormulaReport jantzen_sum(const Context& ctx, const Weight& mu, const Window& window)
{
    require_prime(ctx, "jantzen_sum");
    if (mu.rank() != static_cast<std::size_t>(ctx.rs->rank()))
        throw DomainError("jantzen_sum: weight rank does not match the root system");
    if (!ctx.rs->is_antidominant(mu))
        throw DomainError("jantzen_sum requires an antidominant weight, got " + mu.str());

    SumFormulaReport report;
    report.mu = mu;
    report.window = window;
    for (std::size_t idx = 0; idx < ctx.rs->positive_roots().size(); ++idx)
        report.per_root.push_back(per_root_summand(ctx, mu, idx));
    report.total = CharExpr::add(ctx, report.per_root);
    return report;
}

} // namespace charop
