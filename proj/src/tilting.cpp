/*
 * tilting.cpp
 * -----------
 * Tilting character identities on top of a tilting character database.
 */
#include "charop/tilting.hpp"

#include <string>
#include <utility>
#include <vector>

#include "charop/errors.hpp"

namespace charop {

namespace {

void require_prime(const Context& ctx, const char* what)
{
    if (ctx.p < 2) throw DomainError(std::string(what) + ": requires a prime context");
}

void require_rank(const Context& ctx, const Weight& w, const char* what)
{
    if (static_cast<int>(w.rank()) != ctx.rs->rank())
        throw DomainError(std::string(what) + ": weight rank does not match the root system");
}

void require_tilting_db(const Context& ctx, const CharDatabase& db, const char* what)
{
    if (!db.compatible_with(ctx))
        throw DomainError(std::string(what) + ": database does not match the context");
    if (db.kind() != "tilting")
        throw DomainError(std::string(what) + ": database kind is not tilting");
}

// p^r as a coordinate, with the overflow check done in exact arithmetic.
Coord prime_power(const Context& ctx, int r, const char* what)
{
    if (r < 1) throw DomainError(std::string(what) + ": twist exponent must be positive");
    Int q(1);
    for (int i = 0; i < r; ++i) q *= ctx.p;
    return to_coord(q);
}

void require_twist_bound(const Context& ctx, bool force, const char* what)
{
    const Coord bound = 2 * static_cast<Coord>(ctx.rs->coxeter_number()) - 2;
    if (!force && ctx.p < bound)
        throw DomainError(std::string(what) + ": requires p >= 2h - 2 (pass force to override)");
}

// ch T(lambda + p^r rho) * ch Delta(-rho)^(r), the shared right-hand side of
// the infinite tilting identity and its unconditional upper bound.
CharExpr infty_tilting_rhs(const Context& ctx, const CharDatabase& db, const Weight& lambda,
                           int r, const char* what)
{
    require_prime(ctx, what);
    require_rank(ctx, lambda, what);
    require_tilting_db(ctx, db, what);
    const Coord q = prime_power(ctx, r, what);
    for (Coord c : lambda.coords)
        if (c < -1 || c + 1 >= q)
            throw DomainError(std::string(what) +
                              ": lambda + rho must be restricted for the twist power");
    const Weight shifted = lambda + ctx.rs->rho() * q;
    return CharExpr::star(db.char_expr(ctx, shifted),
                          CharExpr::frob(r, CharExpr::verma(ctx, ctx.rs->rho() * -1)));
}

} // namespace

CharExpr weyl_char(const Context& ctx, const Weight& lambda)
{
    require_rank(ctx, lambda, "weyl_char");
    if (!ctx.rs->is_dominant(lambda))
        throw DomainError("weyl_char: weight must be dominant");
    std::vector<CharExpr> terms;
    for (const WeylElement& w : enumerate_weyl(*ctx.rs))
        terms.push_back(CharExpr::scale(Int(w.sign()),
                                        CharExpr::verma(ctx, dot_action(*ctx.rs, w, lambda))));
    return CharExpr::add(ctx, std::move(terms));
}

void validate_tilting_db(const Context& ctx, const CharDatabase& db)
{
    db.validate(ctx);
    if (db.kind() != "tilting")
        throw DomainError("validate_tilting_db: database kind is not tilting");
    const RootSystem& rs = *ctx.rs;
    for (const auto& [w, entry] : db.entries()) {
        if (!rs.is_dominant(w))
            throw DomainError("validate_tilting_db: entry weight is not dominant");
        if (entry.builtin) {
            // The alternating dot-orbit sum at a dominant weight is symmetric;
            // a Verma character never is.
            if (*entry.builtin != "weyl")
                throw DomainError("validate_tilting_db: builtin " + *entry.builtin +
                                  " is not Weyl symmetric");
            continue;
        }
        // Stored supports are complete, so symmetry is checked on the map
        // itself; simple reflections generate the whole group.
        const auto& values = *entry.values;
        auto coeff = [&values](const Weight& v) {
            auto it = values.find(v);
            return it == values.end() ? Int(0) : it->second;
        };
        for (const auto& [v, c] : values)
            for (int i = 0; i < rs.rank(); ++i)
                if (coeff(weyl_apply(rs, {i}, v)) != c)
                    throw DomainError("validate_tilting_db: entry is not Weyl symmetric");
    }
}

CharExpr donkin_product(const Context& ctx, const CharDatabase& db, const Weight& lambda,
                        const Weight& mu, int r, bool force)
{
    require_prime(ctx, "donkin_product");
    require_rank(ctx, lambda, "donkin_product");
    require_rank(ctx, mu, "donkin_product");
    require_tilting_db(ctx, db, "donkin_product");
    require_twist_bound(ctx, force, "donkin_product");
    const Coord q = prime_power(ctx, r, "donkin_product");
    for (Coord c : lambda.coords)
        if (c < q - 1 || c >= 2 * q - 1)
            throw DomainError(
                "donkin_product: lambda must lie in (p^r - 1) rho + the restricted box");
    if (!ctx.rs->is_dominant(mu))
        throw DomainError("donkin_product: mu must be dominant");
    return CharExpr::star(db.char_expr(ctx, lambda), CharExpr::frob(r, db.char_expr(ctx, mu)));
}

CharExpr infty_tilting_char(const Context& ctx, const CharDatabase& db, const Weight& lambda,
                            int r, bool force)
{
    require_twist_bound(ctx, force, "infty_tilting_char");
    return infty_tilting_rhs(ctx, db, lambda, r, "infty_tilting_char");
}

bool infty_tilting_upper_bound_check(const Context& ctx, const CharDatabase& db,
                                     const CharExpr& candidate, const Weight& lambda, int r,
                                     const Window& window, const EvalOptions& opts)
{
    const CharExpr rhs = infty_tilting_rhs(ctx, db, lambda, r, "infty_tilting_upper_bound_check");
    return leq_on(candidate, rhs, window, opts);
}

CharDatabase sl2_tilting_fixture(Coord p)
{
    CharDatabase db('A', 1, p, "tilting");
    const Context ctx = Context::make(build_root_system('A', 1), p);
    auto chi_values = [](Coord m) {
        std::map<Weight, Int> values;
        for (Coord w = -m; w <= m; w += 2) values[Weight{{w}}] += 1;
        return values;
    };
    for (Coord m = 0; m <= p - 1; ++m)
        db.insert({Weight{{m}}, chi_values(m), std::nullopt, "rank 1 tilting closed form"});
    for (Coord m = p; m <= 2 * p - 2; ++m) {
        std::map<Weight, Int> values = chi_values(m);
        for (const auto& [w, c] : chi_values(2 * p - 2 - m)) values[w] += c;
        db.insert({Weight{{m}}, std::move(values), std::nullopt, "rank 1 tilting closed form"});
    }
    // Extend through the twist product, peeling the unique representative in
    // [p - 1, 2p - 1) so the quotient digit is already present.
    for (Coord m = 2 * p - 1; m <= p * p - 1; ++m) {
        const Coord lam = p - 1 + (m - (p - 1)) % p;
        const Weight lambda{{lam}};
        const Weight mu{{(m - lam) / p}};
        const CharExpr product = donkin_product(ctx, db, lambda, mu, 1);
        const FiniteCharacter fc = eval(product, Window{{Weight{{m}}}, 2 * m});
        db.insert({Weight{{m}}, fc.coeffs, std::nullopt, "rank 1 tilting twist product"});
    }
    return db;
}

} // namespace charop
