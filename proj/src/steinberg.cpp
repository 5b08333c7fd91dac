/*
 * steinberg.cpp
 * -------------
 * Character databases and twisted tensor factorizations.
 */
#include "charop/steinberg.hpp"

#include <algorithm>
#include <memory>

namespace charop {

namespace {

Int int_pow(Coord base, int exp)
{
    return boost::multiprecision::pow(Int(base), static_cast<unsigned>(exp));
}

void require_prime(const Context& ctx, const char* what)
{
    if (ctx.p < 2) throw DomainError(std::string(what) + ": context must fix a prime");
}

void require_rank(const Context& ctx, const Weight& w, const char* what)
{
    if (static_cast<int>(w.rank()) != ctx.rs->rank())
        throw DomainError(std::string(what) + ": weight rank does not match the root system");
}

void require_db(const Context& ctx, const CharDatabase& db, const char* what)
{
    if (!db.compatible_with(ctx))
        throw DomainError(std::string(what) + ": database does not match the context");
}

// Alternating dot-orbit sum of Verma characters.
CharExpr weyl_alternating_sum(const Context& ctx, const Weight& lambda)
{
    std::vector<CharExpr> terms;
    for (const WeylElement& w : enumerate_weyl(*ctx.rs))
        terms.push_back(CharExpr::scale(Int(w.sign()),
                                        CharExpr::verma(ctx, dot_action(*ctx.rs, w, lambda))));
    return CharExpr::add(ctx, std::move(terms));
}

// A window covering the entire support of a character with top weight `top`
// and lowest weight bounded by the longest Weyl image of the top.
Window full_char_window(const RootSystem& rs, const Weight& top)
{
    Weight lowest = weyl_apply(rs, longest_weyl_element(rs).word, top);
    auto depth = height_diff(rs, lowest, top);
    return Window{{top}, depth && *depth > 0 ? *depth : 0};
}

// Visits all nonnegative root-coordinate vectors of the exact total height.
template <typename F>
void for_each_layer_vector(std::vector<Coord>& c, std::size_t pos, Coord remaining, F&& emit)
{
    if (pos + 1 == c.size()) {
        c[pos] = remaining;
        emit();
        c[pos] = 0;
        return;
    }
    for (Coord v = 0; v <= remaining; ++v) {
        c[pos] = v;
        for_each_layer_vector(c, pos + 1, remaining - v, emit);
    }
    c[pos] = 0;
}

} // namespace

// ---------------------------------------------------------------------------
// CharDatabase

CharDatabase::CharDatabase(char type, int rank, Coord p, std::string kind)
    : type_(type), rank_(rank), p_(p), kind_(std::move(kind))
{
    if (p_ < 2) throw DomainError("character database requires a prime");
    (void)Context::make(build_root_system(type, rank), p_); // validates type, rank and p
    if (kind_ != "simple" && kind_ != "tilting")
        throw DomainError("unknown database kind: " + kind_);
}

void CharDatabase::insert(DBEntry entry)
{
    if (static_cast<int>(entry.weight.rank()) != rank_)
        throw DomainError("database entry rank does not match the database");
    if (!entry.values && !entry.builtin)
        throw DomainError("database entry must carry values or a builtin tag");
    Weight key = entry.weight;
    entries_[std::move(key)] = std::move(entry);
}

bool CharDatabase::contains(const Weight& w) const { return entries_.count(w) != 0; }

const DBEntry& CharDatabase::entry(const Weight& w) const
{
    auto it = entries_.find(w);
    if (it == entries_.end())
        throw DomainError("database has no entry for weight " + w.str());
    return it->second;
}

bool CharDatabase::compatible_with(const Context& ctx) const
{
    return ctx.rs && ctx.rs->type_label() == type_ && ctx.rs->rank() == rank_ && ctx.p == p_;
}

void CharDatabase::validate(const Context& ctx) const
{
    if (!compatible_with(ctx)) throw DomainError("database does not match the context");
    for (const auto& kv : entries_) {
        const DBEntry& e = kv.second;
        if (e.values) {
            for (const auto& mv : *e.values) {
                if (mv.second == 0)
                    throw DomainError("database entry for " + e.weight.str() +
                                      " stores a zero coefficient");
                if (!dominance_leq(*ctx.rs, mv.first, e.weight))
                    throw DomainError("database entry for " + e.weight.str() +
                                      " has support above its weight");
            }
            auto top = e.values->find(e.weight);
            if (top == e.values->end() || top->second != 1)
                throw DomainError("database entry for " + e.weight.str() +
                                  " must have coefficient 1 at its own weight");
        } else if (*e.builtin != "verma" && *e.builtin != "weyl") {
            throw DomainError("unknown builtin tag: " + *e.builtin);
        }
    }
}

CharExpr CharDatabase::char_expr(const Context& ctx, const Weight& w) const
{
    if (!compatible_with(ctx)) throw DomainError("database does not match the context");
    const DBEntry& e = entry(w);
    std::string src = kind_ + " db " + std::string(1, type_) + std::to_string(rank_) +
                      " p=" + std::to_string(p_);
    if (e.values) return CharExpr::db_char(ctx, w, *e.values, std::move(src));
    if (*e.builtin == "verma")
        return CharExpr::db_char(ctx, w, CharExpr::verma(ctx, w), std::move(src));
    if (*e.builtin == "weyl")
        return CharExpr::db_char(ctx, w, weyl_alternating_sum(ctx, w), std::move(src));
    throw DomainError("unknown builtin tag: " + *e.builtin);
}

CharDatabase sl2_restricted_db(Coord p)
{
    CharDatabase db('A', 1, p);
    for (Coord m = 0; m < p; ++m) {
        std::map<Weight, Int> vals;
        for (Coord i = 0; i <= m; ++i) vals[Weight({m - 2 * i})] = 1;
        db.insert(DBEntry{Weight({m}), std::move(vals), std::nullopt,
                          "rank 1 restricted closed form"});
    }
    return db;
}

// ---------------------------------------------------------------------------
// Decompositions

RestrictedDecomposition restricted_decompose(const Context& ctx, const Weight& lambda, int r)
{
    require_prime(ctx, "restricted_decompose");
    require_rank(ctx, lambda, "restricted_decompose");
    if (r < 1) throw DomainError("restricted_decompose: r must be positive");
    Int q = int_pow(ctx.p, r);
    std::vector<Coord> lo(lambda.rank()), hi(lambda.rank());
    for (std::size_t i = 0; i < lambda.rank(); ++i) {
        Int rem = Int(lambda.coords[i]) % q;
        if (rem < 0) rem += q;
        lo[i] = to_coord(rem);
        hi[i] = to_coord((Int(lambda.coords[i]) - rem) / q);
    }
    return RestrictedDecomposition{Weight(std::move(lo)), Weight(std::move(hi))};
}

std::vector<Weight> p_adic_digits(const Context& ctx, const Weight& lambda)
{
    require_prime(ctx, "p_adic_digits");
    require_rank(ctx, lambda, "p_adic_digits");
    if (!ctx.rs->is_dominant(lambda))
        throw DomainError("p_adic_digits requires a dominant weight");
    std::vector<Weight> digits;
    std::vector<Coord> cur = lambda.coords;
    bool more = true;
    while (more) {
        std::vector<Coord> d(cur.size());
        more = false;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            d[i] = cur[i] % ctx.p;
            cur[i] /= ctx.p;
            more = more || cur[i] != 0;
        }
        digits.push_back(Weight(std::move(d)));
    }
    return digits;
}

bool in_y(const RootSystem& rs, const Weight& omega)
{
    if (static_cast<int>(omega.rank()) != rs.rank()) return false;
    return std::all_of(omega.coords.begin(), omega.coords.end(),
                       [](Coord c) { return c == -1 || c == 0; });
}

YDecomposition y_decompose(const Context& ctx, const Weight& lambda)
{
    require_prime(ctx, "y_decompose");
    require_rank(ctx, lambda, "y_decompose");
    int r = 0;
    Int q = 1;
    auto fits = [&] {
        for (Coord c : lambda.coords)
            if (Int(c) < -q || Int(c) > q - 1) return false;
        return true;
    };
    while (!fits()) {
        ++r;
        q *= ctx.p;
    }
    YDecomposition out;
    out.r = r;
    std::vector<Coord> omega(lambda.rank()), rest(lambda.rank());
    for (std::size_t i = 0; i < lambda.rank(); ++i) {
        omega[i] = lambda.coords[i] < 0 ? -1 : 0;
        rest[i] = to_coord(Int(lambda.coords[i]) - Int(omega[i]) * q);
    }
    out.omega = Weight(std::move(omega));
    out.restricted = Weight(std::move(rest));
    return out;
}

// ---------------------------------------------------------------------------
// Simple characters

CharExpr dominant_simple_char(const Context& ctx, const Weight& lambda, const CharDatabase& db)
{
    require_prime(ctx, "dominant_simple_char");
    require_rank(ctx, lambda, "dominant_simple_char");
    require_db(ctx, db, "dominant_simple_char");
    if (!ctx.rs->is_dominant(lambda))
        throw DomainError("dominant_simple_char requires a dominant weight");
    std::vector<Weight> digits = p_adic_digits(ctx, lambda);
    CharExpr acc = db.char_expr(ctx, digits[0]);
    for (std::size_t k = 1; k < digits.size(); ++k)
        acc = CharExpr::star(acc, CharExpr::frob(static_cast<int>(k), db.char_expr(ctx, digits[k])));
    return acc;
}

CharExpr y_simple_char(const Context& ctx, const Weight& omega, int r, const CharDatabase& db)
{
    require_prime(ctx, "y_simple_char");
    require_rank(ctx, omega, "y_simple_char");
    require_db(ctx, db, "y_simple_char");
    if (r < 1) throw DomainError("y_simple_char: twist step must be positive");
    if (!in_y(*ctx.rs, omega))
        throw DomainError("y_simple_char requires coordinates in {-1, 0}");

    // The base factor ch L((1 - p^r) omega) is restricted dominant; evaluate
    // it once over its full support.
    Int q = int_pow(ctx.p, r);
    Weight nu = scale_weight(omega, 1 - q);
    CharExpr base = dominant_simple_char(ctx, nu, db);
    auto base_map = std::make_shared<const std::map<Weight, Int>>(
        eval(base, full_char_window(*ctx.rs, nu)).coeffs);

    std::optional<Coord> delta;
    for (const auto& kv : *base_map)
        if (kv.first != nu) {
            Coord d = *height_diff(*ctx.rs, kv.first, nu);
            delta = delta ? std::min(*delta, d) : d;
        }

    const Coord p = ctx.p;
    const Context cctx = ctx;
    InfProductSpec spec;
    spec.factor = [cctx, base_map, r](std::size_t k) {
        CharExpr f = CharExpr::finite(cctx, *base_map);
        return k == 0 ? f : CharExpr::frob(r * static_cast<int>(k), std::move(f));
    };
    spec.drop = [delta, p, r](std::size_t k) -> std::optional<Rat> {
        if (!delta) return std::nullopt;
        return Rat(int_pow(p, r * static_cast<int>(k)) * *delta);
    };
    spec.tail_shift = [omega, p, r](long trunc) {
        return scale_weight(omega, int_pow(p, r * static_cast<int>(trunc + 1)));
    };
    spec.total_top = omega;
    return inf_product(ctx, std::move(spec));
}

CharExpr resolve_y(const Context& ctx, const Weight& omega, const CharDatabase& db)
{
    require_prime(ctx, "resolve_y");
    require_rank(ctx, omega, "resolve_y");
    if (!in_y(*ctx.rs, omega))
        throw DomainError("resolve_y requires coordinates in {-1, 0}");
    if (omega == ctx.rs->zero_weight()) return CharExpr::basis(ctx, omega);
    if (omega == ctx.rs->rho() * -1) return CharExpr::verma(ctx, omega);
    if (db.compatible_with(ctx) && db.contains(omega)) return db.char_expr(ctx, omega);
    return y_simple_char(ctx, omega, 1, db);
}

CharExpr general_simple_char(const Context& ctx, const Weight& lambda, const CharDatabase& db)
{
    require_prime(ctx, "general_simple_char");
    require_rank(ctx, lambda, "general_simple_char");
    require_db(ctx, db, "general_simple_char");
    if (ctx.rs->is_dominant(lambda)) return dominant_simple_char(ctx, lambda, db);
    YDecomposition yd = y_decompose(ctx, lambda);
    CharExpr tail = resolve_y(ctx, yd.omega, db);
    if (yd.r == 0) return tail;
    return CharExpr::star(dominant_simple_char(ctx, yd.restricted, db),
                          CharExpr::frob(yd.r, std::move(tail)));
}

CharExpr antidominant_simple_char(const Context& ctx, const Weight& lambda, const CharDatabase& db)
{
    require_prime(ctx, "antidominant_simple_char");
    require_rank(ctx, lambda, "antidominant_simple_char");
    require_db(ctx, db, "antidominant_simple_char");
    if (!ctx.rs->is_antidominant(lambda))
        throw DomainError("antidominant_simple_char requires all coordinates negative");

    int r = 1;
    Int q(ctx.p);
    auto covered = [&] {
        for (Coord c : lambda.coords)
            if (Int(-c) > q) return false;
        return true;
    };
    while (!covered()) {
        ++r;
        q *= ctx.p;
    }
    Weight lambda0 = lambda + scale_weight(ctx.rs->rho(), q);

    // The twisted ch Delta(-rho) as an explicit summable family: layer m
    // collects all mu of height m with coefficient P(mu) at -p^r (rho + mu).
    const Context cctx = ctx;
    const Int qq = q;
    auto factory = [cctx, qq]() -> FamilyEnumerator {
        auto layer = std::make_shared<Coord>(0);
        return [cctx, qq, layer]() -> std::optional<FamilyTerm> {
            const Coord m = (*layer)++;
            std::map<Weight, Int> vals;
            std::vector<Weight> ceilings;
            std::vector<Coord> c(static_cast<std::size_t>(cctx.rs->rank()), 0);
            for_each_layer_vector(c, 0, m, [&] {
                Weight w = scale_weight(cctx.rs->rho() + cctx.rs->root_to_weight(RootVector(c)),
                                        -qq);
                ceilings.push_back(w);
                Int count = cctx.kostant->count(RootVector(c));
                if (count != 0) vals[std::move(w)] = std::move(count);
            });
            return FamilyTerm{std::move(ceilings), CharExpr::finite(cctx, std::move(vals))};
        };
    };
    CharExpr tail = family_sum(ctx, {scale_weight(ctx.rs->rho(), -q)}, std::move(factory));
    return CharExpr::star(dominant_simple_char(ctx, lambda0, db), std::move(tail));
}

} // namespace charop
