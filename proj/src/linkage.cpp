/*
 * linkage.cpp
 * -----------
 * Orbit folding, strong linkage, Verma-basis algebra, and orbit transport.
 */
#include "charop/linkage.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

namespace charop {

namespace {

void require_prime(const Context& ctx, const char* what)
{
    if (ctx.p < 2)
        throw DomainError(std::string(what) + " requires a prime characteristic");
}

void require_rank(const Context& ctx, const Weight& w, const char* what)
{
    if (w.rank() != static_cast<std::size_t>(ctx.rs->rank()))
        throw DomainError(std::string(what) + ": weight rank does not match the root system");
}

void check_root_index(const RootSystem& rs, std::size_t idx)
{
    if (idx >= rs.positive_roots().size())
        throw DomainError("affine reflection root index out of range");
}

// <x + rho, beta^vee> at a rational point x in fundamental-weight coordinates.
Rat wall_pairing(const RootSystem& rs, const std::vector<Rat>& x, std::size_t idx)
{
    const RootVector& cv = rs.positive_coroots()[idx];
    Rat v = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        v += Rat(cv.coords[i]) * (x[i] + 1);
    return v;
}

// Integer <lambda + rho, beta^vee>.
Coord dot_pairing(const RootSystem& rs, const Weight& lambda, std::size_t idx)
{
    return rs.pairing(lambda, idx) + rs.pairing(rs.rho(), idx);
}

} // namespace

Weight apply_affine_word(const RootSystem& rs, const AffineWeylWord& word, Coord p,
                         const Weight& lambda)
{
    if (p < 2)
        throw DomainError("apply_affine_word requires a prime characteristic");
    Weight out = lambda;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        check_root_index(rs, it->root_index);
        out = affine_reflect(rs, it->root_index, it->m, p, out);
    }
    return out;
}

bool in_fundamental_domain(const Context& ctx, const Weight& nu)
{
    require_prime(ctx, "in_fundamental_domain");
    require_rank(ctx, nu, "in_fundamental_domain");
    const RootSystem& rs = *ctx.rs;
    for (std::size_t idx = 0; idx < rs.positive_roots().size(); ++idx) {
        const Coord v = dot_pairing(rs, nu, idx);
        if (v < 0 || v > ctx.p)
            return false;
    }
    return true;
}

FundamentalRep fundamental_domain_rep(const Context& ctx, const Weight& lambda)
{
    require_prime(ctx, "fundamental_domain_rep");
    require_rank(ctx, lambda, "fundamental_domain_rep");
    const RootSystem& rs = *ctx.rs;
    const Coord p = ctx.p;
    const std::size_t hidx = rs.highest_coroot_index();

    // Fold until cur + rho is dominant with highest-coroot pairing at most p;
    // then every positive pairing sits in [0, p]. The finite folds preserve
    // |cur + rho|^2 and the affine folds strictly decrease it, so the loop
    // terminates.
    Weight cur = lambda;
    AffineWeylWord steps;
    for (;;) {
        std::optional<std::size_t> negative;
        for (std::size_t i = 0; i < static_cast<std::size_t>(rs.rank()); ++i)
            if (dot_pairing(rs, cur, i) < 0) {
                negative = i;
                break;
            }
        if (negative) {
            cur = affine_reflect(rs, *negative, 0, p, cur);
            steps.push_back(AffineReflection{*negative, 0});
            continue;
        }
        const Coord v = dot_pairing(rs, cur, hidx);
        if (v <= p)
            break;
        Coord m = v / p;
        if (v % p == 0)
            m -= 1; // exactly on a wall: reflect through the next one down
        cur = affine_reflect(rs, hidx, m, p, cur);
        steps.push_back(AffineReflection{hidx, m});
    }
    return FundamentalRep{std::move(cur), std::move(steps)};
}

bool strongly_linked(const Context& ctx, const Weight& mu, const Weight& lambda)
{
    require_prime(ctx, "strongly_linked");
    require_rank(ctx, mu, "strongly_linked");
    require_rank(ctx, lambda, "strongly_linked");
    if (mu == lambda)
        return true;
    const RootSystem& rs = *ctx.rs;
    const auto gap = rs.try_root_vector(lambda - mu);
    if (!gap || !gap->nonnegative())
        return false;
    const Coord p = ctx.p;

    std::set<Weight> seen{lambda};
    std::deque<Weight> queue{lambda};
    while (!queue.empty()) {
        const Weight nu = queue.front();
        queue.pop_front();
        for (std::size_t idx = 0; idx < rs.positive_roots().size(); ++idx) {
            const Weight beta = rs.root_to_weight(rs.positive_roots()[idx]);
            const Coord v = dot_pairing(rs, nu, idx);
            // s_{beta,mp} . nu = nu - c beta with c = v - mp, so the downward
            // steps are exactly the positive c in the residue class of v.
            Coord c = v % p;
            if (c <= 0)
                c += p;
            for (;; c += p) {
                const Weight cand = nu - beta * c;
                const auto diff = rs.try_root_vector(cand - mu);
                if (!diff || !diff->nonnegative())
                    break; // below mu somewhere; larger c only sink further
                if (cand == mu)
                    return true;
                if (seen.insert(cand).second)
                    queue.push_back(cand);
            }
        }
    }
    return false;
}

VermaExpansion verma_expansion(const CharExpr& expr, const Window& window,
                               const EvalOptions& opts)
{
    if (!expr.is_valid())
        throw DomainError("verma_expansion of an empty expression");
    const Context& ctx = expr.ctx();
    const RootSystem& rs = *ctx.rs;
    const FiniteCharacter f = eval(expr, window, opts);
    const Region region(rs, window, opts.region_cap);

    // Peel maximal weights first; the region order is height-descending, a
    // linear extension of dominance, so each key is final when visited.
    std::map<Weight, Int> residual = f.coeffs;
    std::map<Weight, Int> out;
    for (std::size_t i = 0; i < region.size(); ++i) {
        const Weight& top = region.weights()[i];
        const auto it = residual.find(top);
        if (it == residual.end() || it->second == 0)
            continue;
        const Int b = it->second;
        out[top] = b;
        for (std::size_t j = i + 1; j < region.size(); ++j) {
            const auto rv = rs.try_root_vector(top - region.weights()[j]);
            if (!rv || !rv->nonnegative())
                continue;
            residual[region.weights()[j]] -= b * kostant_partition(ctx, *rv);
        }
    }
    return VermaExpansion{window, std::move(out)};
}

CharExpr expansion_expr(const Context& ctx, const VermaExpansion& exp)
{
    std::vector<CharExpr> terms;
    for (const auto& kv : exp.coeffs)
        if (kv.second != 0)
            terms.push_back(CharExpr::scale(kv.second, CharExpr::verma(ctx, kv.first)));
    return CharExpr::add(ctx, std::move(terms));
}

UniTriangularMatrix::UniTriangularMatrix(RootSystemPtr rs, std::vector<Weight> index)
    : rs_(std::move(rs)), index_(std::move(index))
{
    if (!rs_)
        throw DomainError("matrix requires a root system");
    for (const Weight& w : index_)
        if (w.rank() != static_cast<std::size_t>(rs_->rank()))
            throw DomainError("matrix index weight rank does not match the root system");
    for (std::size_t i = 0; i < index_.size(); ++i)
        for (std::size_t j = i + 1; j < index_.size(); ++j)
            if (dominance_leq(*rs_, index_[i], index_[j]))
                throw DomainError("matrix index must list dominance-smaller weights later");
    for (std::size_t i = 0; i < index_.size(); ++i)
        entries_[{i, i}] = 1;
}

std::optional<std::size_t> UniTriangularMatrix::position(const Weight& w) const
{
    const auto it = std::find(index_.begin(), index_.end(), w);
    if (it == index_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - index_.begin());
}

void UniTriangularMatrix::set(std::size_t row, std::size_t col, Int value)
{
    if (row >= index_.size() || col >= index_.size())
        throw DomainError("matrix entry out of range");
    if (row == col) {
        if (value != 1)
            throw DomainError("matrix diagonal entries must be 1");
        return;
    }
    if (value == 0) {
        entries_.erase({row, col});
        return;
    }
    if (!dominance_leq(*rs_, index_[row], index_[col]))
        throw DomainError("matrix entry (" + index_[row].str() + ", " + index_[col].str() +
                          ") lies outside the dominance support");
    entries_[{row, col}] = std::move(value);
}

Int UniTriangularMatrix::get(std::size_t row, std::size_t col) const
{
    if (row >= index_.size() || col >= index_.size())
        throw DomainError("matrix entry out of range");
    const auto it = entries_.find({row, col});
    return it == entries_.end() ? Int(0) : it->second;
}

UniTriangularMatrix invert_unitriangular(const UniTriangularMatrix& a)
{
    UniTriangularMatrix b(a.root_system(), a.index());
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t row = col + 1; row < n; ++row) {
            Int s = 0;
            for (std::size_t k = col; k < row; ++k)
                s += a.get(row, k) * b.get(k, col);
            b.set(row, col, -s);
        }
    return b;
}

UniTriangularMatrix multiply(const UniTriangularMatrix& a, const UniTriangularMatrix& b)
{
    if (a.index() != b.index())
        throw DomainError("matrix product requires identical indices");
    UniTriangularMatrix c(a.root_system(), a.index());
    for (std::size_t col = 0; col < a.size(); ++col)
        for (std::size_t row = col + 1; row < a.size(); ++row) {
            Int s = 0;
            for (std::size_t k = col; k <= row; ++k)
                s += a.get(row, k) * b.get(k, col);
            c.set(row, col, std::move(s));
        }
    return c;
}

std::map<Weight, VermaExpansion> split_by_linkage(const Context& ctx, const VermaExpansion& exp)
{
    std::map<Weight, VermaExpansion> out;
    for (const auto& kv : exp.coeffs) {
        const Weight rep = fundamental_domain_rep(ctx, kv.first).rep;
        auto it = out.try_emplace(rep, VermaExpansion{exp.window, {}}).first;
        it->second.coeffs[kv.first] = kv.second;
    }
    return out;
}

bool in_upper_closure(const Context& ctx, const AffineWeylWord& w, const Weight& lambda)
{
    require_prime(ctx, "in_upper_closure");
    require_rank(ctx, lambda, "in_upper_closure");
    const RootSystem& rs = *ctx.rs;
    const Coord p = ctx.p;
    if (p < rs.coxeter_number())
        throw DomainError("in_upper_closure requires p >= the Coxeter number");
    if (!in_fundamental_domain(ctx, lambda))
        throw DomainError("in_upper_closure requires a fundamental-domain weight");

    // Transport the rational interior point x0 = (p/h) rho - rho of C; the
    // alcove w . C is then cut out by n_beta = floor(<w(x0) + rho, beta^vee> / p).
    std::vector<Rat> x(static_cast<std::size_t>(rs.rank()),
                       Rat(p, rs.coxeter_number()) - 1);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        check_root_index(rs, it->root_index);
        const Rat c = wall_pairing(rs, x, it->root_index) - Rat(it->m) * p;
        const Weight beta = rs.root_to_weight(rs.positive_roots()[it->root_index]);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] -= c * beta.coords[i];
    }

    const Weight wl = apply_affine_word(rs, w, p, lambda);
    for (std::size_t idx = 0; idx < rs.positive_roots().size(); ++idx) {
        const Int n = rat_floor(wall_pairing(rs, x, idx) / p);
        const Int v(dot_pairing(rs, wl, idx));
        if (!(n * p < v && v <= (n + 1) * p))
            return false;
    }
    return true;
}

VermaExpansion translate_expansion(const Context& ctx, const VermaExpansion& exp,
                                   const Weight& mu, const Weight& lambda)
{
    require_prime(ctx, "translate_expansion");
    require_rank(ctx, mu, "translate_expansion");
    require_rank(ctx, lambda, "translate_expansion");
    if (!in_fundamental_domain(ctx, mu) || !in_fundamental_domain(ctx, lambda))
        throw DomainError("translate_expansion endpoints must lie in the fundamental domain");
    const RootSystem& rs = *ctx.rs;

    std::map<Weight, Int> out;
    std::vector<Weight> images;
    for (const auto& kv : exp.coeffs) {
        const FundamentalRep fr = fundamental_domain_rep(ctx, kv.first);
        if (fr.rep != mu)
            throw DomainError("translate_expansion: key " + kv.first.str() +
                              " is not in the orbit of " + mu.str());
        const Weight img = apply_affine_word(rs, fr.witness, ctx.p, lambda);
        const auto it = out.try_emplace(img, 0).first;
        it->second += kv.second;
        images.push_back(img);
    }
    return VermaExpansion{Window{prune_ceilings(rs, images), exp.window.depth},
                          std::move(out)};
}

CharExpr wall_simple_char(const Context& ctx, const AffineWeylWord& w, const Weight& lambda,
                          const VermaExpansion& column)
{
    if (!in_upper_closure(ctx, w, lambda))
        throw DomainError("wall_simple_char: w . lambda is outside the upper closure of w . C");
    if (column.coeffs.empty())
        throw DomainError("wall_simple_char: empty column");
    const RootSystem& rs = *ctx.rs;

    const Weight mu0 = fundamental_domain_rep(ctx, column.coeffs.begin()->first).rep;
    for (std::size_t idx = 0; idx < rs.positive_roots().size(); ++idx) {
        const Coord v = dot_pairing(rs, mu0, idx);
        if (v <= 0 || v >= ctx.p)
            throw DomainError("wall_simple_char requires a regular column orbit");
    }
    const Weight wmu = apply_affine_word(rs, w, ctx.p, mu0);
    const auto it = column.coeffs.find(wmu);
    if (it == column.coeffs.end() || it->second != 1)
        throw DomainError("wall_simple_char: column does not contain w . mu0 with coefficient 1");

    return expansion_expr(ctx, translate_expansion(ctx, column, mu0, lambda));
}

} // namespace charop
