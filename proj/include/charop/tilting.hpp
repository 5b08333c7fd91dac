/*
 * tilting.hpp
 * -----------
 * Character identities for finite-dimensional and infinite tilting modules.
 *
 * Tilting characters beyond closed-form rank 1 fixtures are user-supplied
 * data in a CharDatabase of kind "tilting". Two identities make large
 * weights reachable. The twist product
 *
 *   ch T(lambda + p^r mu) = ch T(lambda) * ch T(mu)^(r)
 *
 * holds for lambda in (p^r - 1) rho + X_r and dominant mu when p >= 2h - 2;
 * the bound is a checked precondition with an explicit override, and nothing
 * is guaranteed under the override. The infinite tilting character is
 *
 *   ch T^inf(lambda) = ch T(lambda + p^r rho) * ch Delta(-rho)^(r)
 *
 * for lambda + rho in X_r under the same bound, while the inequality
 * ch T^inf(lambda) <= ch T(lambda + p^r rho) * ch Delta(-rho)^(r) needs no
 * bound at all and is exposed as a windowed check.
 */
#pragma once

#include "charop/charexpr.hpp"
#include "charop/root_data.hpp"
#include "charop/steinberg.hpp"

namespace charop {

// Classical finite-dimensional character chi(lambda) as the alternating sum
// sum_w sign(w) ch Delta(w . lambda); requires lambda dominant. Enumerates
// the Weyl group, so intended for small rank.
CharExpr weyl_char(const Context& ctx, const Weight& lambda);

// Structural check specific to tilting databases: kind "tilting", dominant
// entry weights, and full symmetry under the natural Weyl action, on top of
// the generic database validation.
void validate_tilting_db(const Context& ctx, const CharDatabase& db);

// ch T(lambda + p^r mu) = ch T(lambda) * ch T(mu)^(r); both factors must be
// database entries.
CharExpr donkin_product(const Context& ctx, const CharDatabase& db, const Weight& lambda,
                        const Weight& mu, int r, bool force = false);

// ch T^inf(lambda) = ch T(lambda + p^r rho) * ch Delta(-rho)^(r).
CharExpr infty_tilting_char(const Context& ctx, const CharDatabase& db, const Weight& lambda,
                            int r, bool force = false);

// leq_on(candidate, ch T(lambda + p^r rho) * ch Delta(-rho)^(r), window).
// The right-hand side bounds ch T^inf(lambda) from above for every p, so a
// false result disqualifies the candidate.
bool infty_tilting_upper_bound_check(const Context& ctx, const CharDatabase& db,
                                     const CharExpr& candidate, const Weight& lambda, int r,
                                     const Window& window, const EvalOptions& opts = {});

// Rank 1 tilting characters: ch T(m) = chi(m) for 0 <= m <= p-1 and
// chi(m) + chi(2p-2-m) for p <= m <= 2p-2, extended through the twist
// product to all m <= p^2 - 1.
CharDatabase sl2_tilting_fixture(Coord p);

} // namespace charop
