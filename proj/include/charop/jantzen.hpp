/*
 * jantzen.hpp
 * -----------
 * Sum formulas for the torsion filtration of antidominant Verma characters.
 *
 * For antidominant mu the filtration layers D^j(mu) of the Verma module
 * satisfy, with n_beta = -<mu + rho, beta^vee> >= 0,
 *
 *   sum_{j>=1} ch D^j(mu)
 *     = sum_{beta>0} [ sum_{a > n_beta} nu_p(a) ch Delta(s_beta . mu - a beta)
 *                      - sum_{b > 0}    nu_p(b) ch Delta(mu - b beta) ],
 *
 * where nu_p is the p-adic valuation. Each bracket is a certified difference
 * of Verma families whose ceilings drop by height(beta) per index, so every
 * windowed evaluation touches only finitely many terms. In rank 1 the total
 * also has a closed form through valuations of binomial coefficients, which
 * serves as an independent oracle.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "charop/charexpr.hpp"
#include "charop/root_data.hpp"

namespace charop {

// Exact p-adic valuation of a nonzero integer (sign ignored).
int nu_p(Coord p, const Int& m);

// Rank 1 torsion character from binomial valuations:
//   sum_{i>=1} nu_p(|binom(mu, i)|) e^{mu - 2i},  mu < 0,
// with binom(mu, i) = +-binom(i - mu - 1, i) for the negative upper index.
CharExpr sl2_torsion_char_binomial(const Context& ctx, Coord mu);

// The same character as a difference of Verma families; with lambda = -mu - 2:
//   sum_{a > lambda + 1} nu_p(a) ch Delta(lambda - 2a)
//     - sum_{b > 0} nu_p(b) ch Delta(mu - 2b).
CharExpr sl2_torsion_char_verma(const Context& ctx, Coord mu);

// The beta summand of the sum formula at mu; requires <mu + rho, beta^vee> <= 0.
// Identically zero on every window when the pairing vanishes.
CharExpr per_root_summand(const Context& ctx, const Weight& mu, std::size_t posroot_index);

// Per-root summands plus their sum. The total is the character of a direct
// sum of Verma submodules, so its window coefficients are never negative.
struct SumFormulaReport {
    Weight mu;
    std::vector<CharExpr> per_root; // aligned with positive_roots()
    CharExpr total;
    Window window;
};

// Requires mu antidominant (every coordinate negative).
SumFormulaReport jantzen_sum(const Context& ctx, const Weight& mu, const Window& window);

} // namespace charop
