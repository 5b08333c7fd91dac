/*
 * linkage.hpp
 * -----------
 * Affine Weyl orbit machinery at characteristic p.
 *
 * The group W_p acts on weights through the dot action of the reflections
 * s_{beta,mp} in the hyperplanes <x + rho, beta^vee> = mp. The closed
 * fundamental domain
 *
 *   Cbar = { nu : 0 <= <nu + rho, beta^vee> <= p for all beta > 0 }
 *
 * meets every orbit exactly once; fundamental_domain_rep folds a weight into
 * Cbar and keeps the reflections it used as a replayable witness. On top of
 * the orbit machinery sit the strong linkage test (downward reflection
 * chains), the windowed change of basis into Verma characters, linkage-class
 * splitting, upper-closure alcove tests, and the character-level transport of
 * Verma expansions between orbits.
 */
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "charop/charexpr.hpp"
#include "charop/root_data.hpp"

namespace charop {

// The reflection s_{beta,mp} in the wall <x + rho, beta^vee> = mp, named by
// the positive-root index of beta and the integer level m.
struct AffineReflection {
    std::size_t root_index = 0;
    Coord m = 0;

    bool operator==(const AffineReflection& o) const
    {
        return root_index == o.root_index && m == o.m;
    }
};

// A word of affine reflections, composed left to right (rightmost first),
// matching the finite Weyl word convention.
using AffineWeylWord = std::vector<AffineReflection>;

// Dot action of a word on a weight.
Weight apply_affine_word(const RootSystem& rs, const AffineWeylWord& word, Coord p,
                         const Weight& lambda);

// true iff 0 <= <nu + rho, beta^vee> <= p for every positive root beta.
bool in_fundamental_domain(const Context& ctx, const Weight& nu);

// Orbit representative in Cbar plus a word sending it back:
// apply_affine_word(rs, witness, p, rep) == lambda.
struct FundamentalRep {
    Weight rep;
    AffineWeylWord witness;
};
FundamentalRep fundamental_domain_rep(const Context& ctx, const Weight& lambda);

// true iff mu is reachable from lambda by a chain of affine reflections, each
// producing a strictly smaller weight in the dominance order (mu == lambda
// counts). Downward search with memoization over the finite interval.
bool strongly_linked(const Context& ctx, const Weight& mu, const Weight& lambda);

// Coefficients of a character against the Verma basis, valid on the window:
// the source equals sum_mu coeffs[mu] ch Delta(mu) on region(window).
struct VermaExpansion {
    Window window;
    std::map<Weight, Int> coeffs;
};

// Greedy top-down peeling of eval(expr, window): repeatedly record the
// coefficient at a maximal remaining weight and subtract that multiple of the
// Verma character. Keys carry nonzero coefficients and lie in region(window).
VermaExpansion verma_expansion(const CharExpr& expr, const Window& window,
                               const EvalOptions& opts = {});

// The expansion as an expression node, sum_mu coeffs[mu] * Verma(mu).
CharExpr expansion_expr(const Context& ctx, const VermaExpansion& exp);

// Square integer matrix indexed by weights, ordered so that dominance-smaller
// weights come later. Entries may be nonzero only on the diagonal (all 1) and
// where the row weight is dominance-below the column weight.
class UniTriangularMatrix {
public:
    UniTriangularMatrix(RootSystemPtr rs, std::vector<Weight> index);

    std::size_t size() const { return index_.size(); }
    const std::vector<Weight>& index() const { return index_; }
    const RootSystemPtr& root_system() const { return rs_; }
    std::optional<std::size_t> position(const Weight& w) const;

    void set(std::size_t row, std::size_t col, Int value);
    Int get(std::size_t row, std::size_t col) const;
    const std::map<std::pair<std::size_t, std::size_t>, Int>& entries() const
    {
        return entries_;
    }

private:
    RootSystemPtr rs_;
    std::vector<Weight> index_;
    std::map<std::pair<std::size_t, std::size_t>, Int> entries_;
};

// Exact inverse over the integers by back-substitution.
UniTriangularMatrix invert_unitriangular(const UniTriangularMatrix& a);

// Matrix product of two matrices over the same index, in the same order.
UniTriangularMatrix multiply(const UniTriangularMatrix& a, const UniTriangularMatrix& b);

// Partition of an expansion by the Cbar representative of its keys; the parts
// sum to the input coefficientwise and share its window.
std::map<Weight, VermaExpansion> split_by_linkage(const Context& ctx, const VermaExpansion& exp);

// true iff w . lambda lies in the upper closure of the alcove w . C, tested
// through the alcove indices n_beta of the transported rational interior
// point x0 = (p/h) rho - rho:
//   n_beta p < <w . lambda + rho, beta^vee> <= (n_beta + 1) p for all beta.
// Requires lambda in Cbar and p >= h so that C has an interior point.
bool in_upper_closure(const Context& ctx, const AffineWeylWord& w, const Weight& lambda);

// Transport of an expansion over W_p . mu to the orbit of lambda: each key
// y . mu maps to y . lambda with the same coefficient, recovered through the
// key's witness word. Collisions between transported keys merge additively
// and may leave explicit zero coefficients.
VermaExpansion translate_expansion(const Context& ctx, const VermaExpansion& exp,
                                   const Weight& mu, const Weight& lambda);

// ch L(w . lambda) on a wall: transports a simple character's Verma-basis
// column from a regular orbit to the orbit of lambda,
//   ch L(w . lambda) = sum_y c_{y,w} ch Delta(y . lambda),
// where column holds c_{y,w} keyed by the regular weight y . mu0. Requires
// w . lambda in the upper closure of w . C and a regular column rep mu0, and
// the column must contain w . mu0 with coefficient 1.
CharExpr wall_simple_char(const Context& ctx, const AffineWeylWord& w, const Weight& lambda,
                          const VermaExpansion& column);

} // namespace charop
