/*
 * steinberg.hpp
 * -------------
 * Twisted tensor factorizations of simple characters.
 *
 * Every weight lambda splits as lambda = lambda0 + p^r omega with lambda0
 * restricted (coordinates in [0, p^r)) and omega in Y, the set of weights
 * with coordinates in {-1, 0}; r is the least power that brings every
 * coordinate into range. The simple character then factors as
 *
 *   ch L(lambda) = ch L(lambda0) * ch L(omega)^(r).
 *
 * Restricted dominant characters reduce to base-p digits, each resolved from
 * a database of restricted simple characters. Characters at omega in Y come
 * from the p-adic identity omega = sum_k p^{rk} (1 - p^r) omega: the simple
 * character is the infinite product of twists of ch L((1 - p^r) omega), made
 * evaluable by the closed-form tail shift p^{r(K+1)} omega. The two poles of
 * Y are free: ch L(0) = e^0 and ch L(-rho) = ch Delta(-rho).
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charop/charexpr.hpp"
#include "charop/root_data.hpp"

namespace charop {

// One stored character: either explicit coefficients or a builtin rule
// ("verma" for ch Delta(weight), "weyl" for the alternating dot-orbit sum).
struct DBEntry {
    Weight weight;
    std::optional<std::map<Weight, Int>> values;
    std::optional<std::string> builtin;
    std::string provenance;
};

// An immutable-by-convention table of characters for one (type, rank, p).
class CharDatabase {
public:
    CharDatabase(char type, int rank, Coord p, std::string kind = "simple");

    void insert(DBEntry entry);
    bool contains(const Weight& w) const;
    const DBEntry& entry(const Weight& w) const;
    const std::map<Weight, DBEntry>& entries() const { return entries_; }

    char type() const { return type_; }
    int rank() const { return rank_; }
    Coord p() const { return p_; }
    const std::string& kind() const { return kind_; }

    bool compatible_with(const Context& ctx) const;

    // Full structural check: context compatibility, entry weights against
    // stored supports, top coefficient 1, known builtin tags.
    void validate(const Context& ctx) const;

    // The database character at w as an expression node.
    CharExpr char_expr(const Context& ctx, const Weight& w) const;

private:
    char type_;
    int rank_;
    Coord p_;
    std::string kind_;
    std::map<Weight, DBEntry> entries_;
};

// Restricted simple characters of rank 1: ch L(m) = sum_{i=0..m} e^{m-2i}
// for 0 <= m <= p-1.
CharDatabase sl2_restricted_db(Coord p);

// lambda = restricted + p^r * quotient with restricted coordinates in [0, p^r).
struct RestrictedDecomposition {
    Weight restricted;
    Weight quotient;
};
RestrictedDecomposition restricted_decompose(const Context& ctx, const Weight& lambda, int r);

// Base-p digits of a dominant weight, least significant first; every digit is
// restricted and the list is never empty.
std::vector<Weight> p_adic_digits(const Context& ctx, const Weight& lambda);

// Coordinates all in {-1, 0}.
bool in_y(const RootSystem& rs, const Weight& omega);

// lambda = restricted + p^r * omega with omega in Y and r minimal (r = 0
// exactly when lambda is itself in Y).
struct YDecomposition {
    Weight restricted;
    Weight omega;
    int r = 0;
};
YDecomposition y_decompose(const Context& ctx, const Weight& lambda);

// ch L(lambda) for dominant lambda: the product of twisted digit characters.
CharExpr dominant_simple_char(const Context& ctx, const Weight& lambda, const CharDatabase& db);

// ch L(omega) for omega in Y as the certified infinite product of twists of
// ch L((1 - p^r) omega), r >= 1.
CharExpr y_simple_char(const Context& ctx, const Weight& omega, int r, const CharDatabase& db);

// ch L(omega) for omega in Y by the cheapest available route: free poles,
// then database entries, then the infinite product with r = 1.
CharExpr resolve_y(const Context& ctx, const Weight& omega, const CharDatabase& db);

// ch L(lambda) for arbitrary lambda via the Y factorization.
CharExpr general_simple_char(const Context& ctx, const Weight& lambda, const CharDatabase& db);

// ch L(lambda) for antidominant lambda (all coordinates negative), written as
// ch L(lambda + p^r rho) times the explicit summable family
// sum_{mu >= 0} P(mu) e^{-p^r (rho + mu)} in place of the twisted ch Delta(-rho).
CharExpr antidominant_simple_char(const Context& ctx, const Weight& lambda,
                                  const CharDatabase& db);

} // namespace charop
