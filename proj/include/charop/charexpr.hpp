/*
 * charexpr.hpp
 * ------------
 * The completed character ring as lazy expression trees with exact evaluation
 * on finite windows.
 *
 * A formal character is a function X -> Z whose support is bounded above by
 * finitely many cones X(<= mu_i); the mu_i are called ceilings. A Window is a
 * finite evaluation region: all weights lying under some ceiling within a
 * given height depth. Evaluation returns coefficients that are exact for
 * every weight of the region; everything outside is simply not asked for.
 *
 * Expression nodes:
 *   Basis(lambda)            e^lambda
 *   Verma(lambda)            sum_{mu <= lambda} P(lambda - mu) e^mu
 *   Finite(map)              explicit finitely supported character
 *   DBChar(lambda, payload)  character looked up in a database
 *   Add, Scale, Star         module structure and convolution product
 *   Frob(r, f)               Frobenius twist f^(r): coefficient of lambda is
 *                            f(lambda / p^r) when p^r divides lambda, else 0
 *   FamilySum(enumerator)    certified summable family
 *   InfProduct(spec)         certified infinite star product
 *
 * Certificates. A FamilySum enumerator yields terms with declared formal
 * ceilings; after the index monotone_after the maximum ceiling height must be
 * nonincreasing and eventually fall below any bound, so evaluation can stop
 * once a term's ceilings drop below the window floor. An InfProduct has
 * factors f_k = e^{eta_k} (1 + lower); it carries the per-factor height drop
 * of the lower part (nondecreasing in k, eventually exceeding any bound), the
 * closed-form tail shift sum_{j>K} eta_j, and the top weight of the full
 * product. Evaluation keeps factors 0..K and replaces the rest by the tail
 * shift, with K chosen so the discarded corrections fall below the window.
 * Violated certificates surface as CertificateError via the iteration cap.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "charop/errors.hpp"
#include "charop/ints.hpp"
#include "charop/root_data.hpp"

namespace charop {

// Evaluation region: weights under some ceiling within the given height depth.
struct Window {
    std::vector<Weight> ceilings;
    Coord depth = 0;
};

struct EvalOptions {
    std::uint64_t term_cap = 1'000'000;   // family/product enumeration cap
    std::uint64_t region_cap = 2'000'000; // window region size cap
};

// Memoized Kostant partition function for one root system. Thread-safe.
class PartitionTable {
public:
    explicit PartitionTable(RootSystemPtr rs);

    // Number of multisets of positive roots summing to nu (0 outside the
    // nonnegative cone).
    Int count(const RootVector& nu) const;

    // Persistence support: dump and reload the top-level memo.
    std::vector<std::pair<RootVector, Int>> snapshot() const;
    void merge(const std::vector<std::pair<RootVector, Int>>& entries) const;

    const RootSystem& root_system() const { return *rs_; }

private:
    Int count_suffix(const std::vector<Coord>& nu, std::size_t k) const;

    RootSystemPtr rs_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<RootVector, Int, RootVectorHash> memo_;
    mutable std::map<std::pair<std::size_t, std::vector<Coord>>, Int> suffix_memo_;
};

// Shared evaluation context: root system, prime, partition table.
struct Context {
    RootSystemPtr rs;
    Coord p = 0; // 0 means "no prime fixed"; Frobenius twists then refuse
    std::shared_ptr<PartitionTable> kostant;

    static Context make(RootSystemPtr rs, Coord p);
    bool same_as(const Context& o) const { return rs.get() == o.rs.get() && p == o.p; }
};

Int kostant_partition(const Context& ctx, const RootVector& nu);

// Enumerated window region with cached rational root coordinates and height
// functional values, sorted by height descending (a linear extension of the
// dominance order, largest first).
class Region {
public:
    Region(const RootSystem& rs, const Window& window, std::uint64_t cap);

    std::size_t size() const { return weights_.size(); }
    const std::vector<Weight>& weights() const { return weights_; }
    std::optional<std::size_t> index_of(const Weight& w) const;
    const std::vector<Rat>& root_coords(std::size_t i) const { return rcoords_[i]; }
    const Rat& height(std::size_t i) const { return heights_[i]; }

private:
    std::vector<Weight> weights_;
    std::vector<std::vector<Rat>> rcoords_;
    std::vector<Rat> heights_;
    std::unordered_map<Weight, std::size_t, WeightHash> index_;
};

// Finitely many exact coefficients plus the certificates that produced them.
struct FiniteCharacter {
    Window window;                 // region on which coeffs are exact
    std::vector<Weight> ceilings;  // support bound of the underlying character
    std::map<Weight, Int> coeffs;  // zero coefficients dropped

    Int coeff(const Weight& w) const
    {
        auto it = coeffs.find(w);
        return it == coeffs.end() ? Int(0) : it->second;
    }
};

namespace detail {
struct Node;
}

// Immutable shared expression over the completed character ring.
class CharExpr {
public:
    CharExpr() = default;

    const Context& ctx() const;
    const std::vector<Weight>& ceilings() const;
    bool is_valid() const { return node_ != nullptr; }

    static CharExpr basis(const Context& ctx, const Weight& lambda);
    static CharExpr verma(const Context& ctx, const Weight& lambda);
    static CharExpr finite(const Context& ctx, std::map<Weight, Int> values);
    static CharExpr db_char(const Context& ctx, const Weight& lambda, CharExpr payload,
                            std::string source);
    static CharExpr db_char(const Context& ctx, const Weight& lambda,
                            std::map<Weight, Int> values, std::string source);
    static CharExpr add(const Context& ctx, std::vector<CharExpr> children);
    static CharExpr scale(const Int& k, CharExpr child);
    static CharExpr star(CharExpr f, CharExpr g);
    static CharExpr frob(int r, CharExpr child);

    const detail::Node& node() const { return *node_; }

private:
    friend CharExpr make_node(detail::Node n);
    explicit CharExpr(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const detail::Node> node_;
};

// One term of a summable family: a declared formal ceiling set (used for the
// stopping rule even when the term is numerically zero) plus the term itself.
struct FamilyTerm {
    std::vector<Weight> ceilings;
    CharExpr expr;
};

// Stateful enumerator: returns the next term or nullopt when exhausted. The
// factory produces a fresh enumerator per evaluation and must be
// deterministic.
using FamilyEnumerator = std::function<std::optional<FamilyTerm>()>;
using FamilyEnumeratorFactory = std::function<FamilyEnumerator()>;

struct InfProductSpec {
    std::function<CharExpr(std::size_t)> factor;         // f_k
    std::function<std::optional<Rat>(std::size_t)> drop; // height drop of factor k (nullopt = infinite)
    std::function<Weight(long)> tail_shift;              // sum_{j > K} eta_j, defined for K >= -1
    Weight total_top;                                    // tail_shift(-1)
};

CharExpr family_sum(const Context& ctx, std::vector<Weight> global_ceilings,
                    FamilyEnumeratorFactory make_enumerator, std::size_t monotone_after = 0);
CharExpr inf_product(const Context& ctx, InfProductSpec spec);

namespace detail {

struct BasisNode { Weight lambda; };
struct VermaNode { Weight lambda; };
struct FiniteNode { std::map<Weight, Int> values; };
struct DBCharNode {
    Weight lambda;
    std::optional<std::map<Weight, Int>> values; // exactly one of values/payload is set
    CharExpr payload;
    std::string source;
};
struct AddNode { std::vector<CharExpr> children; };
struct ScaleNode { Int scalar; CharExpr child; };
struct StarNode { CharExpr lhs, rhs; };
struct FrobNode { int r; CharExpr child; };
struct FamilySumNode { FamilyEnumeratorFactory make_enumerator; std::size_t monotone_after; };
struct InfProductNode { InfProductSpec spec; };

struct Node {
    Context ctx;
    std::vector<Weight> ceilings;
    std::variant<BasisNode, VermaNode, FiniteNode, DBCharNode, AddNode, ScaleNode, StarNode,
                 FrobNode, FamilySumNode, InfProductNode>
        payload;
};

} // namespace detail

// Exact evaluation of every coefficient in region(window).
FiniteCharacter eval(const CharExpr& expr, const Window& window, const EvalOptions& opts = {});

// Window-exact comparison.
bool equal_on(const CharExpr& f, const CharExpr& g, const Window& window,
              const EvalOptions& opts = {});
bool leq_on(const CharExpr& f, const CharExpr& g, const Window& window,
            const EvalOptions& opts = {});

// Keep only the dominance-maximal weights of a ceiling candidate set.
std::vector<Weight> prune_ceilings(const RootSystem& rs, std::vector<Weight> candidates);

} // namespace charop
