/*
 * root_data.hpp
 * -------------
 * Root systems of finite type, the weight lattice, and (affine) Weyl group
 * combinatorics.
 *
 * Conventions:
 *  - Weights live in fundamental-weight coordinates: coords[i] = <lambda, alpha_i^vee>.
 *  - Roots and coroots live in simple-root (resp. simple-coroot) coordinates.
 *  - The Cartan matrix is stored as cartan[i][j] = <alpha_j, alpha_i^vee>, so a
 *    root vector v maps to weight coordinates by w_i = sum_j cartan[i][j] v_j.
 *  - Weyl words are lists of simple-reflection indices composed left to right,
 *    i.e. word = {i1, i2, i3} acts as s_{i1} s_{i2} s_{i3} (rightmost first).
 */
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "charop/errors.hpp"
#include "charop/ints.hpp"

namespace charop {

using Coord = std::int64_t;

// Weight in fundamental-weight coordinates.
struct Weight {
    std::vector<Coord> coords;

    Weight() = default;
    explicit Weight(std::vector<Coord> c) : coords(std::move(c)) {}

    std::size_t rank() const { return coords.size(); }

    bool operator==(const Weight& o) const { return coords == o.coords; }
    bool operator!=(const Weight& o) const { return coords != o.coords; }
    bool operator<(const Weight& o) const { return coords < o.coords; } // lexicographic, for ordered maps

    Weight operator+(const Weight& o) const;
    Weight operator-(const Weight& o) const;
    Weight operator*(Coord k) const;

    std::string str() const;
};

// Element of the root lattice in simple-root coordinates.
struct RootVector {
    std::vector<Coord> coords;

    RootVector() = default;
    explicit RootVector(std::vector<Coord> c) : coords(std::move(c)) {}

    std::size_t rank() const { return coords.size(); }
    bool operator==(const RootVector& o) const { return coords == o.coords; }
    bool operator!=(const RootVector& o) const { return coords != o.coords; }
    bool operator<(const RootVector& o) const { return coords < o.coords; }

    RootVector operator+(const RootVector& o) const;
    RootVector operator-(const RootVector& o) const;

    // height(v) = sum of simple-root coordinates
    Coord height() const;
    bool nonnegative() const;

    std::string str() const;
};

struct WeightHash {
    std::size_t operator()(const Weight& w) const;
};
struct RootVectorHash {
    std::size_t operator()(const RootVector& v) const;
};

// Weyl group element: a word in simple reflections plus its canonical key,
// the image of rho under the natural (non-dot) action.
struct WeylElement {
    std::vector<int> word;
    Weight rho_image;
    int length = 0;

    int sign() const { return length % 2 == 0 ? 1 : -1; }
};

class RootSystem {
public:
    char type_label() const { return type_; }
    int rank() const { return rank_; }
    std::string name() const { return std::string(1, type_) + std::to_string(rank_); }

    // cartan()[i][j] = <alpha_j, alpha_i^vee>
    const std::vector<std::vector<Coord>>& cartan() const { return cartan_; }

    // All positive roots, ordered by height (the first rank() entries are the
    // simple roots), with positive_coroots()[k] the coroot of positive_roots()[k]
    // in simple-coroot coordinates.
    const std::vector<RootVector>& positive_roots() const { return positive_roots_; }
    const std::vector<RootVector>& positive_coroots() const { return positive_coroots_; }

    const Weight& rho() const { return rho_; }
    int coxeter_number() const { return coxeter_number_; }
    std::size_t highest_coroot_index() const { return highest_coroot_index_; }

    Weight zero_weight() const { return Weight(std::vector<Coord>(rank_, 0)); }

    // Coordinate conversions. weight_to_root is an exact rational solve of the
    // Cartan system; try_root_vector succeeds only on the root lattice.
    Weight root_to_weight(const RootVector& v) const;
    std::vector<Rat> weight_to_root(const Weight& w) const;
    std::optional<RootVector> try_root_vector(const Weight& w) const;

    // <lambda, beta^vee> for the k-th positive root.
    Coord pairing(const Weight& lambda, std::size_t posroot_index) const;

    // Rational height functional: H(alpha_j) = 1 for every simple root, so
    // lam <= mu implies H(mu) - H(lam) = height(mu - lam).
    Rat height_functional(const Weight& w) const;

    // Natural (non-dot) simple reflection on a weight.
    Weight simple_reflection(int i, const Weight& w) const;

    bool is_dominant(const Weight& w) const;
    bool is_antidominant(const Weight& w) const; // all coordinates < 0

    friend std::shared_ptr<const RootSystem> build_root_system(char type, int rank);

private:
    RootSystem() = default;

    char type_ = '?';
    int rank_ = 0;
    std::vector<std::vector<Coord>> cartan_;
    std::vector<std::vector<Rat>> inv_cartan_;
    std::vector<Coord> symmetrizers_; // d_i with d_i * cartan[i][j] symmetric
    std::vector<RootVector> positive_roots_;
    std::vector<RootVector> positive_coroots_;
    Weight rho_;
    int coxeter_number_ = 0;
    std::size_t highest_coroot_index_ = 0;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

// Narrowing conversion with an overflow check.
Coord to_coord(const Int& v);

// Coordinatewise product by an arbitrary-precision scalar.
Weight scale_weight(const Weight& w, const Int& k);

// Constructs the root system, generating positive roots by the closure
// algorithm and validating all structural invariants. Throws DomainError on an
// invalid (type, rank) pair.
RootSystemPtr build_root_system(char type, int rank);

// true iff mu - lambda is a nonnegative integer combination of positive roots,
// i.e. lambda <= mu in the dominance order.
bool dominance_leq(const RootSystem& rs, const Weight& lambda, const Weight& mu);

// height(mu - lambda) when lambda and mu are comparable modulo the root
// lattice (difference integral); nullopt otherwise.
std::optional<Coord> height_diff(const RootSystem& rs, const Weight& lambda, const Weight& mu);

// Natural action of a Weyl word on a weight (rightmost reflection first).
Weight weyl_apply(const RootSystem& rs, const std::vector<int>& word, const Weight& w);

// Dot action w . lambda = w(lambda + rho) - rho.
Weight dot_action(const RootSystem& rs, const std::vector<int>& word, const Weight& lambda);
Weight dot_action(const RootSystem& rs, const WeylElement& w, const Weight& lambda);

// Affine reflection s_{beta, mp} . lambda = s_beta . lambda + m p beta, the
// involution fixing the wall <. + rho, beta^vee> = mp. beta is given by its
// index into positive_roots().
Weight affine_reflect(const RootSystem& rs, std::size_t posroot_index, Coord m, Coord p,
                      const Weight& lambda);

// The full Weyl group by BFS on the orbit of rho; lengths are BFS depths.
std::vector<WeylElement> enumerate_weyl(const RootSystem& rs);

// The longest element.
WeylElement longest_weyl_element(const RootSystem& rs);

} // namespace charop
