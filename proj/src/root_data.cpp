/*
 * root_data.cpp
 * -------------
 * Construction of finite-type root systems and the Weyl group operations
 * declared in root_data.hpp.
 */
#include "charop/root_data.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace charop {

namespace {

void check_same_rank(std::size_t a, std::size_t b, const char* what)
{
    if (a != b)
        throw DomainError(std::string("rank mismatch in ") + what);
}

std::string coords_str(const std::vector<Coord>& c)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ',';
        os << c[i];
    }
    os << ']';
    return os.str();
}

std::size_t hash_coords(const std::vector<Coord>& c)
{
    // FNV-1a over the coordinate bytes
    std::size_t h = 1469598103934665603ull;
    for (Coord x : c) {
        for (int b = 0; b < 8; ++b) {
            h ^= static_cast<std::size_t>((x >> (8 * b)) & 0xff);
            h *= 1099511628211ull;
        }
    }
    return h;
}

} // namespace

Weight Weight::operator+(const Weight& o) const
{
    check_same_rank(coords.size(), o.coords.size(), "Weight::operator+");
    std::vector<Coord> r(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i)
        r[i] = coords[i] + o.coords[i];
    return Weight(std::move(r));
}

Weight Weight::operator-(const Weight& o) const
{
    check_same_rank(coords.size(), o.coords.size(), "Weight::operator-");
    std::vector<Coord> r(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i)
        r[i] = coords[i] - o.coords[i];
    return Weight(std::move(r));
}

Weight Weight::operator*(Coord k) const
{
    std::vector<Coord> r(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i)
        r[i] = coords[i] * k;
    return Weight(std::move(r));
}

std::string Weight::str() const { return coords_str(coords); }

Coord to_coord(const Int& v)
{
    static const Int lo(std::numeric_limits<Coord>::min());
    static const Int hi(std::numeric_limits<Coord>::max());
    if (v < lo || v > hi) throw ResourceError("coordinate exceeds 64-bit range");
    return v.convert_to<Coord>();
}

Weight scale_weight(const Weight& w, const Int& k)
{
    std::vector<Coord> c(w.rank());
    for (std::size_t i = 0; i < w.rank(); ++i)
        c[i] = to_coord(Int(w.coords[i]) * k);
    return Weight(std::move(c));
}

RootVector RootVector::operator+(const RootVector& o) const
{
    check_same_rank(coords.size(), o.coords.size(), "RootVector::operator+");
    std::vector<Coord> r(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i)
        r[i] = coords[i] + o.coords[i];
    return RootVector(std::move(r));
}

RootVector RootVector::operator-(const RootVector& o) const
{
    check_same_rank(coords.size(), o.coords.size(), "RootVector::operator-");
    std::vector<Coord> r(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i)
        r[i] = coords[i] - o.coords[i];
    return RootVector(std::move(r));
}

Coord RootVector::height() const
{
    return std::accumulate(coords.begin(), coords.end(), Coord(0));
}

bool RootVector::nonnegative() const
{
    return std::all_of(coords.begin(), coords.end(), [](Coord c) { return c >= 0; });
}

std::string RootVector::str() const { return coords_str(coords); }

std::size_t WeightHash::operator()(const Weight& w) const { return hash_coords(w.coords); }
std::size_t RootVectorHash::operator()(const RootVector& v) const { return hash_coords(v.coords); }

namespace {

// Cartan matrix for the given finite type, cartan[i][j] = <alpha_j, alpha_i^vee>.
// Bourbaki numbering throughout (B_n: alpha_n short; C_n: alpha_n long; G_2:
// alpha_1 short; F_4: alpha_3, alpha_4 short).
std::vector<std::vector<Coord>> make_cartan(char type, int rank)
{
    auto bad = [&]() -> std::vector<std::vector<Coord>> {
        throw DomainError(std::string("invalid root system type/rank pair: ") + type +
                          std::to_string(rank));
    };

    const int n = rank;
    std::vector<std::vector<Coord>> c(n, std::vector<Coord>(n, 0));
    for (int i = 0; i < n; ++i)
        c[i][i] = 2;
    auto edge = [&](int i, int j) { c[i][j] = -1; c[j][i] = -1; };

    switch (type) {
    case 'A':
        if (n < 1) return bad();
        for (int i = 0; i + 1 < n; ++i)
            edge(i, i + 1);
        break;
    case 'B':
        if (n < 2) return bad();
        for (int i = 0; i + 1 < n; ++i)
            edge(i, i + 1);
        c[n - 1][n - 2] = -2; // <alpha_{n-1}, alpha_n^vee> = -2 (alpha_n short)
        break;
    case 'C':
        if (n < 2) return bad();
        for (int i = 0; i + 1 < n; ++i)
            edge(i, i + 1);
        c[n - 2][n - 1] = -2; // <alpha_n, alpha_{n-1}^vee> = -2 (alpha_n long)
        break;
    case 'D':
        if (n < 4) return bad();
        for (int i = 0; i + 1 < n - 1; ++i)
            edge(i, i + 1);
        edge(n - 3, n - 1);
        break;
    case 'E': {
        if (n < 6 || n > 8) return bad();
        // chain 1-3-4-5-6(-7)(-8), node 2 attached to 4 (labels 1-based)
        edge(0, 2);
        edge(1, 3);
        for (int i = 2; i + 1 < n; ++i)
            edge(i, i + 1);
        break;
    }
    case 'F':
        if (n != 4) return bad();
        edge(0, 1);
        edge(2, 3);
        c[1][2] = -1;
        c[2][1] = -2; // <alpha_2, alpha_3^vee> = -2 (alpha_3 short)
        break;
    case 'G':
        if (n != 2) return bad();
        c[0][1] = -3; // <alpha_2, alpha_1^vee> = -3 (alpha_1 short)
        c[1][0] = -1;
        break;
    default:
        return bad();
    }
    return c;
}

// Minimal positive integer symmetrizers d with d_i c[i][j] = d_j c[j][i].
std::vector<Coord> make_symmetrizers(const std::vector<std::vector<Coord>>& c)
{
    const int n = static_cast<int>(c.size());
    std::vector<Rat> d(n, Rat(0));
    d[0] = 1;
    std::deque<int> queue{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (int j = 0; j < n; ++j) {
            if (i == j || c[i][j] == 0)
                continue;
            Rat dj = d[i] * Rat(c[i][j]) / Rat(c[j][i]);
            if (!seen[j]) {
                d[j] = dj;
                seen[j] = true;
                queue.push_back(j);
            } else if (d[j] != dj) {
                throw DomainError("Cartan matrix is not symmetrizable");
            }
        }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw DomainError("Dynkin diagram is not connected");

    Int lcm_den = 1;
    for (const Rat& q : d)
        lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(q));
    Int gcd_num = 0;
    std::vector<Int> scaled(n);
    for (int i = 0; i < n; ++i) {
        scaled[i] = boost::multiprecision::numerator(d[i]) * (lcm_den / boost::multiprecision::denominator(d[i]));
        gcd_num = boost::multiprecision::gcd(gcd_num, scaled[i]);
    }
    std::vector<Coord> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = static_cast<Coord>(scaled[i] / gcd_num);
    return out;
}

// Leading principal minors of the symmetrized Cartan matrix must be positive.
void check_positive_definite(const std::vector<std::vector<Coord>>& c,
                             const std::vector<Coord>& d)
{
    const int n = static_cast<int>(c.size());
    for (int k = 1; k <= n; ++k) {
        // exact determinant of the k x k leading block of S_ij = d_i c_ij
        std::vector<std::vector<Rat>> m(k, std::vector<Rat>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                m[i][j] = Rat(d[i] * c[i][j]);
        Rat det = 1;
        for (int col = 0; col < k; ++col) {
            int piv = -1;
            for (int row = col; row < k; ++row)
                if (m[row][col] != 0) { piv = row; break; }
            if (piv < 0) { det = 0; break; }
            if (piv != col) { std::swap(m[piv], m[col]); det = -det; }
            det *= m[col][col];
            for (int row = col + 1; row < k; ++row) {
                Rat f = m[row][col] / m[col][col];
                for (int j = col; j < k; ++j)
                    m[row][j] -= f * m[col][j];
            }
        }
        if (det <= 0)
            throw DomainError("symmetrized Cartan matrix is not positive definite");
    }
}

std::vector<std::vector<Rat>> invert_cartan(const std::vector<std::vector<Coord>>& c)
{
    const int n = static_cast<int>(c.size());
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(2 * n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            m[i][j] = Rat(c[i][j]);
        m[i][n + i] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int row = col; row < n; ++row)
            if (m[row][col] != 0) { piv = row; break; }
        if (piv < 0)
            throw DomainError("Cartan matrix is singular");
        std::swap(m[piv], m[col]);
        Rat f = m[col][col];
        for (int j = 0; j < 2 * n; ++j)
            m[col][j] /= f;
        for (int row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0)
                continue;
            Rat g = m[row][col];
            for (int j = 0; j < 2 * n; ++j)
                m[row][j] -= g * m[col][j];
        }
    }
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv[i][j] = m[i][n + j];
    return inv;
}

Coord root_pairing(const std::vector<std::vector<Coord>>& c, const RootVector& beta, int i)
{
    // <beta, alpha_i^vee> = sum_j beta_j <alpha_j, alpha_i^vee>
    Coord v = 0;
    for (std::size_t j = 0; j < beta.coords.size(); ++j)
        v += c[i][j] * beta.coords[j];
    return v;
}

// Positive roots by the closure algorithm: beta + alpha_i is a root iff the
// alpha_i-string through beta extends upward, i.e. q - <beta, alpha_i^vee> > 0
// where q is the largest k with beta - k alpha_i a root.
std::vector<RootVector> closure_positive_roots(const std::vector<std::vector<Coord>>& c)
{
    const int n = static_cast<int>(c.size());
    std::vector<RootVector> roots;
    std::set<std::vector<Coord>> seen;
    for (int i = 0; i < n; ++i) {
        std::vector<Coord> e(n, 0);
        e[i] = 1;
        roots.emplace_back(e);
        seen.insert(e);
    }
    std::size_t frontier_begin = 0;
    while (frontier_begin < roots.size()) {
        std::size_t frontier_end = roots.size();
        for (std::size_t k = frontier_begin; k < frontier_end; ++k) {
            RootVector beta = roots[k];
            for (int i = 0; i < n; ++i) {
                std::vector<Coord> cand = beta.coords;
                cand[i] += 1;
                if (seen.count(cand))
                    continue;
                Coord pair = root_pairing(c, beta, i);
                Coord q = 0;
                std::vector<Coord> down = beta.coords;
                while (true) {
                    down[i] -= 1;
                    if (down[i] < 0 || !seen.count(down))
                        break;
                    ++q;
                }
                if (q - pair > 0) {
                    roots.emplace_back(cand);
                    seen.insert(cand);
                }
            }
        }
        frontier_begin = frontier_end;
    }
    std::sort(roots.begin(), roots.end(), [](const RootVector& a, const RootVector& b) {
        if (a.height() != b.height())
            return a.height() < b.height();
        return a.coords < b.coords;
    });
    return roots;
}

std::size_t expected_positive_root_count(char type, int rank)
{
    std::size_t n = static_cast<std::size_t>(rank);
    switch (type) {
    case 'A': return n * (n + 1) / 2;
    case 'B':
    case 'C': return n * n;
    case 'D': return n * (n - 1);
    case 'E': return rank == 6 ? 36 : rank == 7 ? 63 : 120;
    case 'F': return 24;
    case 'G': return 6;
    }
    return 0;
}

} // namespace

RootSystemPtr build_root_system(char type, int rank)
{
    auto rs = std::shared_ptr<RootSystem>(new RootSystem());
    rs->type_ = type;
    rs->rank_ = rank;
    rs->cartan_ = make_cartan(type, rank);
    rs->symmetrizers_ = make_symmetrizers(rs->cartan_);
    check_positive_definite(rs->cartan_, rs->symmetrizers_);
    rs->inv_cartan_ = invert_cartan(rs->cartan_);
    rs->positive_roots_ = closure_positive_roots(rs->cartan_);
    if (rs->positive_roots_.size() != expected_positive_root_count(type, rank))
        throw DomainError("positive root closure produced an unexpected count for " + rs->name());

    // Coroots: beta^vee = sum_i (c_i d_i / d_beta) alpha_i^vee with
    // d_beta = (beta, beta)/2 in the form (alpha_i, alpha_j) = d_i cartan[i][j].
    const int n = rank;
    rs->positive_coroots_.reserve(rs->positive_roots_.size());
    for (const RootVector& beta : rs->positive_roots_) {
        Rat norm2 = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                norm2 += Rat(beta.coords[i]) * Rat(beta.coords[j]) *
                         Rat(rs->symmetrizers_[i] * rs->cartan_[i][j]);
        Rat d_beta = norm2 / 2;
        std::vector<Coord> k(n);
        for (int i = 0; i < n; ++i) {
            Rat ki = Rat(beta.coords[i] * rs->symmetrizers_[i]) / d_beta;
            if (boost::multiprecision::denominator(ki) != 1)
                throw DomainError("non-integral coroot coordinates for " + rs->name());
            k[i] = static_cast<Coord>(boost::multiprecision::numerator(ki));
        }
        rs->positive_coroots_.emplace_back(std::move(k));
    }

    rs->rho_ = Weight(std::vector<Coord>(n, 1));

    Coord best = -1;
    std::size_t best_idx = 0, best_count = 0;
    for (std::size_t k = 0; k < rs->positive_coroots_.size(); ++k) {
        Coord h = rs->positive_coroots_[k].height();
        if (h > best) {
            best = h;
            best_idx = k;
            best_count = 1;
        } else if (h == best) {
            ++best_count;
        }
    }
    if (best_count != 1)
        throw DomainError("highest coroot is not unique for " + rs->name());
    rs->highest_coroot_index_ = best_idx;
    rs->coxeter_number_ = static_cast<int>(best + 1);

    return rs;
}

Weight RootSystem::root_to_weight(const RootVector& v) const
{
    check_same_rank(v.coords.size(), static_cast<std::size_t>(rank_), "root_to_weight");
    std::vector<Coord> w(rank_, 0);
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            w[i] += cartan_[i][j] * v.coords[j];
    return Weight(std::move(w));
}

std::vector<Rat> RootSystem::weight_to_root(const Weight& w) const
{
    check_same_rank(w.coords.size(), static_cast<std::size_t>(rank_), "weight_to_root");
    std::vector<Rat> v(rank_, Rat(0));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            v[i] += inv_cartan_[i][j] * Rat(w.coords[j]);
    return v;
}

std::optional<RootVector> RootSystem::try_root_vector(const Weight& w) const
{
    std::vector<Rat> v = weight_to_root(w);
    std::vector<Coord> out(rank_);
    for (int i = 0; i < rank_; ++i) {
        if (boost::multiprecision::denominator(v[i]) != 1)
            return std::nullopt;
        out[i] = static_cast<Coord>(boost::multiprecision::numerator(v[i]));
    }
    return RootVector(std::move(out));
}

Coord RootSystem::pairing(const Weight& lambda, std::size_t posroot_index) const
{
    if (posroot_index >= positive_coroots_.size())
        throw DomainError("positive root index out of range");
    check_same_rank(lambda.coords.size(), static_cast<std::size_t>(rank_), "pairing");
    const RootVector& k = positive_coroots_[posroot_index];
    Coord v = 0;
    for (int i = 0; i < rank_; ++i)
        v += k.coords[i] * lambda.coords[i];
    return v;
}

Rat RootSystem::height_functional(const Weight& w) const
{
    std::vector<Rat> v = weight_to_root(w);
    Rat h = 0;
    for (const Rat& q : v)
        h += q;
    return h;
}

Weight RootSystem::simple_reflection(int i, const Weight& w) const
{
    if (i < 0 || i >= rank_)
        throw DomainError("simple reflection index out of range");
    Coord pair = w.coords[i];
    std::vector<Coord> r = w.coords;
    for (int j = 0; j < rank_; ++j)
        r[j] -= pair * cartan_[j][i]; // alpha_i in weight coordinates
    return Weight(std::move(r));
}

bool RootSystem::is_dominant(const Weight& w) const
{
    return std::all_of(w.coords.begin(), w.coords.end(), [](Coord c) { return c >= 0; });
}

bool RootSystem::is_antidominant(const Weight& w) const
{
    return std::all_of(w.coords.begin(), w.coords.end(), [](Coord c) { return c < 0; });
}

bool dominance_leq(const RootSystem& rs, const Weight& lambda, const Weight& mu)
{
    std::optional<RootVector> diff = rs.try_root_vector(mu - lambda);
    return diff.has_value() && diff->nonnegative();
}

std::optional<Coord> height_diff(const RootSystem& rs, const Weight& lambda, const Weight& mu)
{
    std::optional<RootVector> diff = rs.try_root_vector(mu - lambda);
    if (!diff)
        return std::nullopt;
    return diff->height();
}

Weight weyl_apply(const RootSystem& rs, const std::vector<int>& word, const Weight& w)
{
    Weight out = w;
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        out = rs.simple_reflection(*it, out);
    return out;
}

Weight dot_action(const RootSystem& rs, const std::vector<int>& word, const Weight& lambda)
{
    return weyl_apply(rs, word, lambda + rs.rho()) - rs.rho();
}

Weight dot_action(const RootSystem& rs, const WeylElement& w, const Weight& lambda)
{
    return dot_action(rs, w.word, lambda);
}

Weight affine_reflect(const RootSystem& rs, std::size_t posroot_index, Coord m, Coord p,
                      const Weight& lambda)
{
    Coord v = rs.pairing(lambda + rs.rho(), posroot_index);
    return lambda - rs.root_to_weight(rs.positive_roots()[posroot_index]) * (v - m * p);
}

std::vector<WeylElement> enumerate_weyl(const RootSystem& rs)
{
    std::vector<WeylElement> out;
    std::unordered_set<Weight, WeightHash> seen;

    WeylElement id;
    id.rho_image = rs.rho();
    id.length = 0;
    out.push_back(id);
    seen.insert(id.rho_image);

    std::size_t frontier_begin = 0;
    while (frontier_begin < out.size()) {
        std::size_t frontier_end = out.size();
        for (std::size_t k = frontier_begin; k < frontier_end; ++k) {
            WeylElement cur = out[k];
            for (int i = 0; i < rs.rank(); ++i) {
                Weight img = rs.simple_reflection(i, cur.rho_image);
                if (seen.count(img))
                    continue;
                WeylElement next;
                next.word = cur.word;
                next.word.insert(next.word.begin(), i); // left multiplication by s_i
                next.rho_image = img;
                next.length = cur.length + 1;
                out.push_back(std::move(next));
                seen.insert(img);
            }
        }
        frontier_begin = frontier_end;
    }
    return out;
}

WeylElement longest_weyl_element(const RootSystem& rs)
{
    std::vector<WeylElement> all = enumerate_weyl(rs);
    return *std::max_element(all.begin(), all.end(),
                             [](const WeylElement& a, const WeylElement& b) {
                                 return a.length < b.length;
                             });
}

} // namespace charop
