/*
 * charexpr.cpp
 * ------------
 * Exact windowed evaluation of character expressions.
 */
#include "charop/charexpr.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

namespace charop {

namespace {

bool is_prime(Coord p)
{
    if (p < 2) return false;
    for (Coord q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

Coord rat_ceil_coord(const Rat& r)
{
    Int fl = rat_floor(r);
    if (Rat(fl) != r) ++fl;
    return to_coord(fl);
}

std::optional<Rat> max_height(const RootSystem& rs, const std::vector<Weight>& ws)
{
    std::optional<Rat> best;
    for (const Weight& w : ws) {
        Rat h = rs.height_functional(w);
        if (!best || h > *best) best = h;
    }
    return best;
}

std::optional<Rat> min_height(const RootSystem& rs, const std::vector<Weight>& ws)
{
    std::optional<Rat> best;
    for (const Weight& w : ws) {
        Rat h = rs.height_functional(w);
        if (!best || h < *best) best = h;
    }
    return best;
}

void check_ctx(const Context& ctx)
{
    if (!ctx.rs || !ctx.kostant) throw DomainError("expression context is not initialized");
}

void check_rank(const Context& ctx, const Weight& w, const char* what)
{
    if (static_cast<int>(w.rank()) != ctx.rs->rank())
        throw DomainError(std::string(what) + ": weight rank does not match the root system");
}

// Visits every nonnegative integer offset vector with total at most `budget`.
template <typename F>
void for_each_offset(std::vector<Coord>& c, std::size_t pos, Coord budget, F&& emit)
{
    if (pos == c.size()) {
        emit();
        return;
    }
    for (Coord v = 0; v <= budget; ++v) {
        c[pos] = v;
        for_each_offset(c, pos + 1, budget - v, emit);
    }
    c[pos] = 0;
}

} // namespace

// ---------------------------------------------------------------------------
// PartitionTable

PartitionTable::PartitionTable(RootSystemPtr rs) : rs_(std::move(rs))
{
    if (!rs_) throw DomainError("partition table requires a root system");
}

Int PartitionTable::count(const RootVector& nu) const
{
    if (static_cast<int>(nu.rank()) != rs_->rank())
        throw DomainError("partition argument rank does not match the root system");
    if (!nu.nonnegative()) return 0;
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(nu);
    if (it != memo_.end()) return it->second;
    Int v = count_suffix(nu.coords, 0);
    memo_.emplace(nu, v);
    return v;
}

Int PartitionTable::count_suffix(const std::vector<Coord>& nu, std::size_t k) const
{
    if (std::all_of(nu.begin(), nu.end(), [](Coord c) { return c == 0; })) return Int(1);
    const auto& roots = rs_->positive_roots();
    if (k == roots.size()) return Int(0);
    auto key = std::make_pair(k, nu);
    auto it = suffix_memo_.find(key);
    if (it != suffix_memo_.end()) return it->second;

    // Either root k is unused, or it is used at least once.
    Int v = count_suffix(nu, k + 1);
    std::vector<Coord> rem(nu);
    bool inside = true;
    for (std::size_t i = 0; i < rem.size() && inside; ++i) {
        rem[i] -= roots[k].coords[i];
        inside = rem[i] >= 0;
    }
    if (inside) v += count_suffix(rem, k);
    suffix_memo_.emplace(std::move(key), v);
    return v;
}

std::vector<std::pair<RootVector, Int>> PartitionTable::snapshot() const
{
    std::lock_guard<std::mutex> lock(mutex_);
    std::vector<std::pair<RootVector, Int>> out(memo_.begin(), memo_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first.coords < b.first.coords; });
    return out;
}

void PartitionTable::merge(const std::vector<std::pair<RootVector, Int>>& entries) const
{
    std::lock_guard<std::mutex> lock(mutex_);
    for (const auto& e : entries) {
        if (static_cast<int>(e.first.rank()) != rs_->rank())
            throw DomainError("partition table merge: rank mismatch");
        memo_.emplace(e.first, e.second);
    }
}

// ---------------------------------------------------------------------------
// Context

Context Context::make(RootSystemPtr rs, Coord p)
{
    if (!rs) throw DomainError("context requires a root system");
    if (p != 0 && !is_prime(p)) throw DomainError("context characteristic must be 0 or a prime");
    Context c;
    c.rs = std::move(rs);
    c.p = p;
    c.kostant = std::make_shared<PartitionTable>(c.rs);
    return c;
}

Int kostant_partition(const Context& ctx, const RootVector& nu)
{
    check_ctx(ctx);
    return ctx.kostant->count(nu);
}

// ---------------------------------------------------------------------------
// Region

Region::Region(const RootSystem& rs, const Window& window, std::uint64_t cap)
{
    const std::size_t n = static_cast<std::size_t>(rs.rank());
    if (window.depth < 0) return;
    for (const Weight& mu : window.ceilings) {
        if (mu.rank() != n) throw DomainError("window ceiling rank does not match the root system");
        std::vector<Coord> c(n, 0);
        for_each_offset(c, 0, window.depth, [&] {
            Weight w = mu - rs.root_to_weight(RootVector(c));
            if (index_.emplace(w, weights_.size()).second) {
                weights_.push_back(std::move(w));
                if (weights_.size() > cap)
                    throw ResourceError("window region exceeds the region cap");
            }
        });
    }

    rcoords_.reserve(weights_.size());
    heights_.reserve(weights_.size());
    for (const Weight& w : weights_) {
        rcoords_.push_back(rs.weight_to_root(w));
        heights_.push_back(rs.height_functional(w));
    }

    std::vector<std::size_t> perm(weights_.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        if (heights_[a] != heights_[b]) return heights_[a] > heights_[b];
        return weights_[a].coords < weights_[b].coords;
    });

    std::vector<Weight> ws(weights_.size());
    std::vector<std::vector<Rat>> rc(weights_.size());
    std::vector<Rat> hs(weights_.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        ws[i] = std::move(weights_[perm[i]]);
        rc[i] = std::move(rcoords_[perm[i]]);
        hs[i] = std::move(heights_[perm[i]]);
    }
    weights_ = std::move(ws);
    rcoords_ = std::move(rc);
    heights_ = std::move(hs);
    index_.clear();
    for (std::size_t i = 0; i < weights_.size(); ++i) index_.emplace(weights_[i], i);
}

std::optional<std::size_t> Region::index_of(const Weight& w) const
{
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------------------
// Ceiling bookkeeping

std::vector<Weight> prune_ceilings(const RootSystem& rs, std::vector<Weight> candidates)
{
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<Weight> out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < candidates.size() && !dominated; ++j)
            dominated = i != j && dominance_leq(rs, candidates[i], candidates[j]);
        if (!dominated) out.push_back(candidates[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Node factories

CharExpr make_node(detail::Node n)
{
    return CharExpr(std::make_shared<const detail::Node>(std::move(n)));
}

const Context& CharExpr::ctx() const
{
    if (!node_) throw DomainError("use of an empty character expression");
    return node_->ctx;
}

const std::vector<Weight>& CharExpr::ceilings() const
{
    if (!node_) throw DomainError("use of an empty character expression");
    return node_->ceilings;
}

CharExpr CharExpr::basis(const Context& ctx, const Weight& lambda)
{
    check_ctx(ctx);
    check_rank(ctx, lambda, "basis");
    return make_node(detail::Node{ctx, {lambda}, detail::BasisNode{lambda}});
}

CharExpr CharExpr::verma(const Context& ctx, const Weight& lambda)
{
    check_ctx(ctx);
    check_rank(ctx, lambda, "verma");
    return make_node(detail::Node{ctx, {lambda}, detail::VermaNode{lambda}});
}

CharExpr CharExpr::finite(const Context& ctx, std::map<Weight, Int> values)
{
    check_ctx(ctx);
    for (auto it = values.begin(); it != values.end();) {
        check_rank(ctx, it->first, "finite");
        if (it->second == 0)
            it = values.erase(it);
        else
            ++it;
    }
    std::vector<Weight> keys;
    keys.reserve(values.size());
    for (const auto& kv : values) keys.push_back(kv.first);
    detail::Node n{ctx, prune_ceilings(*ctx.rs, std::move(keys)),
                   detail::FiniteNode{std::move(values)}};
    return make_node(std::move(n));
}

CharExpr CharExpr::db_char(const Context& ctx, const Weight& lambda, CharExpr payload,
                           std::string source)
{
    check_ctx(ctx);
    check_rank(ctx, lambda, "db_char");
    if (!payload.is_valid()) throw DomainError("db_char payload is empty");
    if (!ctx.same_as(payload.ctx()))
        throw DomainError("db_char payload was built over a different context");
    for (const Weight& c : payload.ceilings())
        if (!dominance_leq(*ctx.rs, c, lambda))
            throw DomainError("db_char payload has support above its weight");
    return make_node(detail::Node{
        ctx, {lambda}, detail::DBCharNode{lambda, std::nullopt, std::move(payload), std::move(source)}});
}

CharExpr CharExpr::db_char(const Context& ctx, const Weight& lambda, std::map<Weight, Int> values,
                           std::string source)
{
    check_ctx(ctx);
    check_rank(ctx, lambda, "db_char");
    for (auto it = values.begin(); it != values.end();) {
        check_rank(ctx, it->first, "db_char");
        if (!dominance_leq(*ctx.rs, it->first, lambda))
            throw DomainError("db_char entry has support above its weight");
        if (it->second == 0)
            it = values.erase(it);
        else
            ++it;
    }
    return make_node(detail::Node{
        ctx, {lambda},
        detail::DBCharNode{lambda, std::move(values), CharExpr(), std::move(source)}});
}

CharExpr CharExpr::add(const Context& ctx, std::vector<CharExpr> children)
{
    check_ctx(ctx);
    std::vector<Weight> ceil;
    for (const CharExpr& c : children) {
        if (!c.is_valid()) throw DomainError("add: empty child expression");
        if (!ctx.same_as(c.ctx())) throw DomainError("add: children over different contexts");
        ceil.insert(ceil.end(), c.ceilings().begin(), c.ceilings().end());
    }
    detail::Node n{ctx, prune_ceilings(*ctx.rs, std::move(ceil)),
                   detail::AddNode{std::move(children)}};
    return make_node(std::move(n));
}

CharExpr CharExpr::scale(const Int& k, CharExpr child)
{
    if (!child.is_valid()) throw DomainError("scale: empty child expression");
    Context ctx = child.ctx();
    std::vector<Weight> ceil = k == 0 ? std::vector<Weight>{} : child.ceilings();
    detail::Node n{std::move(ctx), std::move(ceil), detail::ScaleNode{k, std::move(child)}};
    return make_node(std::move(n));
}

CharExpr CharExpr::star(CharExpr f, CharExpr g)
{
    if (!f.is_valid() || !g.is_valid()) throw DomainError("star: empty child expression");
    if (!f.ctx().same_as(g.ctx())) throw DomainError("star: children over different contexts");
    Context ctx = f.ctx();
    std::vector<Weight> ceil;
    for (const Weight& a : f.ceilings())
        for (const Weight& b : g.ceilings()) ceil.push_back(a + b);
    detail::Node n{std::move(ctx), prune_ceilings(*f.ctx().rs, std::move(ceil)),
                   detail::StarNode{std::move(f), std::move(g)}};
    return make_node(std::move(n));
}

CharExpr CharExpr::frob(int r, CharExpr child)
{
    if (!child.is_valid()) throw DomainError("frob: empty child expression");
    if (r < 0) throw DomainError("frob: twist exponent must be nonnegative");
    Context ctx = child.ctx();
    if (ctx.p < 2) throw DomainError("frob: Frobenius twist requires a fixed prime");
    Int pr = boost::multiprecision::pow(Int(ctx.p), static_cast<unsigned>(r));
    std::vector<Weight> ceil;
    ceil.reserve(child.ceilings().size());
    for (const Weight& c : child.ceilings()) ceil.push_back(scale_weight(c, pr));
    detail::Node n{std::move(ctx), std::move(ceil), detail::FrobNode{r, std::move(child)}};
    return make_node(std::move(n));
}

CharExpr family_sum(const Context& ctx, std::vector<Weight> global_ceilings,
                    FamilyEnumeratorFactory make_enumerator, std::size_t monotone_after)
{
    check_ctx(ctx);
    if (!make_enumerator) throw DomainError("family sum requires an enumerator factory");
    for (const Weight& c : global_ceilings) check_rank(ctx, c, "family sum");
    detail::Node n{ctx, prune_ceilings(*ctx.rs, std::move(global_ceilings)),
                   detail::FamilySumNode{std::move(make_enumerator), monotone_after}};
    return make_node(std::move(n));
}

CharExpr inf_product(const Context& ctx, InfProductSpec spec)
{
    check_ctx(ctx);
    if (!spec.factor || !spec.drop || !spec.tail_shift)
        throw DomainError("infinite product requires factor, drop, and tail shift functions");
    check_rank(ctx, spec.total_top, "infinite product");
    if (spec.tail_shift(-1) != spec.total_top)
        throw DomainError("infinite product tail shift at -1 must equal the total top weight");
    Weight top = spec.total_top;
    return make_node(detail::Node{ctx, {std::move(top)}, detail::InfProductNode{std::move(spec)}});
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

class Evaluator {
public:
    using Coeffs = std::map<Weight, Int>;

    Evaluator(RootSystemPtr rs, const EvalOptions& opts) : rs_(std::move(rs)), opts_(opts) {}

    Coeffs eval_node(const CharExpr& e, const Window& w);

private:
    const Region& region_for(const Window& w);
    bool meets_window(const std::vector<Weight>& ceilings, const Window& w) const;

    static void drop_zeros(Coeffs& m)
    {
        for (auto it = m.begin(); it != m.end();)
            it = it->second == 0 ? m.erase(it) : std::next(it);
    }

    RootSystemPtr rs_;
    EvalOptions opts_;
    std::map<std::pair<std::vector<Weight>, Coord>, std::unique_ptr<Region>> regions_;
};

const Region& Evaluator::region_for(const Window& w)
{
    std::vector<Weight> key_ceil = w.ceilings;
    std::sort(key_ceil.begin(), key_ceil.end());
    key_ceil.erase(std::unique(key_ceil.begin(), key_ceil.end()), key_ceil.end());
    auto key = std::make_pair(std::move(key_ceil), w.depth);
    auto it = regions_.find(key);
    if (it == regions_.end())
        it = regions_.emplace(std::move(key), std::make_unique<Region>(*rs_, w, opts_.region_cap))
                 .first;
    return *it->second;
}

bool Evaluator::meets_window(const std::vector<Weight>& ceilings, const Window& w) const
{
    for (const Weight& nu : ceilings)
        for (const Weight& mu : w.ceilings) {
            auto delta = rs_->try_root_vector(nu - mu);
            if (!delta) continue;
            Coord need = 0;
            for (Coord c : delta->coords)
                if (c < 0) need -= c;
            if (need <= w.depth) return true;
        }
    return false;
}

Evaluator::Coeffs Evaluator::eval_node(const CharExpr& e, const Window& w)
{
    const Region& R = region_for(w);
    Coeffs out;
    if (R.size() == 0) return out;

    const detail::Node& n = e.node();
    if (const auto* b = std::get_if<detail::BasisNode>(&n.payload)) {
        if (R.index_of(b->lambda)) out[b->lambda] = 1;
    } else if (const auto* v = std::get_if<detail::VermaNode>(&n.payload)) {
        const std::vector<Rat> lam_rc = rs_->weight_to_root(v->lambda);
        const PartitionTable& table = *n.ctx.kostant;
        for (std::size_t i = 0; i < R.size(); ++i) {
            const auto& wrc = R.root_coords(i);
            std::vector<Coord> diff(lam_rc.size());
            bool integral = true;
            for (std::size_t j = 0; j < lam_rc.size() && integral; ++j) {
                Rat d = lam_rc[j] - wrc[j];
                if (d < 0 || boost::multiprecision::denominator(d) != 1) {
                    integral = false;
                    break;
                }
                diff[j] = to_coord(Int(boost::multiprecision::numerator(d)));
            }
            if (!integral) continue;
            Int c = table.count(RootVector(std::move(diff)));
            if (c != 0) out[R.weights()[i]] = c;
        }
    } else if (const auto* fin = std::get_if<detail::FiniteNode>(&n.payload)) {
        for (const auto& kv : fin->values)
            if (R.index_of(kv.first)) out[kv.first] = kv.second;
    } else if (const auto* db = std::get_if<detail::DBCharNode>(&n.payload)) {
        if (db->values) {
            for (const auto& kv : *db->values)
                if (R.index_of(kv.first)) out[kv.first] = kv.second;
        } else {
            out = eval_node(db->payload, w);
        }
    } else if (const auto* a = std::get_if<detail::AddNode>(&n.payload)) {
        for (const CharExpr& c : a->children) {
            Coeffs part = eval_node(c, w);
            for (auto& kv : part) out[kv.first] += kv.second;
        }
    } else if (const auto* sc = std::get_if<detail::ScaleNode>(&n.payload)) {
        if (sc->scalar != 0) {
            out = eval_node(sc->child, w);
            for (auto& kv : out) kv.second *= sc->scalar;
        }
    } else if (const auto* st = std::get_if<detail::StarNode>(&n.payload)) {
        auto max_f = max_height(*rs_, st->lhs.ceilings());
        auto max_g = max_height(*rs_, st->rhs.ceilings());
        auto min_w = min_height(*rs_, w.ceilings);
        if (max_f && max_g) {
            // A product landing at height >= min_w - depth forces each factor
            // at least that far below its own ceiling bound.
            Coord dc = rat_ceil_coord(*max_f + *max_g - *min_w) + w.depth;
            if (dc >= 0) {
                Coeffs F = eval_node(st->lhs, Window{st->lhs.ceilings(), dc});
                Coeffs G = eval_node(st->rhs, Window{st->rhs.ceilings(), dc});
                for (const auto& fkv : F)
                    for (const auto& gkv : G) {
                        Weight s = fkv.first + gkv.first;
                        if (R.index_of(s)) out[s] += fkv.second * gkv.second;
                    }
            }
        }
    } else if (const auto* fr = std::get_if<detail::FrobNode>(&n.payload)) {
        auto max_c = max_height(*rs_, fr->child.ceilings());
        auto min_w = min_height(*rs_, w.ceilings);
        if (max_c) {
            Int pr = boost::multiprecision::pow(Int(n.ctx.p), static_cast<unsigned>(fr->r));
            // Preimages of region weights sit at height >= (min_w - depth) / p^r.
            Rat preimage_floor = (*min_w - Rat(w.depth)) / Rat(pr);
            Coord dc = rat_ceil_coord(*max_c - preimage_floor);
            if (dc >= 0) {
                Coeffs F = eval_node(fr->child, Window{fr->child.ceilings(), dc});
                for (const auto& kv : F) {
                    Weight img = scale_weight(kv.first, pr);
                    if (R.index_of(img)) out[img] = kv.second;
                }
            }
        }
    } else if (const auto* fam = std::get_if<detail::FamilySumNode>(&n.payload)) {
        Rat floor_h = *min_height(*rs_, w.ceilings) - Rat(w.depth);
        FamilyEnumerator gen = fam->make_enumerator();
        if (!gen) throw DomainError("family sum factory produced no enumerator");
        std::uint64_t used = 0;
        std::size_t k = 0;
        while (auto term = gen()) {
            if (++used > opts_.term_cap)
                throw CertificateError("family sum exceeded the term cap");
            if (!term->ceilings.empty()) {
                Rat mh = *max_height(*rs_, term->ceilings);
                if (k >= fam->monotone_after && mh < floor_h) break;
                if (meets_window(term->ceilings, w)) {
                    Coeffs part = eval_node(term->expr, w);
                    for (auto& kv : part) out[kv.first] += kv.second;
                }
            }
            ++k;
        }
    } else if (const auto* ip = std::get_if<detail::InfProductNode>(&n.payload)) {
        const InfProductSpec& spec = ip->spec;
        Rat top = rs_->height_functional(spec.total_top);
        Rat floor_h = *min_height(*rs_, w.ceilings) - Rat(w.depth);
        long trunc = -1;
        std::uint64_t used = 0;
        while (true) {
            auto delta = spec.drop(static_cast<std::size_t>(trunc + 1));
            if (!delta || top - *delta < floor_h) break;
            ++trunc;
            if (++used > opts_.term_cap)
                throw CertificateError("infinite product truncation exceeded the term cap");
        }
        CharExpr acc = CharExpr::basis(n.ctx, spec.tail_shift(trunc));
        for (long k = trunc; k >= 0; --k)
            acc = CharExpr::star(spec.factor(static_cast<std::size_t>(k)), acc);
        out = eval_node(acc, w);
    }

    drop_zeros(out);
    return out;
}

} // namespace

FiniteCharacter eval(const CharExpr& expr, const Window& window, const EvalOptions& opts)
{
    if (!expr.is_valid()) throw DomainError("evaluating an empty expression");
    const Context& ctx = expr.ctx();
    if (window.depth < 0) throw DomainError("window depth must be nonnegative");
    for (const Weight& c : window.ceilings) check_rank(ctx, c, "window");

    Evaluator ev(ctx.rs, opts);
    FiniteCharacter out;
    out.window = window;
    out.ceilings = expr.ceilings();
    out.coeffs = ev.eval_node(expr, window);
    return out;
}

bool equal_on(const CharExpr& f, const CharExpr& g, const Window& window, const EvalOptions& opts)
{
    if (!f.is_valid() || !g.is_valid()) throw DomainError("comparing an empty expression");
    if (!f.ctx().same_as(g.ctx()))
        throw DomainError("comparing expressions over different contexts");
    return eval(f, window, opts).coeffs == eval(g, window, opts).coeffs;
}

bool leq_on(const CharExpr& f, const CharExpr& g, const Window& window, const EvalOptions& opts)
{
    if (!f.is_valid() || !g.is_valid()) throw DomainError("comparing an empty expression");
    if (!f.ctx().same_as(g.ctx()))
        throw DomainError("comparing expressions over different contexts");
    FiniteCharacter F = eval(f, window, opts);
    FiniteCharacter G = eval(g, window, opts);
    for (const auto& kv : F.coeffs)
        if (kv.second > G.coeff(kv.first)) return false;
    for (const auto& kv : G.coeffs)
        if (kv.second < F.coeff(kv.first)) return false;
    return true;
}

} // namespace charop
