/*
 * cli.cpp
 * -------
 * Subcommand wiring, argument parsing and output formatting.
 *
 * Commands:
 *   rootsys info                         root system facts
 *   char verma|simple|weyl|tilting|infty-tilting
 *                                        windowed character coefficients
 *   decompose verma-basis                expansion in Verma characters
 *   linkage rep|linked|split             affine linkage queries
 *   translate                            translation onto another class
 *   jantzen sum|sl2-check                sum formula reports
 *   db validate                          database file validation
 *
 * Weights are JSON arrays in fundamental coordinates. Queries with infinite
 * support require an explicit --depth; finite characters default to their
 * full support window. CHAROP_CACHE_DIR enables the on-disk partition memo.
 */
#include "charop/cli.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "charop/charexpr.hpp"
#include "charop/errors.hpp"
#include "charop/jantzen.hpp"
#include "charop/json_io.hpp"
#include "charop/linkage.hpp"
#include "charop/root_data.hpp"
#include "charop/steinberg.hpp"
#include "charop/tilting.hpp"

namespace charop::cli {

namespace {

const std::vector<std::string> kCharKinds = {"verma", "simple", "weyl", "tilting",
                                             "infty-tilting"};

struct Options {
    std::string type = "A";
    int rank = 1;
    Coord p = 0;
    Coord depth = -1; // -1 means "not given"
    std::string db_spec;
    std::string format = "pretty";
    std::uint64_t cap = 0; // 0 means library defaults
    int r = 1;
    bool force = false;
    std::string of;
    std::string weight_s;
    std::string from_s;
    std::string to_s;
};

// Context plus the optional partition cache, built once per invocation.
struct Session {
    std::optional<Context> ctx;
    std::string cache_dir;

    const Context& context(const Options& o)
    {
        if (!ctx) {
            if (o.type.size() != 1) throw UsageError("--type must be a single letter");
            ctx = Context::make(build_root_system(o.type[0], o.rank), o.p);
            if (const char* dir = std::getenv("CHAROP_CACHE_DIR"); dir && *dir) {
                cache_dir = dir;
                load_partition_cache(*ctx->kostant, cache_dir);
            }
        }
        return *ctx;
    }

    void flush() const
    {
        if (ctx && !cache_dir.empty()) save_partition_cache(*ctx->kostant, cache_dir);
    }
};

Weight parse_weight(const std::string& s, const char* flag)
{
    Json j = Json::parse(s, nullptr, false);
    if (j.is_discarded())
        throw UsageError(std::string(flag) + ": expected a JSON array like [1,-1], got '" + s +
                         "'");
    try {
        return weight_from_json(j);
    } catch (const DomainError& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

EvalOptions eval_opts(const Options& o)
{
    EvalOptions opts;
    if (o.cap > 0) {
        opts.term_cap = o.cap;
        opts.region_cap = 2 * o.cap;
    }
    return opts;
}

Coord required_depth(const Options& o)
{
    if (o.depth < 0)
        throw UsageError("--depth is required: the query has infinite support, so the "
                         "evaluation window must be explicit");
    return o.depth;
}

Window full_support_window(const RootSystem& rs, const Weight& top)
{
    Weight lowest = weyl_apply(rs, longest_weyl_element(rs).word, top);
    auto depth = height_diff(rs, lowest, top);
    return Window{{top}, depth && *depth > 0 ? *depth : 0};
}

bool finite_support(const Context& ctx, const std::string& kind, const Weight& w)
{
    if (kind == "weyl" || kind == "tilting") return true;
    if (kind == "simple") return ctx.rs->is_dominant(w);
    return false;
}

Window char_window(const Context& ctx, const std::string& kind, const Weight& w,
                   const Options& o)
{
    if (o.depth >= 0) return Window{{w}, o.depth};
    if (finite_support(ctx, kind, w)) return full_support_window(*ctx.rs, w);
    required_depth(o); // throws
    return {};
}

CharDatabase resolve_db(const Context& ctx, const Options& o)
{
    if (o.db_spec.empty())
        throw UsageError("--db is required (a JSON file, builtin:sl2 or builtin:sl2-tilting)");
    if (o.db_spec == "builtin:sl2") return sl2_restricted_db(ctx.p);
    if (o.db_spec == "builtin:sl2-tilting") return sl2_tilting_fixture(ctx.p);
    return load_database(o.db_spec);
}

CharExpr build_char(const Context& ctx, const std::string& kind, const Weight& w,
                    const Options& o)
{
    if (kind == "verma") return CharExpr::verma(ctx, w);
    if (kind == "weyl") return weyl_char(ctx, w);
    if (kind == "simple") {
        CharDatabase db = resolve_db(ctx, o);
        db.validate(ctx);
        return general_simple_char(ctx, w, db);
    }
    if (kind == "tilting") {
        CharDatabase db = resolve_db(ctx, o);
        validate_tilting_db(ctx, db);
        return db.char_expr(ctx, w);
    }
    if (kind == "infty-tilting") {
        CharDatabase db = resolve_db(ctx, o);
        validate_tilting_db(ctx, db);
        return infty_tilting_char(ctx, db, w, o.r, o.force);
    }
    throw UsageError("unknown character kind: " + kind);
}

std::string weight_str(const Weight& w)
{
    return Json(w.coords).dump();
}

// Coefficient rows, largest weight first in pretty mode; `prefix` names the
// basis (e for weights, Delta for Verma expansions).
void emit_rows(const std::map<Weight, Int>& coeffs, const std::string& format,
               const char* prefix, std::ostream& out)
{
    if (format == "tsv") {
        for (const auto& [w, c] : coeffs) out << weight_str(w) << '\t' << c.str() << '\n';
        return;
    }
    if (coeffs.empty()) {
        out << "  (zero)\n";
        return;
    }
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        out << "  " << prefix << weight_str(it->first) << "  " << it->second.str() << '\n';
}

void emit_windowed(const Window& win, const std::map<Weight, Int>& coeffs, const Options& o,
                   const char* prefix, std::ostream& out)
{
    if (o.format == "json") {
        out << Json{{"window", window_to_json(win)}, {"coeffs", coeffs_to_json(coeffs)}}.dump(2)
            << '\n';
        return;
    }
    if (o.format == "pretty")
        out << "window: depth " << win.depth << ", ceilings "
            << window_to_json(win)["ceilings"].dump() << '\n';
    emit_rows(coeffs, o.format, prefix, out);
}

void cmd_rootsys_info(const Options& o, std::ostream& out)
{
    if (o.type.size() != 1) throw UsageError("--type must be a single letter");
    RootSystemPtr rs = build_root_system(o.type[0], o.rank);
    Json roots = Json::array();
    for (const RootVector& v : rs->positive_roots()) roots.push_back(Json(v.coords));
    Json info{{"name", rs->name()},
              {"rank", rs->rank()},
              {"coxeter_number", rs->coxeter_number()},
              {"num_positive_roots", rs->positive_roots().size()},
              {"cartan", Json(rs->cartan())},
              {"rho", weight_to_json(rs->rho())},
              {"positive_roots", std::move(roots)}};
    if (o.format == "json") {
        out << info.dump(2) << '\n';
        return;
    }
    if (o.format == "tsv") {
        for (const auto& [key, value] : info.items())
            out << key << '\t' << (value.is_string() ? value.get<std::string>() : value.dump())
                << '\n';
        return;
    }
    out << rs->name() << ": rank " << rs->rank() << ", coxeter number " << rs->coxeter_number()
        << ", " << rs->positive_roots().size() << " positive roots\n";
    out << "cartan:\n";
    for (const auto& row : rs->cartan()) out << "  " << Json(row).dump() << '\n';
    out << "rho: " << weight_str(rs->rho()) << '\n';
    out << "positive roots (simple-root coordinates):\n";
    for (const RootVector& v : rs->positive_roots()) out << "  " << Json(v.coords).dump() << '\n';
}

void cmd_char(const std::string& kind, Session& session, const Options& o, std::ostream& out)
{
    const Context& ctx = session.context(o);
    const Weight w = parse_weight(o.weight_s, "--weight");
    const CharExpr expr = build_char(ctx, kind, w, o);
    const Window win = char_window(ctx, kind, w, o);
    const FiniteCharacter fc = eval(expr, win, eval_opts(o));
    emit_windowed(fc.window, fc.coeffs, o, "e", out);
}

void cmd_decompose(Session& session, const Options& o, std::ostream& out)
{
    const Context& ctx = session.context(o);
    const Weight w = parse_weight(o.weight_s, "--weight");
    const CharExpr expr = build_char(ctx, o.of, w, o);
    const Window win = char_window(ctx, o.of, w, o);
    const VermaExpansion exp = verma_expansion(expr, win, eval_opts(o));
    emit_windowed(exp.window, exp.coeffs, o, "Delta", out);
}

void cmd_linkage_rep(Session& session, const Options& o, std::ostream& out)
{
    const Context& ctx = session.context(o);
    const Weight w = parse_weight(o.weight_s, "--weight");
    const FundamentalRep fr = fundamental_domain_rep(ctx, w);
    Json witness = Json::array();
    for (const AffineReflection& t : fr.witness)
        witness.push_back(Json{{"root", Json(ctx.rs->positive_roots()[t.root_index].coords)},
                               {"m", t.m}});
    if (o.format == "json") {
        out << Json{{"rep", weight_to_json(fr.rep)}, {"witness", std::move(witness)}}.dump(2)
            << '\n';
        return;
    }
    if (o.format == "tsv") {
        out << weight_str(fr.rep) << '\t' << witness.dump() << '\n';
        return;
    }
    out << "rep: " << weight_str(fr.rep) << '\n';
    out << "witness: " << (fr.witness.empty() ? std::string("(identity)") : witness.dump())
        << '\n';
}

void cmd_linkage_linked(Session& session, const Options& o, std::ostream& out)
{
    const Context& ctx = session.context(o);
    const bool linked = strongly_linked(ctx, parse_weight(o.from_s, "--from"),
                                        parse_weight(o.to_s, "--to"));
    if (o.format == "json")
        out << Json{{"linked", linked}}.dump(2) << '\n';
    else
        out << (linked ? "true" : "false") << '\n';
}

void cmd_linkage_split(Session& session, const Options& o, std::ostream& out)
{
    const Context& ctx = session.context(o);
    const Weight w = parse_weight(o.weight_s, "--weight");
    const CharExpr expr = build_char(ctx, o.of, w, o);
    const Window win = char_window(ctx, o.of, w, o);
    const VermaExpansion exp = verma_expansion(expr, win, eval_opts(o));
    const std::map<Weight, VermaExpansion> classes = split_by_linkage(ctx, exp);
    if (o.format == "json") {
        Json parts = Json::array();
        for (const auto& [rep, part] : classes)
            parts.push_back(Json{{"rep", weight_to_json(rep)},
                                 {"window", window_to_json(part.window)},
                                 {"coeffs", coeffs_to_json(part.coeffs)}});
        out << Json{{"classes", std::move(parts)}}.dump(2) << '\n';
        return;
    }
    if (o.format == "tsv") {
        for (const auto& [rep, part] : classes)
            for (const auto& [v, c] : part.coeffs)
                out << weight_str(rep) << '\t' << weight_str(v) << '\t' << c.str() << '\n';
        return;
    }
    for (const auto& [rep, part] : classes) {
        out << "class rep " << weight_str(rep) << ":\n";
        emit_rows(part.coeffs, o.format, "Delta", out);
    }
    if (classes.empty()) out << "(zero)\n";
}

void cmd_translate(Session& session, const Options& o, std::ostream& out)
{
    const Context& ctx = session.context(o);
    const Weight w = parse_weight(o.weight_s, "--weight");
    const Weight target = parse_weight(o.to_s, "--to");
    const CharExpr expr = build_char(ctx, o.of, w, o);
    const Window win = char_window(ctx, o.of, w, o);
    const VermaExpansion exp = verma_expansion(expr, win, eval_opts(o));
    const Weight mu = fundamental_domain_rep(ctx, w).rep;
    const VermaExpansion moved = translate_expansion(ctx, exp, mu, target);
    emit_windowed(moved.window, moved.coeffs, o, "Delta", out);
}

void cmd_jantzen_sum(Session& session, const Options& o, std::ostream& out)
{
    const Context& ctx = session.context(o);
    const Weight w = parse_weight(o.weight_s, "--weight");
    const Window win{{w}, required_depth(o)};
    const SumFormulaReport report = jantzen_sum(ctx, w, win);
    const EvalOptions opts = eval_opts(o);

    std::vector<std::map<Weight, Int>> per_root;
    for (const CharExpr& summand : report.per_root)
        per_root.push_back(eval(summand, report.window, opts).coeffs);
    const std::map<Weight, Int> total = eval(report.total, report.window, opts).coeffs;

    if (o.format == "json") {
        Json roots = Json::array();
        for (std::size_t i = 0; i < per_root.size(); ++i)
            roots.push_back(Json{{"root", Json(ctx.rs->positive_roots()[i].coords)},
                                 {"coeffs", coeffs_to_json(per_root[i])}});
        out << Json{{"mu", weight_to_json(w)},
                    {"window", window_to_json(report.window)},
                    {"per_root", std::move(roots)},
                    {"total", coeffs_to_json(total)}}
                   .dump(2)
            << '\n';
        return;
    }
    if (o.format == "tsv") {
        for (std::size_t i = 0; i < per_root.size(); ++i)
            for (const auto& [v, c] : per_root[i])
                out << Json(ctx.rs->positive_roots()[i].coords).dump() << '\t' << weight_str(v)
                    << '\t' << c.str() << '\n';
        for (const auto& [v, c] : total)
            out << "total\t" << weight_str(v) << '\t' << c.str() << '\n';
        return;
    }
    out << "window: depth " << report.window.depth << ", ceilings "
        << window_to_json(report.window)["ceilings"].dump() << '\n';
    for (std::size_t i = 0; i < per_root.size(); ++i) {
        out << "root " << Json(ctx.rs->positive_roots()[i].coords).dump() << ":\n";
        emit_rows(per_root[i], o.format, "e", out);
    }
    out << "total:\n";
    emit_rows(total, o.format, "e", out);
}

void cmd_jantzen_sl2_check(Session& session, const Options& o, std::ostream& out)
{
    const Context& ctx = session.context(o);
    const Weight w = parse_weight(o.weight_s, "--weight");
    if (w.rank() != 1) throw UsageError("--weight must have rank 1 for sl2-check");
    const Window win{{w}, required_depth(o)};
    const Coord mu = w.coords[0];
    const bool equal = equal_on(sl2_torsion_char_binomial(ctx, mu),
                                sl2_torsion_char_verma(ctx, mu), win, eval_opts(o));
    if (o.format == "json")
        out << Json{{"equal", equal}}.dump(2) << '\n';
    else
        out << (equal ? "true" : "false") << '\n';
}

void cmd_db_validate(const Options& o, std::ostream& out)
{
    CharDatabase db = [&o]() {
        if (o.db_spec == "builtin:sl2") return sl2_restricted_db(o.p);
        if (o.db_spec == "builtin:sl2-tilting") return sl2_tilting_fixture(o.p);
        return load_database(o.db_spec);
    }();
    const Context ctx = Context::make(build_root_system(db.type(), db.rank()), db.p());
    db.validate(ctx);
    if (db.kind() == "tilting") validate_tilting_db(ctx, db);
    if (o.format == "json") {
        out << Json{{"ok", true},
                    {"type", std::string(1, db.type())},
                    {"rank", db.rank()},
                    {"p", db.p()},
                    {"kind", db.kind()},
                    {"entries", db.entries().size()}}
                   .dump(2)
            << '\n';
        return;
    }
    out << "ok: " << db.type() << db.rank() << ", p=" << db.p() << ", kind=" << db.kind()
        << ", " << db.entries().size() << " entries\n";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"exact characters for category O in characteristic p"};
    app.name("charop");
    app.require_subcommand(1);

    Options o;
    Session session;

    auto add_format = [&o](CLI::App* cmd) {
        cmd->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"pretty", "json", "tsv"}));
    };
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--type", o.type, "root system type letter (A..G)");
        cmd->add_option("--rank", o.rank, "root system rank");
        cmd->add_option("--p", o.p, "prime characteristic");
        cmd->add_option("--cap", o.cap,
                        "iteration cap for family enumeration (region cap is twice this)");
        add_format(cmd);
    };
    auto add_weight = [&o](CLI::App* cmd) {
        cmd->add_option("--weight", o.weight_s, "weight as a JSON array, e.g. [0] or [1,-1]")
            ->required();
    };
    auto add_depth = [&o](CLI::App* cmd) {
        cmd->add_option("--depth", o.depth, "window depth in height units below the ceiling");
    };
    auto add_db = [&o](CLI::App* cmd) {
        cmd->add_option("--db", o.db_spec,
                        "character database: file path, builtin:sl2 or builtin:sl2-tilting");
    };
    auto add_twist = [&o](CLI::App* cmd) {
        cmd->add_option("--r", o.r, "Frobenius twist exponent");
        cmd->add_flag("--force", o.force, "override the p >= 2h - 2 bound (unverified output)");
    };

    CLI::App* rootsys = app.add_subcommand("rootsys", "root system utilities");
    rootsys->require_subcommand(1);
    CLI::App* info = rootsys->add_subcommand("info", "print root system facts");
    add_common(info);
    info->callback([&] { cmd_rootsys_info(o, out); });

    CLI::App* chr = app.add_subcommand("char", "windowed character coefficients");
    chr->require_subcommand(1);
    for (const std::string& kind : kCharKinds) {
        CLI::App* c = chr->add_subcommand(kind, "coefficients of the " + kind + " character");
        add_common(c);
        add_weight(c);
        add_depth(c);
        if (kind != "verma" && kind != "weyl") add_db(c);
        if (kind == "infty-tilting") add_twist(c);
        c->callback([&, kind] { cmd_char(kind, session, o, out); });
    }

    CLI::App* dec = app.add_subcommand("decompose", "basis expansions");
    dec->require_subcommand(1);
    CLI::App* vb = dec->add_subcommand("verma-basis", "expansion in Verma characters");
    add_common(vb);
    vb->add_option("--of", o.of, "character kind")->required()->check(CLI::IsMember(kCharKinds));
    add_weight(vb);
    add_depth(vb);
    add_db(vb);
    add_twist(vb);
    vb->callback([&] { cmd_decompose(session, o, out); });

    CLI::App* lk = app.add_subcommand("linkage", "affine Weyl linkage under the dot action");
    lk->require_subcommand(1);
    CLI::App* rep = lk->add_subcommand("rep", "fundamental domain representative and witness");
    add_common(rep);
    add_weight(rep);
    rep->callback([&] { cmd_linkage_rep(session, o, out); });
    CLI::App* linked = lk->add_subcommand("linked", "strong linkage test");
    add_common(linked);
    linked->add_option("--from", o.from_s, "lower weight as a JSON array")->required();
    linked->add_option("--to", o.to_s, "upper weight as a JSON array")->required();
    linked->callback([&] { cmd_linkage_linked(session, o, out); });
    CLI::App* split = lk->add_subcommand("split", "split a Verma expansion by linkage class");
    add_common(split);
    split->add_option("--of", o.of, "character kind")->required()->check(
        CLI::IsMember(kCharKinds));
    add_weight(split);
    add_depth(split);
    add_db(split);
    add_twist(split);
    split->callback([&] { cmd_linkage_split(session, o, out); });

    CLI::App* tr = app.add_subcommand("translate",
                                      "translate a character onto another linkage class");
    add_common(tr);
    tr->add_option("--of", o.of, "character kind")->required()->check(CLI::IsMember(kCharKinds));
    add_weight(tr);
    tr->add_option("--to", o.to_s, "target weight in the fundamental domain")->required();
    add_depth(tr);
    add_db(tr);
    add_twist(tr);
    tr->callback([&] { cmd_translate(session, o, out); });

    CLI::App* jz = app.add_subcommand("jantzen", "sum formula reports");
    jz->require_subcommand(1);
    CLI::App* sum = jz->add_subcommand("sum", "per-root summands and total");
    add_common(sum);
    add_weight(sum);
    add_depth(sum);
    sum->callback([&] { cmd_jantzen_sum(session, o, out); });
    CLI::App* sl2 = jz->add_subcommand("sl2-check", "binomial vs Verma torsion characters");
    add_common(sl2);
    add_weight(sl2);
    add_depth(sl2);
    sl2->callback([&] { cmd_jantzen_sl2_check(session, o, out); });

    CLI::App* dbapp = app.add_subcommand("db", "character database utilities");
    dbapp->require_subcommand(1);
    CLI::App* val = dbapp->add_subcommand("validate", "structural validation of a database");
    val->add_option("--db", o.db_spec, "database file path or builtin name")->required();
    val->add_option("--p", o.p, "prime for builtin databases");
    add_format(val);
    val->callback([&] { cmd_db_validate(o, out); });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        session.flush();
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const CertificateError& e) {
        err << "certificate error: " << e.what() << '\n';
        return 4;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << '\n';
        return 4;
    } catch (const Json::exception& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 4;
    }
}

} // namespace charop::cli
