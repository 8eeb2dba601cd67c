#pragma once

/**
 * @file cli.hpp
 * @brief The prepkit command-line tool: argument parsing, dispatch and
 *        report emission.
 *
 * Every verb writes one JSON report ({"command", "config", "result"}) to
 * stdout or --out.  Exit status: 0 on success, 2 when a budgeted computation
 * ends inconclusive, 1 for every error (the message goes to stderr).
 */

#include <cstddef>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "prepkit/certificate.hpp"
#include "prepkit/error.hpp"
#include "prepkit/gap_series.hpp"
#include "prepkit/h10.hpp"
#include "prepkit/hensel.hpp"
#include "prepkit/json_io.hpp"
#include "prepkit/rationality.hpp"
#include "prepkit/resultant.hpp"
#include "prepkit/series.hpp"
#include "prepkit/weierstrass.hpp"

namespace prepkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInconclusive = 2;

struct CliOptions {
    std::string ring;
    std::vector<std::string> in;
    std::string out;
    std::string spec;
    std::optional<std::size_t> N, K, budget, degree_cap, height_cap, jobs, n, d;
    std::optional<std::string> base_prime, x0, poly;
    bool entries = false;
};

struct CliOutcome {
    Json result;
    int code = kExitOk;
};

namespace cli_detail {

using Handler = std::function<CliOutcome(const CliOptions&, Json& config)>;

inline Ring ring_flag(const CliOptions& o) {
    try {
        return parse_ring_flag(o.ring);
    } catch (const Error& e) {
        fail(ErrorCode::UsageError, "--ring " + o.ring + ": " + e.what());
    }
}

inline std::optional<Ring> ring_override(const CliOptions& o, Json& config) {
    if (o.ring.empty()) return std::nullopt;
    Ring R = ring_flag(o);
    config["ring"] = R.flag();
    config["ring_grammar"] = kRingGrammar;
    return R;
}

inline const std::string& input(const CliOptions& o, std::size_t i, const char* what) {
    if (o.in.size() <= i) fail(ErrorCode::UsageError, std::string("--in: missing ") + what);
    return o.in[i];
}

inline void expect_inputs(const CliOptions& o, std::size_t count) {
    if (o.in.size() != count)
        fail(ErrorCode::UsageError, "--in: expected " + std::to_string(count) + " input(s), got " + std::to_string(o.in.size()));
}

inline Series load_series(const CliOptions& o, std::size_t i, Json& config) {
    Series f = series_from_json(load_json_arg(input(o, i, "series")), ring_override(o, config));
    config["ring"] = f.ring().flag();
    config["ring_grammar"] = kRingGrammar;
    return f;
}

inline GapSpec load_spec(const CliOptions& o, Json& config) {
    GapSpec s;
    if (o.spec.empty() || o.spec == "reference") s = GapSpec::reference();
    else if (o.spec == "reference-p") s = GapSpec::reference_char_p();
    else s = gap_spec_from_json(load_json_arg(o.spec));
    if (o.budget) s.degree_cap = *o.budget;
    config["spec"] = gap_spec_to_json(s);
    return s;
}

inline DioPoly load_diopoly(const CliOptions& o, Json& config) {
    std::string text;
    if (o.poly) text = *o.poly;
    else if (!o.in.empty()) text = read_text_file(o.in[0]);
    else fail(ErrorCode::UsageError, "--poly: a polynomial is required");
    DioPoly P = parse_diopoly_any(text, o.d.value_or(1));
    config["poly"] = P.to_string();
    config["d"] = std::to_string(P.nvars());
    return P;
}

inline std::size_t bits_budget(const CliOptions& o, Json& config) {
    const std::size_t bits = o.budget ? *o.budget : default_budget_bits();
    config["budget_bits"] = std::to_string(bits);
    return bits;
}

/// An exact univariate polynomial from --in (JSON) or --poly (integer text).
inline ExactPoly load_exact_poly(const CliOptions& o, const std::optional<Ring>& R, Json& config) {
    if (o.poly) {
        const DioPoly P = parse_diopoly(*o.poly);
        if (P.nvars() != 1) fail(ErrorCode::UsageError, "--poly: expected a univariate polynomial");
        if (R && R->is_poly_kind()) fail(ErrorCode::UsageError, "--poly gives integer coefficients; use --in for t-coefficients");
        ExactPoly out;
        unsigned deg = 0;
        for (const auto& [e, c] : P.terms()) deg = std::max(deg, e[0]);
        out.coeffs.assign(deg + 1, out.ring.zero());
        for (const auto& [e, c] : P.terms()) out.coeffs[e[0]] = Elem(c);
        config["poly"] = P.to_string();
        return out;
    }
    std::optional<Ring> exact;
    if (R) exact = R;
    ExactPoly p = poly_from_json(load_json_arg(input(o, 0, "polynomial")), exact);
    config["poly_ring"] = p.ring.flag();
    return p;
}

// ---- verbs -------------------------------------------------------------------

inline CliOutcome cmd_prepare(const CliOptions& o, Json& config, bool strong) {
    expect_inputs(o, 1);
    const Series f = load_series(o, 0, config);
    config["x_prec"] = std::to_string(f.precision());
    const WFactorization w = strong ? strong_factor(f, Schedule::Forward) : prepare(f, Schedule::Forward);
    const WFactorization w2 = strong ? strong_factor(f, Schedule::WarmStart) : prepare(f, Schedule::WarmStart);
    Json r = factorization_to_json(w, f);
    const bool agree = w.P == w2.P && w.U.coeffs() == w2.U.coeffs() && w.v == w2.v;
    if (!agree) fail(ErrorCode::Internal, "the two division schedules disagree");
    r["schedules_agree"] = agree;
    return {r, kExitOk};
}

inline CliOutcome cmd_series(const std::string& op, const CliOptions& o, Json& config) {
    if (op == "mul" || op == "compose") {
        expect_inputs(o, 2);
        const Series f = load_series(o, 0, config), g = load_series(o, 1, config);
        return {series_to_json(op == "mul" ? series_mul(f, g) : compose(f, g)), kExitOk};
    }
    expect_inputs(o, 1);
    const Series f = load_series(o, 0, config);
    if (op == "invert") return {series_to_json(series_invert(f)), kExitOk};
    if (op == "comp-inverse") {
        const Series g = comp_inverse(f);
        Json r = series_to_json(g);
        const Series id = Series::x(f.ring(), f.precision());
        r["check"] = compose(f, g) == id && compose(g, f) == id ? "ok" : "failed";
        return {r, kExitOk};
    }
    // rationality
    const std::size_t M = f.precision();
    if (M < 6) fail(ErrorCode::WindowTooSmall, "rationality needs at least 6 coefficients");
    const std::size_t max_order = o.budget ? *o.budget : (M - 2) / 2;
    config["max_order"] = std::to_string(max_order);
    Json r;
    const RationalityVerdict v = detect_recurrence(f, max_order);
    r["recurrence"] = rationality_to_json(v);
    bool binary_tail = f.ring().kind() == RingKind::ExactZ;
    for (std::size_t i = 1; binary_tail && i < M; ++i) binary_tail = f[i].z() == 0 || f[i].z() == 1;
    bool rational = v.rational;
    if (binary_tail) {
        const RationalityVerdict p = detect_periodic_01([&f](std::size_t i) { return static_cast<int>(f[i + 1].z().get_si()); }, M - 1);
        r["periodic_01_from_x1"] = rationality_to_json(p);
        rational = rational || p.rational;
    }
    r["rational"] = rational;
    return {r, rational ? kExitOk : kExitInconclusive};
}

inline CliOutcome cmd_resultant(const std::string& op, const CliOptions& o, Json& config) {
    expect_inputs(o, 2);
    const std::optional<Ring> R = ring_override(o, config);
    const ExactPoly a = poly_from_json(load_json_arg(o.in[0]), R), b = poly_from_json(load_json_arg(o.in[1]), R);
    if (a.ring != b.ring) fail(ErrorCode::RingMismatch, a.ring.flag() + " vs " + b.ring.flag());
    config["ring"] = a.ring.flag();
    if (op == "compute") {
        Json r;
        if (a.over_t()) {
            r["resultant"] = tpoly_to_json(resultant(a.as_t(), b.as_t()));
        } else {
            r["resultant"] = dec(resultant(a.as_z(), b.as_z()));
        }
        return {r, kExitOk};
    }
    if (op == "hadamard") {
        if (a.over_t()) fail(ErrorCode::UnsupportedRing, "the Hadamard check needs integer polynomials");
        const auto rep = hadamard_check(a.as_z(), b.as_z());
        return {bound_report_to_json(rep), rep.bound_ok ? kExitOk : kExitError};
    }
    if (!a.over_t()) fail(ErrorCode::UnsupportedRing, "the t-degree check needs fpt_exact polynomials");
    const auto rep = tdegree_check(a.as_t(), b.as_t());
    return {bound_report_to_json(rep), rep.bound_ok ? kExitOk : kExitError};
}

inline CliOutcome cmd_hensel(const CliOptions& o, Json& config) {
    if (o.ring.empty()) fail(ErrorCode::UsageError, "--ring: hensel needs zp:p:K or fpt:p:K");
    const Ring R = ring_flag(o);
    config["ring"] = R.flag();
    config["ring_grammar"] = kRingGrammar;
    const Ring exact = R.is_poly_kind() ? Ring::exact_fpt(R.p()) : Ring::exact_z();
    const ExactPoly P = load_exact_poly(o, o.poly ? std::nullopt : std::optional<Ring>(exact), config);
    if (!o.x0) fail(ErrorCode::UsageError, "--x0: a starting point is required");
    const Json x0j = (!o.x0->empty() && o.x0->front() == '[') ? parse_json_text(*o.x0, "--x0") : Json(*o.x0);
    const Elem x0 = elem_from_json(R, x0j, "--x0");
    const std::size_t K = o.K.value_or(R.prec());
    config["K"] = std::to_string(K);
    const HenselResult h = hensel_lift(R, poly_evaluator(P.coeffs), x0, K);
    return {hensel_to_json(R.with_precision(K), h), kExitOk};
}

inline CliOutcome cmd_gap(const std::string& op, const CliOptions& o, Json& config) {
    const GapSpec s = load_spec(o, config);
    const std::size_t N = o.N.value_or(2);
    const std::size_t K = o.K.value_or(600);
    if (op == "phi") {
        config["N"] = std::to_string(N);
        Json r;
        r["N"] = std::to_string(N);
        Json terms = Json::object();
        if (s.char_p) {
            const TPoly P = phi_truncation<FpPoly>(s, N);
            r["degree"] = std::to_string(P.degree());
            for (long i = 0; i <= P.degree(); ++i)
                if (!P[static_cast<std::size_t>(i)].is_zero()) terms[std::to_string(i)] = tpoly_to_json(P[static_cast<std::size_t>(i)]);
        } else {
            const ZPoly P = phi_truncation<BigInt>(s, N);
            r["degree"] = std::to_string(P.degree());
            for (long i = 0; i <= P.degree(); ++i)
                if (P[static_cast<std::size_t>(i)] != 0) terms[std::to_string(i)] = dec(P[static_cast<std::size_t>(i)]);
        }
        r["terms"] = terms;
        return {r, kExitOk};
    }
    config["K"] = std::to_string(K);
    const SmallRoot root = small_root_of_gap(s, K);
    const Ring& R = root.ring;
    if (op == "root") {
        Json r;
        r["lambda"] = elem_to_json(R, root.lambda);
        r["v_lambda"] = opt_size(R.valuation(root.lambda));
        r["v_f_lambda"] = opt_size(R.valuation(gap_value_and_derivative(s, R, root.lambda).first), std::to_string(K).c_str());
        r["hensel"] = hensel_to_json(R, root.lift);
        r["P"] = coeffs_to_json(root.coarse.ring, root.coarse.P);
        return {r, kExitOk};
    }
    config["N"] = std::to_string(N);
    if (op == "bound") return {bound_check_to_json(bound_check_prime(s, R, root.lambda, N)), kExitOk};
    if (op == "certify") {
        const Ring exact = s.exact_ring();
        const ExactPoly P = load_exact_poly(o, o.poly ? std::nullopt : std::optional<Ring>(exact), config);
        CertificateReport rep;
        if (s.char_p) rep = certify_not_root<FpPoly>(s, R, root.lambda, P.as_t(), N);
        else rep = certify_not_root<BigInt>(s, R, root.lambda, P.as_z(), N);
        return {certificate_to_json(rep), rep.verdict == Verdict::Inconclusive ? kExitInconclusive : kExitOk};
    }
    // sweep
    const std::size_t D = o.degree_cap.value_or(2), H = o.height_cap.value_or(5), jobs = o.jobs.value_or(1);
    config["degree_cap"] = std::to_string(D);
    config["height_cap"] = std::to_string(H);
    config["jobs"] = std::to_string(jobs);
    const FamilySummary f = s.char_p ? certify_family<FpPoly>(s, R, root.lambda, D, H, N, jobs, o.entries)
                                     : certify_family<BigInt>(s, R, root.lambda, D, H, N, jobs, o.entries);
    return {family_to_json(f, o.entries), f.inconclusive > 0 ? kExitInconclusive : kExitOk};
}

inline CliOutcome cmd_probe(const CliOptions& o, Json& config) {
    const DioPoly P = load_diopoly(o, config);
    const std::size_t points = o.n.value_or(100);
    config["points"] = std::to_string(points);
    const ProbeVerdict v = decision_probe(P, points, bits_budget(o, config));
    return {probe_to_json(P, v), v.tag == ProbeTag::Inconclusive ? kExitInconclusive : kExitOk};
}

inline CliOutcome cmd_h10(const std::string& op, const CliOptions& o, Json& config) {
    if (op == "theta") {
        const std::size_t d = o.d.value_or(2);
        if (!o.n) fail(ErrorCode::UsageError, "--n: an index is required");
        config["n"] = std::to_string(*o.n);
        config["d"] = std::to_string(d);
        Json r;
        r["point"] = point_to_json(theta(*o.n, d));
        return {r, kExitOk};
    }
    if (op == "probe") return cmd_probe(o, config);
    const DioPoly P = load_diopoly(o, config);
    const std::size_t bits = bits_budget(o, config);
    if (op == "bp") {
        const std::size_t n = o.n.value_or(2);
        config["n"] = std::to_string(n);
        const LazyBP lazy(P, bits);
        Json r = bp_to_json(lazy.at(n));
        r["n"] = std::to_string(n);
        return {r, kExitOk};
    }
    // encode
    const std::size_t M = o.n.value_or(32);
    const BigInt a0 = o.base_prime ? parse_bigint(*o.base_prime) : BigInt(2);
    config["x_prec"] = std::to_string(M);
    config["base_prime"] = dec(a0);
    const FPOracle fp(P, a0, bits);
    const Series f = fp.series(M);
    Json r;
    r["coeffs"] = coeffs_to_json(f.ring(), f.coeffs());
    Json b = Json::array();
    for (std::size_t j = 0; j <= 8; ++j) {
        const BPValue v = fp.bp().at(j);
        if (v.exact && bit_length(v.value) <= 256) b.push_back(dec(v.value));
        else b.push_back(v.describe());
    }
    r["b_prefix"] = b;
    r["underdetermined_beyond"] = opt_size(fp.underdetermined_beyond(), "none");
    const Series one_minus_x(f.ring(), Coeffs{f.ring().one(), f.ring().from_int(-1)});
    r["times_one_minus_x"] = coeffs_to_json(f.ring(), series_mul(f, Series(f.ring(), one_minus_x.extended(M))).coeffs());
    return {r, kExitOk};
}

struct Leaf {
    std::string path;
    std::vector<std::string> flags;
    Handler run;
};

inline std::vector<Leaf> leaves() {
    using V = std::vector<std::string>;
    std::vector<Leaf> out;
    out.push_back({"prepare", V{"ring", "in", "out"}, [](const CliOptions& o, Json& c) { return cmd_prepare(o, c, false); }});
    out.push_back({"strong-factor", V{"ring", "in", "out"}, [](const CliOptions& o, Json& c) { return cmd_prepare(o, c, true); }});
    for (const char* op : {"mul", "invert", "compose", "comp-inverse", "rationality"}) {
        V flags{"ring", "in", "out"};
        if (std::string(op) == "rationality") flags.push_back("budget");
        out.push_back({std::string("series ") + op, flags, [op = std::string(op)](const CliOptions& o, Json& c) { return cmd_series(op, o, c); }});
    }
    for (const char* op : {"compute", "hadamard", "tdegree"})
        out.push_back({std::string("resultant ") + op, V{"ring", "in", "out"},
                       [op = std::string(op)](const CliOptions& o, Json& c) { return cmd_resultant(op, o, c); }});
    out.push_back({"hensel", V{"ring", "in", "poly", "x0", "K", "out"}, cmd_hensel});
    const std::map<std::string, V> gap_flags{
        {"root", V{"spec", "K", "budget", "out"}},
        {"phi", V{"spec", "N", "budget", "out"}},
        {"bound", V{"spec", "N", "K", "budget", "out"}},
        {"certify", V{"spec", "N", "K", "budget", "in", "poly", "out"}},
        {"sweep", V{"spec", "N", "K", "budget", "degree-cap", "height-cap", "jobs", "entries", "out"}},
    };
    for (const auto& [op, flags] : gap_flags)
        out.push_back({"gap " + op, flags, [op = op](const CliOptions& o, Json& c) { return cmd_gap(op, o, c); }});
    const V probe_flags{"poly", "in", "n", "d", "budget", "out"};
    out.push_back({"gap probe", probe_flags, cmd_probe});
    out.push_back({"h10 theta", V{"n", "d", "out"}, [](const CliOptions& o, Json& c) { return cmd_h10("theta", o, c); }});
    out.push_back({"h10 bp", probe_flags, [](const CliOptions& o, Json& c) { return cmd_h10("bp", o, c); }});
    V enc = probe_flags;
    enc.push_back("base-prime");
    out.push_back({"h10 encode", enc, [](const CliOptions& o, Json& c) { return cmd_h10("encode", o, c); }});
    out.push_back({"h10 probe", probe_flags, [](const CliOptions& o, Json& c) { return cmd_h10("probe", o, c); }});
    return out;
}

inline void add_flag(CLI::App* app, const std::string& name, CliOptions& o) {
    if (name == "ring") app->add_option("--ring", o.ring, "ring descriptor kind:p:prec");
    else if (name == "in") app->add_option("--in", o.in, "input file, or inline JSON starting with '{' (repeatable)");
    else if (name == "out") app->add_option("--out", o.out, "output path (default stdout)");
    else if (name == "spec") app->add_option("--spec", o.spec, "gap spec file, inline JSON, 'reference' or 'reference-p'");
    else if (name == "N") app->add_option("--N", o.N, "truncation index N");
    else if (name == "K") app->add_option("--K", o.K, "pi-adic precision K");
    else if (name == "budget") app->add_option("--budget", o.budget, "degree cap for Phi_N (gap), bit budget (h10), max order (rationality)");
    else if (name == "degree-cap") app->add_option("--degree-cap", o.degree_cap, "largest candidate degree D");
    else if (name == "height-cap") app->add_option("--height-cap", o.height_cap, "coefficient height H");
    else if (name == "jobs") app->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    else if (name == "base-prime") app->add_option("--base-prime", o.base_prime, "prime constant term a0 of f_P");
    else if (name == "x0") app->add_option("--x0", o.x0, "Newton starting point");
    else if (name == "poly") app->add_option("--poly,poly", o.poly, "polynomial text");
    else if (name == "n") app->add_option("--n", o.n, "index, point count or window length");
    else if (name == "d") app->add_option("--d", o.d, "number of variables")->check(CLI::PositiveNumber);
    else if (name == "entries") app->add_flag("--entries", o.entries, "include every candidate in the report");
}

}  // namespace cli_detail

/// Run one command line; returns the process exit status.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"prepkit: Weierstrass preparation, gap series certificates and Diophantine encodings"};
    app.require_subcommand(1);
    CliOptions opts;
    std::vector<std::pair<CLI::App*, const cli_detail::Leaf*>> bound;
    const auto table = cli_detail::leaves();
    std::map<std::string, CLI::App*> groups;
    for (const auto& leaf : table) {
        const auto sp = leaf.path.find(' ');
        CLI::App* sub = nullptr;
        if (sp == std::string::npos) {
            sub = app.add_subcommand(leaf.path, leaf.path);
        } else {
            const std::string g = leaf.path.substr(0, sp);
            auto it = groups.find(g);
            if (it == groups.end()) {
                it = groups.emplace(g, app.add_subcommand(g, g + " operations")).first;
                it->second->require_subcommand(1);
            }
            sub = it->second->add_subcommand(leaf.path.substr(sp + 1), leaf.path);
        }
        for (const auto& f : leaf.flags) cli_detail::add_flag(sub, f, opts);
        bound.push_back({sub, &leaf});
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: UsageError: " << e.what() << "\n";
        return kExitError;
    }

    const cli_detail::Leaf* chosen = nullptr;
    for (const auto& [sub, leaf] : bound)
        if (sub->parsed()) chosen = leaf;
    if (!chosen) {
        err << "error: UsageError: no command given\n";
        return kExitError;
    }

    try {
        Json config = Json::object();
        CliOutcome res = chosen->run(opts, config);
        Json report;
        report["command"] = chosen->path;
        report["config"] = config;
        report["result"] = res.result;
        report["exit_code"] = std::to_string(res.code);
        const std::string text = render_json(report);
        if (opts.out.empty()) out << text;
        else write_text_file(opts.out, text);
        return res.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: Internal: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace prepkit
