#pragma once

/**
 * @file json_io.hpp
 * @brief JSON encodings of rings, elements, series, polynomials, gap specs and
 *        every report the command-line tool emits.
 *
 * Numbers are written as decimal strings, so reports never contain a floating
 * point literal and big values survive unchanged.  On input, plain JSON
 * integers are accepted wherever a decimal string is.  Object keys come out
 * sorted (nlohmann::json stores objects in a std::map), which keeps reports
 * byte-stable.
 */

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "prepkit/bigint.hpp"
#include "prepkit/certificate.hpp"
#include "prepkit/error.hpp"
#include "prepkit/gap_series.hpp"
#include "prepkit/h10.hpp"
#include "prepkit/hensel.hpp"
#include "prepkit/rationality.hpp"
#include "prepkit/resultant.hpp"
#include "prepkit/rings.hpp"
#include "prepkit/series.hpp"
#include "prepkit/weierstrass.hpp"

namespace prepkit {

using Json = nlohmann::json;

inline constexpr const char* kRingGrammar = "kind:p:prec/1";

// ---- scalars -----------------------------------------------------------------

inline std::string dec(const BigInt& v) { return to_decimal(v); }
inline std::string dec(std::size_t v) { return std::to_string(v); }

inline BigInt json_bigint(const Json& j, const std::string& what) {
    if (j.is_string()) {
        try {
            return parse_bigint(j.get<std::string>());
        } catch (const Error&) {
            fail(ErrorCode::ParseError, what + ": not an integer: " + j.get<std::string>());
        }
    }
    if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<unsigned long long>()));
    fail(ErrorCode::ParseError, what + ": expected an integer or a decimal string");
}

inline BigRat json_bigrat(const Json& j, const std::string& what) {
    if (j.is_string()) {
        try {
            return parse_bigrat(j.get<std::string>());
        } catch (const Error&) {
            fail(ErrorCode::ParseError, what + ": not a rational: " + j.get<std::string>());
        }
    }
    return BigRat(json_bigint(j, what));
}

inline std::size_t json_size(const Json& j, const std::string& what) {
    return to_size(json_bigint(j, what), what.c_str());
}

inline const Json& require_key(const Json& j, const std::string& key, const std::string& what) {
    if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, what + ": missing \"" + key + "\"");
    return j.at(key);
}

// ---- rings -------------------------------------------------------------------

inline RingKind parse_ring_kind(const std::string& k) {
    if (k == "zp") return RingKind::Zp;
    if (k == "fpt") return RingKind::FpT;
    if (k == "zmodpk") return RingKind::ZmodPk;
    if (k == "z") return RingKind::ExactZ;
    if (k == "fpt_exact") return RingKind::ExactFpT;
    fail(ErrorCode::ParseError, "unknown ring kind \"" + k + "\"");
}

/// "zp:5:12", "fpt:3:10", "zmodpk:2:6", "z", "z:2", "fpt_exact:2".
inline Ring parse_ring_flag(const std::string& flag) {
    std::vector<std::string> parts;
    std::stringstream ss(flag);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.empty()) fail(ErrorCode::ParseError, "empty ring descriptor");
    const RingKind kind = parse_ring_kind(parts[0]);
    auto num = [&](std::size_t i, const char* what) -> std::uint64_t {
        if (i >= parts.size()) fail(ErrorCode::ParseError, std::string("ring \"") + flag + "\" lacks " + what);
        const std::string& s = parts[i];
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 18)
            fail(ErrorCode::ParseError, std::string("ring \"") + flag + "\": bad " + what + " \"" + s + "\"");
        return std::stoull(s);
    };
    RingDesc d;
    d.kind = kind;
    std::size_t want = 3;
    switch (kind) {
        case RingKind::ExactZ:
            want = parts.size() == 1 ? 1 : 2;
            d.p = want == 2 ? num(1, "prime") : 0;
            break;
        case RingKind::ExactFpT:
            want = 2;
            d.p = num(1, "prime");
            break;
        default:
            d.p = num(1, "prime");
            d.prec = static_cast<std::size_t>(num(2, "precision"));
    }
    if (parts.size() != want) fail(ErrorCode::ParseError, "ring \"" + flag + "\" has the wrong number of fields");
    return Ring(d);
}

inline Json ring_to_json(const Ring& R) {
    Json j;
    j["kind"] = std::string(kind_name(R.kind()));
    j["p"] = std::to_string(R.p());
    j["prec"] = std::to_string(R.prec());
    j["flag"] = R.flag();
    return j;
}

inline Ring ring_from_json(const Json& j) {
    if (j.is_string()) return parse_ring_flag(j.get<std::string>());
    if (!j.is_object()) fail(ErrorCode::ParseError, "ring: expected a descriptor object or flag string");
    RingDesc d;
    d.kind = parse_ring_kind(require_key(j, "kind", "ring").get<std::string>());
    if (j.contains("p")) d.p = static_cast<std::uint64_t>(json_size(j.at("p"), "ring.p"));
    if (j.contains("prec")) d.prec = json_size(j.at("prec"), "ring.prec");
    return Ring(d);
}

// ---- elements ----------------------------------------------------------------

inline Json tpoly_to_json(const FpPoly& t) {
    Json a = Json::array();
    for (auto c : t.coeffs()) a.push_back(std::to_string(c));
    return a;
}

inline FpPoly tpoly_from_json(std::uint64_t p, const Json& j, const std::string& what) {
    const BigInt P(static_cast<unsigned long>(p));
    if (j.is_array()) {
        std::vector<FpPoly::coeff_t> c;
        for (const auto& x : j) c.push_back(static_cast<FpPoly::coeff_t>(mod_floor(json_bigint(x, what), P).get_ui()));
        return FpPoly(static_cast<FpPoly::coeff_t>(p), std::move(c));
    }
    return FpPoly(static_cast<FpPoly::coeff_t>(p), {static_cast<FpPoly::coeff_t>(mod_floor(json_bigint(j, what), P).get_ui())});
}

inline Json elem_to_json(const Ring& R, const Elem& e) {
    if (R.is_poly_kind()) return tpoly_to_json(e.t());
    return dec(e.z());
}

inline Elem elem_from_json(const Ring& R, const Json& j, const std::string& what = "element") {
    if (R.is_poly_kind()) return R.from_tpoly(tpoly_from_json(R.p(), j, what));
    if (j.is_array()) fail(ErrorCode::ParseError, what + ": array given for the integer ring " + R.flag());
    return R.from_bigint(json_bigint(j, what));
}

inline Json coeffs_to_json(const Ring& R, const Coeffs& c) {
    Json a = Json::array();
    for (const auto& e : c) a.push_back(elem_to_json(R, e));
    return a;
}

inline Coeffs coeffs_from_json(const Ring& R, const Json& j, const std::string& what) {
    if (!j.is_array()) fail(ErrorCode::ParseError, what + ": expected an array");
    Coeffs c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(elem_from_json(R, j[i], what + "[" + std::to_string(i) + "]"));
    return c;
}

// ---- gap specs ----------------------------------------------------------------

inline Elem exact_coeff_from_json(const GapSpec& s, const Json& j, const std::string& what) {
    if (s.char_p) return Elem(tpoly_from_json(s.p, j, what));
    if (j.is_array()) fail(ErrorCode::ParseError, what + ": characteristic-zero coefficients are integers");
    return Elem(json_bigint(j, what));
}

inline Json exact_coeff_to_json(const Elem& e) {
    if (e.is_int()) return dec(e.z());
    return tpoly_to_json(e.t());
}

/**
 * {"char":"zero"|"p", "p":2,
 *  "a":{"kind":"const_after", "a0":"2", "values":[...], "rest":"1"},
 *  "b":{"kind":"pow2_nsq"} | {"kind":"explicit","values":[...]},
 *  "C":"2", "kappa":"2", "budget":65536, "unit_witness":0}
 * "values" (c_0, c_1, ... before the constant tail), "rest" and
 * "unit_witness" are optional.
 */
inline GapSpec gap_spec_from_json(const Json& j) {
    if (!j.is_object()) fail(ErrorCode::ParseError, "gap spec: expected an object");
    GapSpec s;
    const std::string ch = j.value("char", std::string("zero"));
    if (ch == "zero" || ch == "0") s.char_p = false;
    else if (ch == "p") s.char_p = true;
    else fail(ErrorCode::ParseError, "gap spec: char must be \"zero\" or \"p\"");
    if (j.contains("p")) s.p = static_cast<std::uint64_t>(json_size(j.at("p"), "gap spec p"));
    if (!is_prime(BigInt(static_cast<unsigned long>(s.p)))) fail(ErrorCode::CompositeModulus, std::to_string(s.p) + " is not prime");

    const Json& a = require_key(j, "a", "gap spec");
    const std::string akind = a.value("kind", std::string("const_after"));
    if (akind != "const_after" && akind != "explicit") fail(ErrorCode::ParseError, "gap spec: unknown coefficient rule \"" + akind + "\"");
    s.a0 = exact_coeff_from_json(s, require_key(a, "a0", "gap spec a"), "a0");
    if (a.contains("values"))
        for (std::size_t i = 0; i < a.at("values").size(); ++i)
            s.values.push_back(exact_coeff_from_json(s, a.at("values")[i], "c_" + std::to_string(i)));
    if (a.contains("rest")) s.rest = exact_coeff_from_json(s, a.at("rest"), "rest");
    else if (akind == "const_after") fail(ErrorCode::ParseError, "gap spec: const_after needs \"rest\"");

    const Json& b = require_key(j, "b", "gap spec");
    const std::string bkind = require_key(b, "kind", "gap spec b").get<std::string>();
    if (bkind == "pow2_nsq") {
        s.b_rule = BRule::Pow2NSquared;
    } else if (bkind == "explicit") {
        s.b_rule = BRule::Explicit;
        for (const auto& v : require_key(b, "values", "gap spec b")) s.b_values.push_back(json_bigint(v, "b value"));
    } else {
        fail(ErrorCode::ParseError, "gap spec: unknown exponent rule \"" + bkind + "\"");
    }
    if (j.contains("C")) s.C = json_bigrat(j.at("C"), "C");
    if (j.contains("kappa")) s.kappa = json_bigrat(j.at("kappa"), "kappa");
    if (j.contains("budget")) s.degree_cap = json_size(j.at("budget"), "budget");
    if (j.contains("unit_witness")) s.unit_witness = json_size(j.at("unit_witness"), "unit_witness");
    return s;
}

inline Json gap_spec_to_json(const GapSpec& s) {
    Json j;
    j["char"] = s.char_p ? "p" : "zero";
    j["p"] = std::to_string(s.p);
    Json a;
    a["kind"] = "const_after";
    a["a0"] = exact_coeff_to_json(s.a0);
    if (!s.values.empty()) {
        Json v = Json::array();
        for (const auto& c : s.values) v.push_back(exact_coeff_to_json(c));
        a["values"] = v;
    }
    if (s.rest) a["rest"] = exact_coeff_to_json(*s.rest);
    else a["kind"] = "explicit";
    j["a"] = a;
    Json b;
    if (s.b_rule == BRule::Pow2NSquared) {
        b["kind"] = "pow2_nsq";
    } else {
        b["kind"] = "explicit";
        Json v = Json::array();
        for (const auto& e : s.b_values) v.push_back(dec(e));
        b["values"] = v;
    }
    j["b"] = b;
    j["C"] = to_decimal(s.C);
    j["kappa"] = to_decimal(s.kappa);
    j["budget"] = std::to_string(s.degree_cap);
    if (s.unit_witness) j["unit_witness"] = std::to_string(*s.unit_witness);
    return j;
}

// ---- series ------------------------------------------------------------------

/**
 * {"ring":R, "x_prec":M, "coeffs":[...]} or {"ring":R, "x_prec":M, "oracle":{...}}
 * with oracle kinds
 *   gap       {"kind":"gap", "spec":{gap spec}}            (ring zp / fpt)
 *   h10       {"kind":"h10", "poly":"x-3", "a0":"2", "bits":N}
 *   periodic  {"kind":"periodic", "prefix":[...], "period":[...]}
 *   explicit  {"kind":"explicit", "coeffs":[...]}          (zero past the list)
 * `ring_override` (the --ring flag) takes precedence over the file's ring.
 */
inline Series series_from_json(const Json& j, const std::optional<Ring>& ring_override = std::nullopt) {
    if (!j.is_object()) fail(ErrorCode::ParseError, "series: expected an object");
    std::optional<Ring> R = ring_override;
    if (!R) {
        if (!j.contains("ring")) fail(ErrorCode::UsageError, "series has no ring; pass --ring");
        R = ring_from_json(j.at("ring"));
    }
    if (j.contains("coeffs")) {
        Coeffs c = coeffs_from_json(*R, j.at("coeffs"), "coeffs");
        if (j.contains("x_prec")) c.resize(json_size(j.at("x_prec"), "x_prec"), R->zero());
        if (c.empty()) fail(ErrorCode::WindowTooSmall, "series: empty coefficient window");
        return Series(*R, std::move(c));
    }
    const Json& o = require_key(j, "oracle", "series");
    const std::size_t M = json_size(require_key(j, "x_prec", "oracle series"), "x_prec");
    if (M == 0) fail(ErrorCode::WindowTooSmall, "series: x_prec must be positive");
    const std::string kind = require_key(o, "kind", "oracle").get<std::string>();
    if (kind == "gap") return build_gap_series(gap_spec_from_json(require_key(o, "spec", "gap oracle")), *R, M);
    if (kind == "h10") {
        const DioPoly P = parse_diopoly_any(require_key(o, "poly", "h10 oracle").get<std::string>());
        const BigInt a0 = o.contains("a0") ? json_bigint(o.at("a0"), "a0") : BigInt(2);
        const std::size_t bits = o.contains("bits") ? json_size(o.at("bits"), "bits") : default_budget_bits();
        return FPOracle(P, a0, bits).series(M, *R);
    }
    if (kind == "periodic") {
        const Coeffs pre = o.contains("prefix") ? coeffs_from_json(*R, o.at("prefix"), "prefix") : Coeffs{};
        const Coeffs per = coeffs_from_json(*R, require_key(o, "period", "periodic oracle"), "period");
        if (per.empty()) fail(ErrorCode::ParseError, "periodic oracle: empty period");
        auto oracle = std::make_shared<CoefficientOracle>("periodic", [pre, per](std::size_t i) {
            return i < pre.size() ? pre[i] : per[(i - pre.size()) % per.size()];
        });
        return Series::from_oracle(*R, M, oracle);
    }
    if (kind == "explicit") {
        const Coeffs c = coeffs_from_json(*R, require_key(o, "coeffs", "explicit oracle"), "coeffs");
        const Elem z = R->zero();
        auto oracle = std::make_shared<CoefficientOracle>("explicit", [c, z](std::size_t i) { return i < c.size() ? c[i] : z; });
        return Series::from_oracle(*R, M, oracle);
    }
    fail(ErrorCode::ParseError, "unknown oracle kind \"" + kind + "\"");
}

inline Json series_to_json(const Series& f) {
    Json j;
    j["ring"] = ring_to_json(f.ring());
    j["x_prec"] = std::to_string(f.precision());
    j["coeffs"] = coeffs_to_json(f.ring(), f.coeffs());
    return j;
}

// ---- exact polynomials -------------------------------------------------------

/// A polynomial {"ring":R, "coeffs":[...]} over z or fpt_exact.
struct ExactPoly {
    Ring ring = Ring::exact_z();
    Coeffs coeffs;

    bool over_t() const { return ring.is_poly_kind(); }
    ZPoly as_z() const {
        std::vector<BigInt> c;
        for (const auto& e : coeffs) c.push_back(e.z());
        return ZPoly(std::move(c), BigInt(0));
    }
    TPoly as_t() const {
        std::vector<FpPoly> c;
        for (const auto& e : coeffs) c.push_back(e.t());
        return TPoly(std::move(c), FpPoly(static_cast<FpPoly::coeff_t>(ring.p())));
    }
};

inline ExactPoly poly_from_json(const Json& j, const std::optional<Ring>& ring_override = std::nullopt) {
    if (!j.is_object()) fail(ErrorCode::ParseError, "polynomial: expected an object");
    std::optional<Ring> R = ring_override;
    if (!R) R = j.contains("ring") ? ring_from_json(j.at("ring")) : Ring::exact_z();
    if (R->kind() != RingKind::ExactZ && R->kind() != RingKind::ExactFpT)
        fail(ErrorCode::UnsupportedRing, "polynomials must have coefficients in z or fpt_exact, got " + R->flag());
    return {*R, coeffs_from_json(*R, require_key(j, "coeffs", "polynomial"), "coeffs")};
}

template <class T>
Json upoly_to_json(const UPoly<T>& P) {
    Json a = Json::array();
    for (long i = 0; i <= P.degree(); ++i) {
        if constexpr (std::is_same_v<T, BigInt>) a.push_back(dec(P[static_cast<std::size_t>(i)]));
        else a.push_back(tpoly_to_json(P[static_cast<std::size_t>(i)]));
    }
    return a;
}

inline Json domain_to_json(const BigInt& v) { return dec(v); }
inline Json domain_to_json(const FpPoly& v) { return tpoly_to_json(v); }

// ---- reports -----------------------------------------------------------------

inline Json factorization_to_json(const WFactorization& w, const Series& f) {
    if (!roundtrip_ok(f, w)) fail(ErrorCode::Internal, "factorization failed its roundtrip check");
    Json j;
    j["v"] = std::to_string(w.v);
    j["n"] = std::to_string(w.n);
    j["P"] = coeffs_to_json(w.ring, w.P);
    j["U"] = series_to_json(w.U);
    j["check"] = "ok";
    return j;
}

template <class T>
Json bound_report_to_json(const BoundReport<T>& r) {
    Json j;
    j["B"] = domain_to_json(r.B);
    j["bound_ok"] = r.bound_ok;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["which"] = r.which;
    return j;
}

inline Json hensel_to_json(const Ring& R, const HenselResult& h) {
    Json j;
    j["root"] = elem_to_json(R, h.root);
    j["e"] = std::to_string(h.e);
    Json t = Json::array();
    for (auto v : h.trace) t.push_back(std::to_string(v));
    j["trace"] = t;
    j["working_precision"] = std::to_string(h.working_precision);
    return j;
}

inline Json margin_to_json(const MarginReport& m) {
    Json j;
    j["N"] = std::to_string(m.N);
    j["b_N"] = dec(m.b_N);
    j["b_next"] = dec(m.b_next);
    j["ratio"] = to_decimal(m.ratio);
    j["lhs"] = to_decimal(m.lhs);
    j["rhs"] = to_decimal(m.rhs);
    j["lhs_bits"] = std::to_string(bit_length(m.lhs.get_num()) - bit_length(m.lhs.get_den()));
    j["rhs_bits"] = std::to_string(bit_length(m.rhs.get_num()) - bit_length(m.rhs.get_den()));
    j["form"] = m.form;
    j["flipped"] = m.flipped;
    return j;
}

inline Json opt_size(const std::optional<std::size_t>& v, const char* none = "inf") {
    return v ? Json(std::to_string(*v)) : Json(none);
}

inline Json bound_check_to_json(const BoundCheckReport& r) {
    Json j;
    j["N"] = std::to_string(r.N);
    j["K"] = std::to_string(r.K);
    j["b_next"] = dec(r.b_next);
    j["v_lambda"] = std::to_string(r.v_lambda);
    j["v_next_coeff"] = std::to_string(r.v_next_coeff);
    j["required"] = dec(r.required);
    j["phi_val"] = opt_size(r.phi_val);
    j["holds"] = r.holds;
    j["equality"] = r.equality;
    return j;
}

inline Json certificate_to_json(const CertificateReport& r) {
    Json j;
    j["N"] = std::to_string(r.N);
    j["K"] = std::to_string(r.K);
    j["phi_val"] = opt_size(r.phi_val);
    j["b_next"] = dec(r.b_next);
    j["B"] = r.B;
    j["B_zero"] = r.B_zero;
    j["B_val"] = opt_size(r.B_val);
    j["verdict"] = std::string(verdict_name(r.verdict));
    j["cross_checked"] = r.cross_checked;
    j["margin"] = margin_to_json(r.margin);
    return j;
}

inline Json family_to_json(const FamilySummary& f, bool with_entries) {
    Json j;
    j["degree_cap"] = std::to_string(f.degree_cap);
    j["height_cap"] = std::to_string(f.height_cap);
    j["N"] = std::to_string(f.N);
    j["total"] = std::to_string(f.total);
    j["certified"] = std::to_string(f.certified);
    j["shared"] = std::to_string(f.shared);
    j["inconclusive"] = std::to_string(f.inconclusive);
    j["all_cross_checked"] = f.all_cross_checked;
    j["margin"] = margin_to_json(f.margin);
    if (with_entries) {
        Json e = Json::array();
        for (const auto& x : f.entries) {
            Json k;
            k["coeffs"] = x.coeffs;
            k["verdict"] = std::string(verdict_name(x.verdict));
            k["B_val"] = opt_size(x.B_val);
            e.push_back(k);
        }
        j["entries"] = e;
    }
    return j;
}

inline Json rationality_to_json(const RationalityVerdict& v) {
    Json j;
    j["rational"] = v.rational;
    j["preperiod"] = std::to_string(v.preperiod);
    j["period"] = std::to_string(v.period);
    Json q = Json::array();
    for (const auto& c : v.q) q.push_back(to_decimal(c));
    j["q"] = q;
    j["budget"] = std::to_string(v.budget);
    return j;
}

inline Json point_to_json(const Point& x) {
    Json a = Json::array();
    for (const auto& c : x) a.push_back(dec(c));
    return a;
}

inline Json bp_to_json(const BPValue& b) {
    Json j;
    j["exact"] = b.exact;
    if (b.exact) {
        j["value"] = dec(b.value);
        j["bits"] = std::to_string(bit_length(b.value));
    } else {
        j["marker"] = std::to_string(b.marker);
        j["offset"] = dec(b.offset);
    }
    j["display"] = b.describe();
    j["exponent"] = b.exponent ? Json(dec(*b.exponent)) : Json("over_budget");
    return j;
}

inline Json probe_to_json(const DioPoly& P, const ProbeVerdict& v) {
    Json j;
    j["poly"] = P.to_string();
    j["d"] = std::to_string(P.nvars());
    j["tag"] = probe_tag_name(v.tag);
    j["points"] = std::to_string(v.points);
    j["bits"] = std::to_string(v.bits);
    if (v.tag == ProbeTag::RationalCertified) {
        j["zero_index"] = std::to_string(v.zero_index);
        j["zero_point"] = point_to_json(v.zero_point);
    } else {
        j["horizon"] = std::to_string(v.horizon);
        Json s = Json::object();
        for (std::size_t i = 0; i < v.samples.size(); ++i) s[std::to_string(v.sample_indices[i])] = dec(v.samples[i]);
        j["exponent_samples"] = s;
        j["obstruction_modulus"] = v.obstruction_modulus ? Json(std::to_string(*v.obstruction_modulus)) : Json("none");
    }
    return j;
}

// ---- files -------------------------------------------------------------------

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(ErrorCode::ParseError, origin + ": " + e.what());
    }
}

/// A --in argument: inline JSON when it starts with '{', a file path otherwise.
inline Json load_json_arg(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return parse_json_text(arg, "inline JSON");
    return parse_json_text(read_text_file(arg), arg);
}

/// Canonical rendering: sorted keys, two-space indent, trailing newline.
inline std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot write " + path);
    out << text;
    out.flush();
    if (!out) fail(ErrorCode::IoError, "write to " + path + " failed");
}

}  // namespace prepkit
