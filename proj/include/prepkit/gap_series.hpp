#pragma once

/**
 * @file gap_series.hpp
 * @brief Gap series a_0 + sum_{n>=0} c_n x^{b(n)} and their sparse evaluation.
 *
 * The constant term a_0 lies in the maximal ideal; c_n sits at exponent b(n),
 * with b(0) = 1 and b strictly increasing.  The reference instance over Z_2 is
 *
 *     2 + x + x^2 + x^16 + x^512 + ...      (a_0 = 2, c_n = 1, b(n) = 2^(n^2))
 *
 * and its characteristic-2 twin replaces a_0 = 2 by a_0 = t.
 *
 * Coefficients are exact: BigInt in characteristic 0, FpPoly (F_p[t]) in
 * characteristic p.  Evaluation at a point of positive valuation only visits
 * the terms that survive modulo pi^K, so x^{b(n)} is never materialized.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prepkit/bigint.hpp"
#include "prepkit/error.hpp"
#include "prepkit/fp_poly.hpp"
#include "prepkit/rings.hpp"
#include "prepkit/series.hpp"

namespace prepkit {

enum class BRule { Pow2NSquared, Explicit };

struct GapSpec {
    bool char_p = false;
    std::uint64_t p = 2;
    /// Exact coefficients: BigInt (char 0) or FpPoly (char p).
    Elem a0;
    /// c_0, c_1, ... ; indices past the list use `rest`.
    std::vector<Elem> values;
    std::optional<Elem> rest;
    BRule b_rule = BRule::Pow2NSquared;
    std::vector<BigInt> b_values;
    /// Growth constants: |coefficient at x^e| <= kappa C^e (char 0), or
    /// deg_t(coefficient at x^e) <= C max(e, 1) (char p).
    BigRat C = 2, kappa = 2;
    /// Index n of a unit c_n, if the spec names one.
    std::optional<std::size_t> unit_witness;
    /// Largest b(N) that may be materialized as a dense polynomial.
    std::size_t degree_cap = std::size_t{1} << 16;

    static GapSpec reference() {
        GapSpec s;
        s.a0 = Elem(BigInt(2));
        s.rest = Elem(BigInt(1));
        return s;
    }
    static GapSpec reference_char_p() {
        GapSpec s;
        s.char_p = true;
        s.a0 = Elem(FpPoly(2, {0, 1}));
        s.rest = Elem(FpPoly(2, {1}));
        return s;
    }

    Ring exact_ring() const { return char_p ? Ring::exact_fpt(p) : Ring::exact_z(p); }
    Ring local_ring(std::size_t K) const { return char_p ? Ring::fpt(p, K) : Ring::zp(p, K); }

    /// c_n.
    Elem coeff(std::size_t n) const {
        if (n < values.size()) return values[n];
        if (rest) return *rest;
        fail(ErrorCode::SpecViolation, "coefficient rule undefined at index " + std::to_string(n));
    }

    /// b(n).
    BigInt b(std::size_t n) const {
        if (b_rule == BRule::Pow2NSquared) {
            if (n > 4096) fail(ErrorCode::BudgetExceeded, "b(" + std::to_string(n) + ") is too large to represent");
            return pow_ui(2, static_cast<unsigned long>(n * n));
        }
        if (n < b_values.size()) return b_values[n];
        fail(ErrorCode::SpecViolation, "exponent rule undefined at index " + std::to_string(n));
    }

    /// Number of indices for which both rules are defined (SIZE_MAX if unbounded).
    std::size_t defined_prefix() const {
        std::size_t lim = SIZE_MAX;
        if (b_rule == BRule::Explicit) lim = b_values.size();
        if (!rest) lim = std::min(lim, values.size());
        return lim;
    }
};

/// Coefficient of the exact ring mapped into a local ring of the same prime.
inline Elem to_local(const Ring& R, const Elem& exact) {
    return exact.is_int() ? R.from_bigint(exact.z()) : R.from_tpoly(exact.t());
}

/// v_pi of an exact coefficient.
inline std::size_t exact_valuation(const GapSpec& s, const Elem& c) {
    return s.exact_ring().valuation_exact(c);
}

inline bool exact_is_unit_mod_pi(const GapSpec& s, const Elem& c) {
    if (c.is_int()) return mpz_divisible_ui_p(c.z().get_mpz_t(), static_cast<unsigned long>(s.p)) == 0;
    return !c.t().is_zero() && c.t()[0] != 0;
}

/**
 * Check the spec on c_0 .. c_N (and b(0) .. b(N+1)).  Returns the unit
 * witness index used for condition (2).
 */
inline std::size_t validate_gap_spec(const GapSpec& s, std::size_t N) {
    auto violation = [](const std::string& what) { fail(ErrorCode::SpecViolation, what); };
    if (!is_prime(BigInt(static_cast<unsigned long>(s.p)))) fail(ErrorCode::CompositeModulus, std::to_string(s.p) + " is not prime");
    if (s.a0.is_int() == s.char_p) violation("coefficient type does not match the characteristic");
    if (s.C <= 1 || (!s.char_p && s.kappa <= 1)) violation("growth constants must exceed 1");
    if (s.b_rule == BRule::Explicit && s.b_values.empty()) violation("explicit exponent rule has no values");
    if (s.defined_prefix() == 0) violation("coefficient rule defines no coefficients");
    const std::size_t upto = std::min(N, s.defined_prefix() - 1);

    // b(0) = 1, strictly increasing.
    if (s.b(0) != 1) violation("b(0) must be 1");
    const std::size_t b_upto = std::min(N + 1, s.b_rule == BRule::Explicit ? s.b_values.size() - 1 : N + 1);
    for (std::size_t n = 1; n <= b_upto; ++n)
        if (s.b(n) <= s.b(n - 1)) violation("b is not strictly increasing at index " + std::to_string(n));

    // Condition (1): pi | a_0, a_0 != 0.
    const Ring E = s.exact_ring();
    if (E.is_zero(s.a0)) violation("condition 1: a_0 must be nonzero");
    if (exact_valuation(s, s.a0) == 0) violation("condition 1: a_0 is not divisible by the uniformizer");

    // Growth bound (condition 3) on the prefix, exactly.
    auto growth_ok = [&](const Elem& c, const BigInt& e) {
        if (s.char_p) {
            const BigInt w = e == 0 ? BigInt(1) : e;
            return BigRat(static_cast<long>(c.t().degree())) <= s.C * BigRat(w);
        }
        const BigInt absz = abs(c.z());
        const BigRat absc(absz);
        if (e <= (1u << 20)) {
            BigRat bound = s.kappa;
            BigRat Cp(pow(s.C.get_num(), e.get_ui()), pow(s.C.get_den(), e.get_ui()));
            return absc <= bound * Cp;
        }
        // Bernoulli: C^e >= 1 + e (C - 1).
        return absc <= s.kappa * (BigRat(1) + BigRat(e) * (s.C - 1));
    };
    if (!growth_ok(s.a0, BigInt(0))) violation("condition 3 fails for a_0");
    for (std::size_t n = 0; n <= upto; ++n) {
        const Elem c = s.coeff(n);
        if (E.is_zero(c)) violation("coefficient c_" + std::to_string(n) + " is zero");
        if (!growth_ok(c, s.b(n))) violation("condition 3 fails at index " + std::to_string(n));
    }

    // Condition (2): a named (or the first) unit coefficient.
    if (s.unit_witness) {
        if (*s.unit_witness >= s.defined_prefix()) violation("condition 2: witness index lies outside the coefficient rule");
        if (!exact_is_unit_mod_pi(s, s.coeff(*s.unit_witness)))
            violation("condition 2: c_" + std::to_string(*s.unit_witness) + " is not a unit");
        return *s.unit_witness;
    }
    const std::size_t search = std::min<std::size_t>(std::max<std::size_t>(N, 16), s.defined_prefix() - 1);
    for (std::size_t n = 0; n <= search; ++n)
        if (exact_is_unit_mod_pi(s, s.coeff(n))) return n;
    fail(ErrorCode::SpecViolation, "condition 2: no unit coefficient among c_0 .. c_" + std::to_string(search));
}

/// b(n) as machine words for the prefix below 2^62 (for oracle lookups).
inline std::vector<std::size_t> small_exponents(const GapSpec& s) {
    std::vector<std::size_t> out;
    const BigInt lim = BigInt(1) << 62;
    for (std::size_t n = 0; n < s.defined_prefix(); ++n) {
        BigInt e = s.b(n);
        if (e >= lim) break;
        out.push_back(static_cast<std::size_t>(e.get_ui()));
    }
    return out;
}

/**
 * Oracle-backed series over Zp / FpT: a_0 at x^0, c_n at x^{b(n)}, zero
 * elsewhere.  Exponents are found by binary search over the increasing b.
 */
inline Series build_gap_series(const GapSpec& s, const Ring& R, std::size_t M) {
    validate_gap_spec(s, 2);
    if (R.kind() != (s.char_p ? RingKind::FpT : RingKind::Zp) || R.p() != s.p)
        fail(ErrorCode::RingMismatch, "gap series over " + R.flag() + " does not match the spec");
    auto exps = std::make_shared<const std::vector<std::size_t>>(small_exponents(s));
    auto oracle = std::make_shared<CoefficientOracle>("gap", [s, R, exps](std::size_t i) {
        if (i == 0) return to_local(R, s.a0);
        auto it = std::lower_bound(exps->begin(), exps->end(), i);
        if (it == exps->end() || *it != i) return R.zero();
        return to_local(R, s.coeff(static_cast<std::size_t>(it - exps->begin())));
    });
    return Series::from_oracle(R, M, oracle);
}

/// Terms (exponent, exact coefficient) of the gap series with exponent < limit,
/// or up to index N when given.
struct GapTerm {
    BigInt e;
    Elem c;
};

inline std::vector<GapTerm> gap_terms_upto(const GapSpec& s, std::size_t N) {
    std::vector<GapTerm> t{{BigInt(0), s.a0}};
    for (std::size_t n = 0; n <= N; ++n) t.push_back({s.b(n), s.coeff(n)});
    return t;
}

namespace detail {
inline std::size_t point_valuation(const Ring& R, const Elem& x) {
    auto v = R.valuation(x);
    if (v && *v == 0) fail(ErrorCode::PointNotSmall, "gap series only converge on the maximal ideal");
    return v ? *v : R.prec();
}
}  // namespace detail

/// sum of c x^e over the given terms, in R (x of positive valuation).
inline Elem eval_terms(const Ring& R, const std::vector<GapTerm>& terms, const Elem& x) {
    const std::size_t vx = detail::point_valuation(R, x);
    Elem acc = R.zero();
    for (const auto& t : terms) {
        if (t.e > 0 && t.e * vx >= R.prec()) continue;
        acc = R.add(acc, R.mul(to_local(R, t.c), R.pow(x, t.e)));
    }
    return acc;
}

/**
 * Value and derivative of the full gap series at x, exact modulo pi^K.
 * Terms with e v(x) >= K vanish, and so do derivative terms with
 * (e - 1) v(x) >= K.
 */
inline std::pair<Elem, Elem> gap_value_and_derivative(const GapSpec& s, const Ring& R, const Elem& x) {
    const std::size_t vx = detail::point_valuation(R, x);
    const std::size_t K = R.prec();
    Elem f = to_local(R, s.a0), df = R.zero();
    for (std::size_t n = 0; n < s.defined_prefix(); ++n) {
        const BigInt e = s.b(n);
        if ((e - 1) * vx >= K) break;
        const Elem c = to_local(R, s.coeff(n));
        const Elem xe1 = R.pow(x, e - 1);
        df = R.add(df, R.mul(R.mul(c, R.from_bigint(e)), xe1));
        f = R.add(f, R.mul(c, R.mul(xe1, x)));
    }
    return {f, df};
}

}  // namespace prepkit
