#pragma once

/**
 * @file hensel.hpp
 * @brief Newton-Hensel root lifting over Z_p and F_p[[t]].
 *
 * The function is supplied as an evaluator returning (f(x), f'(x)) in a
 * given ring, so the same driver serves polynomials and gap series.
 */

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "prepkit/error.hpp"
#include "prepkit/gap_series.hpp"
#include "prepkit/rings.hpp"

namespace prepkit {

/// (f(x), f'(x)) computed in the ring passed in.
using Evaluator = std::function<std::pair<Elem, Elem>(const Ring&, const Elem&)>;

/// Evaluator for a polynomial with exact coefficients (BigInt or FpPoly).
inline Evaluator poly_evaluator(std::vector<Elem> exact_coeffs) {
    return [c = std::move(exact_coeffs)](const Ring& R, const Elem& x) {
        Elem f = R.zero(), df = R.zero();
        for (std::size_t i = c.size(); i-- > 0;) {
            df = R.add(R.mul(df, x), f);
            f = R.add(R.mul(f, x), to_local(R, c[i]));
        }
        return std::make_pair(f, df);
    };
}

inline Evaluator gap_evaluator(GapSpec s) {
    return [s = std::move(s)](const Ring& R, const Elem& x) { return gap_value_and_derivative(s, R, x); };
}

struct HenselResult {
    /// Root modulo pi^K.
    Elem root;
    /// v(f'(x0)).
    std::size_t e = 0;
    /// v(f(x_j)) for each iterate, capped at the working precision.
    std::vector<std::size_t> trace;
    std::size_t working_precision = 0;
};

/**
 * Lift x0 to lambda with v(f(lambda)) >= K and lambda = x0 mod pi^(e+1),
 * where e = v(f'(x0)) and v(f(x0)) > 2e is required.
 *
 * Each step x <- x - f(x)/f'(x) takes v(f) from a to at least 2a - 2e.  The
 * iteration runs at precision K + 2e, so the quotient f/f' (which loses e
 * digits) is still exact to pi^(K+e); the root is returned mod pi^K.
 */
inline HenselResult hensel_lift(const Ring& base, const Evaluator& f, const Elem& x0, std::size_t K) {
    if (base.kind() != RingKind::Zp && base.kind() != RingKind::FpT)
        fail(ErrorCode::UnsupportedRing, "Hensel lifting needs zp or fpt, got " + base.flag());
    if (K < 1) fail(ErrorCode::BadPrecision, "target precision must be >= 1");
    const Ring probe = base.with_precision(K);
    const Elem p0 = probe.convert(x0, base);
    auto [f0, d0] = f(probe, p0);
    auto ve = probe.valuation(d0);
    auto va = probe.valuation(f0);
    if (!ve) fail(ErrorCode::HenselConditionFails, "f'(x0) vanishes modulo pi^" + std::to_string(K));
    const std::size_t e = *ve;
    if (va && *va <= 2 * e)
        fail(ErrorCode::HenselConditionFails,
             "v(f(x0)) = " + std::to_string(*va) + " is not above 2 v(f'(x0)) = " + std::to_string(2 * e));

    HenselResult out;
    out.e = e;
    const Ring W = base.with_precision(K + 2 * e);
    out.working_precision = W.prec();
    Elem x = W.convert(x0, base);
    for (std::size_t step = 0;; ++step) {
        auto [fx, dx] = f(W, x);
        auto a = W.valuation(fx);
        out.trace.push_back(a ? *a : W.prec());
        if (!a) break;
        if (step > 2 * W.prec() + 8) fail(ErrorCode::Internal, "Newton iteration failed to converge");
        auto dv = W.val_unit_decompose(dx);
        auto fv = W.val_unit_decompose(fx);
        if (dv.v != e || fv.v <= 2 * e) fail(ErrorCode::Internal, "Newton iterate left the Hensel basin");
        // h = pi^(a-e) * u / w
        const Elem h = W.mul(W.uniformizer_pow(fv.v - e), W.mul(fv.u, W.invert_unit(dv.u)));
        x = W.sub(x, h);
    }
    out.root = probe.convert(x, W);
    return out;
}

}  // namespace prepkit
