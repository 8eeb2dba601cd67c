#pragma once

/**
 * @file weierstrass.hpp
 * @brief Weierstrass division, preparation and strong factorization over
 *        Z_p, F_p[[t]] and Z/p^k at finite (pi, x) precision.
 *
 * Division by f = alpha + x^n beta (alpha = f mod x^n, its coefficients in the
 * maximal ideal; beta a unit series) is the fixed point of
 *
 *     q  <-  (beta(g) - beta(q * alpha)) * beta^{-1}
 *
 * where beta(h) means (h - (h mod x^n)) / x^n.  Every pass multiplies the
 * error by alpha, gaining one power of pi, so K passes reach the fixed point
 * modulo pi^K.  The term beta(q * alpha) at index k reads q up to index k + n,
 * so each power of pi pulls information down by n places: to get q right on
 * x^0 .. x^(M-1) the iteration runs on a window of M + n(K + 1) terms.  Those
 * extra terms come from the series oracle when there is one, and are zero
 * otherwise (results are then exact for the window taken as a polynomial).
 */

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "prepkit/error.hpp"
#include "prepkit/rings.hpp"
#include "prepkit/series.hpp"

namespace prepkit {

enum class Schedule {
    /// Exactly K passes from q = 0, each solving q * beta = rhs by sparse
    /// forward substitution.
    Forward,
    /// Start from q = beta^{-1}, multiply by a precomputed dense inverse and
    /// stop at the first repeated iterate.
    WarmStart,
};

struct WFactorization {
    Ring ring;
    std::size_t v = 0;
    std::size_t n = 0;
    /// Ascending coefficients, length n + 1, monic.
    Coeffs P;
    Series U;
};

struct DivisionResult {
    Series q;
    /// Ascending coefficients, length n (degree < n).
    Coeffs r;
};

inline void require_local(const Ring& R) {
    if (!R.finite_precision()) fail(ErrorCode::UnsupportedRing, "need zp, fpt or zmodpk, got " + R.flag());
}

/// Least n with f_n a unit.
inline std::size_t reduction_index(const Series& f) {
    require_local(f.ring());
    for (std::size_t i = 0; i < f.precision(); ++i)
        if (f.ring().is_unit(f[i])) return i;
    fail(ErrorCode::NoUnitCoefficient, "no unit coefficient among the first " + std::to_string(f.precision()) + " terms");
}

namespace detail {

/// Power of pi that kills everything: the number of contraction passes needed.
inline std::size_t contraction_passes(const Ring& R) { return R.prec(); }

inline Coeffs division_quotient(const Ring& R, const Coeffs& fe, const Coeffs& ge, std::size_t n, Schedule schedule) {
    const std::size_t W = fe.size();
    const std::size_t L = W - n;
    const Coeffs alpha(fe.begin(), fe.begin() + static_cast<long>(n));
    const Coeffs beta(fe.begin() + static_cast<long>(n), fe.end());
    const Coeffs beta_g(ge.begin() + static_cast<long>(n), ge.end());
    std::vector<std::size_t> alpha_nz;
    for (std::size_t i = 0; i < n; ++i)
        if (!R.is_zero(alpha[i])) alpha_nz.push_back(i);

    // rhs_k = beta(g)_k - sum_i alpha_i q_{k+n-i}
    auto rhs_of = [&](const Coeffs& q) {
        Coeffs rhs;
        rhs.reserve(L);
        for (std::size_t k = 0; k < L; ++k) {
            Ring::Accumulator acc(R);
            acc.add(beta_g[k]);
            for (std::size_t i : alpha_nz) {
                const std::size_t j = k + n - i;
                if (j < L && !R.is_zero(q[j])) acc.submul(alpha[i], q[j]);
            }
            rhs.push_back(acc.value());
        }
        return rhs;
    };

    const std::size_t passes = contraction_passes(R);
    if (schedule == Schedule::Forward) {
        const Elem inv_b0 = R.invert_unit(beta[0]);
        Coeffs q(L, R.zero());
        for (std::size_t pass = 0; pass < passes; ++pass) q = solve_lower(R, beta, rhs_of(q), L, inv_b0);
        // One more pass is a no-op at the fixed point.
        return q;
    }
    const Coeffs beta_inv = invert(R, beta, L);
    Coeffs q = beta_inv;
    for (std::size_t pass = 0; pass <= passes + 1; ++pass) {
        Coeffs next = convolve(R, rhs_of(q), beta_inv, L);
        if (next == q) return q;
        q = std::move(next);
    }
    fail(ErrorCode::Internal, "division iteration did not stabilize");
}

}  // namespace detail

/// Coefficients needed to pin down the first M quotient terms mod pi^K.
inline std::size_t division_window(const Ring& R, std::size_t M, std::size_t n) {
    return M + n * (detail::contraction_passes(R) + 1);
}

/**
 * g = q f + r with deg r < n = reduction_index(f), modulo (pi^K, x^M) where
 * M = min(precision of f, precision of g).
 */
inline DivisionResult weierstrass_divide(const Series& g, const Series& f, Schedule schedule = Schedule::Forward) {
    require_same_ring(f, g);
    const Ring& R = f.ring();
    const std::size_t n = reduction_index(f);
    const std::size_t M = std::min(f.precision(), g.precision());
    if (n >= M) fail(ErrorCode::NoUnitCoefficient, "reduction index lies outside the common window");
    const std::size_t W = division_window(R, M, n);
    Coeffs fe = f.extended(W);
    Coeffs ge = g.has_oracle() ? g.extended(W) : g.extended(M);
    ge.resize(W, R.zero());
    Coeffs q = detail::division_quotient(R, fe, ge, n, schedule);
    q.resize(M);

    // r = alpha(g - q f): only q_0 .. q_{n-1} reach below x^n.
    Coeffs r;
    const Coeffs qf = detail::convolve(R, q, fe, n);
    for (std::size_t i = 0; i < n; ++i) r.push_back(R.sub(ge[i], qf[i]));
    return {Series(R, std::move(q)), std::move(r)};
}

namespace detail {
inline void assert_weierstrass_shape(const Ring& R, const WFactorization& w) {
    if (w.P.size() != w.n + 1 || w.P.back() != R.one()) fail(ErrorCode::Internal, "Weierstrass polynomial is not monic of degree n");
    for (std::size_t i = 0; i < w.n; ++i)
        if (R.is_unit(w.P[i])) fail(ErrorCode::Internal, "non-leading coefficient of P is a unit");
    if (!R.is_unit(w.U[0])) fail(ErrorCode::Internal, "U has non-unit constant term");
}
}  // namespace detail

/// f = P U with P a Weierstrass polynomial of degree reduction_index(f).
inline WFactorization prepare(const Series& f, Schedule schedule = Schedule::Forward) {
    const Ring& R = f.ring();
    const std::size_t n = reduction_index(f);
    const std::size_t M = f.precision();
    if (n == 0) {
        WFactorization w{R, 0, 0, {R.one()}, f.truncated(M)};
        detail::assert_weierstrass_shape(R, w);
        return w;
    }
    Coeffs xn(M, R.zero());
    xn[n] = R.one();
    DivisionResult d = weierstrass_divide(Series(R, std::move(xn)), f, schedule);
    if (!R.is_unit(d.q[0])) fail(ErrorCode::Internal, "division quotient is not a unit");
    Coeffs P;
    for (std::size_t i = 0; i < n; ++i) P.push_back(R.neg(d.r[i]));
    P.push_back(R.one());
    WFactorization w{R, 0, n, std::move(P), series_invert(d.q)};
    detail::assert_weierstrass_shape(R, w);
    return w;
}

/**
 * f = pi^v P U for any series nonzero on its window.  v is the least
 * coefficient valuation; g = f / pi^v is prepared at precision K - v and its
 * factors are read back as representatives mod pi^K.
 */
inline WFactorization strong_factor(const Series& f, Schedule schedule = Schedule::Forward) {
    const Ring& R = f.ring();
    require_local(R);
    std::optional<std::size_t> v;
    for (const auto& c : f.coeffs()) {
        auto vc = R.valuation(c);
        if (vc && (!v || *vc < *v)) v = vc;
    }
    if (!v) fail(ErrorCode::ZeroAtPrecision, "every windowed coefficient is zero mod pi^" + std::to_string(R.prec()));
    if (*v == 0) return prepare(f, schedule);

    const Ring Rg = R.with_precision(R.prec() - *v);
    Coeffs gc;
    for (const auto& c : f.coeffs()) gc.push_back(Rg.convert(R.shift_down(c, *v), R));
    WFactorization wg = prepare(Series(Rg, std::move(gc)), schedule);

    WFactorization w{R, *v, wg.n, {}, Series(R, {R.one()})};
    for (const auto& c : wg.P) w.P.push_back(R.convert(c, Rg));
    Coeffs uc;
    for (const auto& c : wg.U.coeffs()) uc.push_back(R.convert(c, Rg));
    w.U = Series(R, std::move(uc));
    return w;
}

/// pi^v P U mod x^M, for comparison with the input window.
inline Series recompose(const WFactorization& w) {
    const Ring& R = w.ring;
    const std::size_t M = w.U.precision();
    Coeffs P = w.P;
    P.resize(std::max(M, P.size()), R.zero());
    P.resize(M);
    Coeffs pu = detail::convolve(R, P, w.U.coeffs(), M);
    if (w.v > 0) {
        const Elem pv = R.uniformizer_pow(w.v);
        for (auto& c : pu) c = R.mul(c, pv);
    }
    return Series(R, std::move(pu));
}

inline bool roundtrip_ok(const Series& f, const WFactorization& w) {
    return recompose(w).coeffs() == f.truncated(w.U.precision()).coeffs();
}

}  // namespace prepkit
