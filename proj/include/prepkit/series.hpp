#pragma once

/**
 * @file series.hpp
 * @brief Truncated power series over a coefficient Ring.
 *
 * A Series stores the coefficients of x^0 .. x^(M-1).  It may additionally be
 * backed by a deterministic coefficient oracle, in which case coefficients
 * beyond the window are available on demand; without an oracle they read as
 * zero.  Every operation is pure and returns a new Series.
 */

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "prepkit/error.hpp"
#include "prepkit/rings.hpp"

namespace prepkit {

using Coeffs = std::vector<Elem>;

/// Deterministic coefficient function n -> a_n with a thread-safe memo.
class CoefficientOracle {
public:
    using Fn = std::function<Elem(std::size_t)>;

    CoefficientOracle(std::string kind, Fn fn) : kind_(std::move(kind)), fn_(std::move(fn)) {}

    const std::string& kind() const noexcept { return kind_; }

    Elem coefficient(std::size_t n) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(n);
            if (it != memo_.end()) return it->second;
        }
        Elem v = fn_(n);
        std::lock_guard<std::mutex> lock(mu_);
        return memo_.emplace(n, std::move(v)).first->second;
    }

private:
    std::string kind_;
    Fn fn_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::size_t, Elem> memo_;
};

class Series {
public:
    Series(Ring ring, Coeffs coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
        if (c_.empty()) fail(ErrorCode::WindowTooSmall, "series precision must be >= 1");
    }

    static Series from_ints(const Ring& R, const std::vector<long>& v, std::size_t M = 0) {
        Coeffs c;
        for (long x : v) c.push_back(R.from_int(x));
        if (M == 0) M = c.size();
        c.resize(M, R.zero());
        c.resize(M);
        return Series(R, std::move(c));
    }

    static Series from_oracle(const Ring& R, std::size_t M, std::shared_ptr<const CoefficientOracle> oracle) {
        if (M == 0) fail(ErrorCode::WindowTooSmall, "series precision must be >= 1");
        Coeffs c;
        c.reserve(M);
        for (std::size_t i = 0; i < M; ++i) c.push_back(oracle->coefficient(i));
        Series s(R, std::move(c));
        s.oracle_ = std::move(oracle);
        return s;
    }

    /// x (requires M >= 2).
    static Series x(const Ring& R, std::size_t M) {
        Coeffs c(M, R.zero());
        if (M > 1) c[1] = R.one();
        return Series(R, std::move(c));
    }

    const Ring& ring() const noexcept { return ring_; }
    std::size_t precision() const noexcept { return c_.size(); }
    const Coeffs& coeffs() const noexcept { return c_; }
    const Elem& operator[](std::size_t i) const { return c_.at(i); }
    bool has_oracle() const noexcept { return static_cast<bool>(oracle_); }
    const std::shared_ptr<const CoefficientOracle>& oracle() const noexcept { return oracle_; }

    /// Coefficient of x^i, reaching past the window through the oracle.
    Elem coeff(std::size_t i) const {
        if (i < c_.size()) return c_[i];
        return oracle_ ? oracle_->coefficient(i) : ring_.zero();
    }

    /// First W coefficients: window, then oracle values (or zeros).
    Coeffs extended(std::size_t W) const {
        Coeffs out(c_.begin(), c_.begin() + static_cast<long>(std::min(W, c_.size())));
        for (std::size_t i = out.size(); i < W; ++i) out.push_back(coeff(i));
        return out;
    }

    Series truncated(std::size_t M) const {
        Series s(ring_, extended(M));
        s.oracle_ = oracle_;
        return s;
    }

    /// Coefficientwise equality on the first n terms.
    bool agrees_with(const Series& o, std::size_t n) const {
        for (std::size_t i = 0; i < n; ++i)
            if (coeff(i) != o.coeff(i)) return false;
        return true;
    }
    friend bool operator==(const Series& a, const Series& b) {
        return a.ring_ == b.ring_ && a.c_ == b.c_;
    }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [&](const Elem& e) { return ring_.is_zero(e); });
    }

private:
    Ring ring_;
    Coeffs c_;
    std::shared_ptr<const CoefficientOracle> oracle_;
};

// ---- raw coefficient-vector kernels ------------------------------------------

namespace detail {

/// (a*b) mod x^n on raw vectors.
inline Coeffs convolve(const Ring& R, const Coeffs& a, const Coeffs& b, std::size_t n) {
    Coeffs out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        Ring::Accumulator acc(R);
        const std::size_t lo = k >= b.size() ? k - b.size() + 1 : 0;
        const std::size_t hi = std::min(k, a.size() ? a.size() - 1 : 0);
        for (std::size_t i = lo; i <= hi && i < a.size(); ++i) {
            if (R.is_zero(a[i]) || R.is_zero(b[k - i])) continue;
            acc.addmul(a[i], b[k - i]);
        }
        out.push_back(acc.value());
    }
    return out;
}

/// Inverse of a unit series mod x^n.
inline Coeffs invert(const Ring& R, const Coeffs& f, std::size_t n) {
    if (f.empty() || !R.is_unit(f[0])) fail(ErrorCode::NotAUnitSeries, "constant term is not a unit of " + R.flag());
    const Elem inv0 = R.invert_unit(f[0]);
    Coeffs g;
    g.reserve(n);
    g.push_back(inv0);
    for (std::size_t k = 1; k < n; ++k) {
        Ring::Accumulator acc(R);
        for (std::size_t i = 1; i <= k && i < f.size(); ++i) {
            if (R.is_zero(f[i])) continue;
            acc.submul(f[i], g[k - i]);
        }
        g.push_back(R.mul(acc.value(), inv0));
    }
    return g;
}

/// Solve q*b = rhs mod x^n by forward substitution, skipping zero entries of b.
inline Coeffs solve_lower(const Ring& R, const Coeffs& b, const Coeffs& rhs, std::size_t n, const Elem& inv_b0) {
    std::vector<std::size_t> nz;
    for (std::size_t i = 1; i < b.size() && i < n; ++i)
        if (!R.is_zero(b[i])) nz.push_back(i);
    Coeffs q;
    q.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        Ring::Accumulator acc(R);
        if (k < rhs.size()) acc.add(rhs[k]);
        for (std::size_t i : nz) {
            if (i > k) break;
            acc.submul(b[i], q[k - i]);
        }
        q.push_back(R.mul(acc.value(), inv_b0));
    }
    return q;
}

inline Elem horner(const Ring& R, const Coeffs& c, std::size_t n, const Elem& a) {
    Elem acc = R.zero();
    for (std::size_t i = n; i-- > 0;) acc = R.add(R.mul(acc, a), c[i]);
    return acc;
}

}  // namespace detail

// ---- arithmetic --------------------------------------------------------------

inline void require_same_ring(const Series& f, const Series& g) {
    if (f.ring() != g.ring()) fail(ErrorCode::RingMismatch, f.ring().flag() + " vs " + g.ring().flag());
}

inline Series series_add(const Series& f, const Series& g) {
    require_same_ring(f, g);
    const auto& R = f.ring();
    const std::size_t M = std::min(f.precision(), g.precision());
    Coeffs c;
    for (std::size_t i = 0; i < M; ++i) c.push_back(R.add(f[i], g[i]));
    return Series(R, std::move(c));
}

inline Series series_sub(const Series& f, const Series& g) {
    require_same_ring(f, g);
    const auto& R = f.ring();
    const std::size_t M = std::min(f.precision(), g.precision());
    Coeffs c;
    for (std::size_t i = 0; i < M; ++i) c.push_back(R.sub(f[i], g[i]));
    return Series(R, std::move(c));
}

inline Series series_scale(const Series& f, const Elem& s) {
    Coeffs c;
    for (const auto& e : f.coeffs()) c.push_back(f.ring().mul(e, s));
    return Series(f.ring(), std::move(c));
}

/// Truncated product; precision is the smaller of the two.
inline Series series_mul(const Series& f, const Series& g) {
    require_same_ring(f, g);
    const std::size_t M = std::min(f.precision(), g.precision());
    return Series(f.ring(), detail::convolve(f.ring(), f.coeffs(), g.coeffs(), M));
}

/// Multiplicative inverse; the constant term must be a unit of the ring.
inline Series series_invert(const Series& f) {
    return Series(f.ring(), detail::invert(f.ring(), f.coeffs(), f.precision()));
}

inline Series derivative(const Series& f) {
    const auto& R = f.ring();
    const std::size_t M = f.precision();
    Coeffs c;
    for (std::size_t i = 1; i < M; ++i) c.push_back(R.mul(R.from_int(static_cast<long>(i)), f[i]));
    if (c.empty()) c.push_back(R.zero());
    return Series(R, std::move(c));
}

/// f(g(x)) mod x^M by Horner substitution.  g must have zero constant term.
inline Series compose(const Series& f, const Series& g) {
    require_same_ring(f, g);
    const auto& R = f.ring();
    if (!R.is_zero(g[0])) fail(ErrorCode::NonzeroConstantInner, "inner series has nonzero constant term");
    const std::size_t M = std::min(f.precision(), g.precision());
    Coeffs acc{f[M - 1]};
    for (std::size_t i = M - 1; i-- > 0;) {
        acc = detail::convolve(R, acc, g.coeffs(), std::min(M, acc.size() + 1 + (M - 1 - i)));
        acc[0] = R.add(acc[0], f[i]);
    }
    acc.resize(M, R.zero());
    return Series(R, std::move(acc));
}

namespace detail {
inline void require_normalized(const Series& f) {
    const auto& R = f.ring();
    if (f.precision() < 2) fail(ErrorCode::WindowTooSmall, "compositional inverse needs x_prec >= 2");
    if (!R.is_zero(f[0]) || f[1] != R.one()) fail(ErrorCode::BadNormalization, "need f = x + O(x^2)");
}
}  // namespace detail

/**
 * Compositional inverse g of f = x + f_2 x^2 + ..., solving f(g(x)) = x.
 *
 * Writing g = x + b_2 x^2 + ..., the coefficient of x^n in f(g(x)) is
 * b_n + [x^n] sum_{k>=2} f_k g^k, and the second part only involves
 * b_2 .. b_{n-1}.  So each b_n is forced by the ones before it.  Powers of g
 * are built column by column as the b_n become known.
 */
inline Series comp_inverse(const Series& f) {
    detail::require_normalized(f);
    const auto& R = f.ring();
    const std::size_t M = f.precision();
    // pw[k][j] = [x^j] g^k, filled for j <= current n.
    std::vector<Coeffs> pw(M, Coeffs(M, R.zero()));
    Coeffs g(M, R.zero());
    g[1] = R.one();
    pw[1][1] = R.one();
    for (std::size_t n = 2; n < M; ++n) {
        Ring::Accumulator rhs(R);
        for (std::size_t k = 2; k <= n; ++k) {
            // [x^n] g^k = sum_i g_i [x^(n-i)] g^(k-1); g^(k-1) starts at x^(k-1).
            Ring::Accumulator acc(R);
            for (std::size_t i = 1; i + (k - 1) <= n; ++i) {
                if (R.is_zero(g[i])) continue;
                acc.addmul(g[i], pw[k - 1][n - i]);
            }
            pw[k][n] = acc.value();
            if (!R.is_zero(f[k])) rhs.addmul(f[k], pw[k][n]);
        }
        g[n] = R.neg(rhs.value());
        pw[1][n] = g[n];
    }
    return Series(R, std::move(g));
}

/// The same inverse obtained from the other side, solving g(f(x)) = x:
/// g_n = -sum_{k<n} g_k [x^n] f^k.
inline Series comp_inverse_left(const Series& f) {
    detail::require_normalized(f);
    const auto& R = f.ring();
    const std::size_t M = f.precision();
    std::vector<Coeffs> fpow(M);
    fpow[1] = f.coeffs();
    for (std::size_t k = 2; k < M; ++k) fpow[k] = detail::convolve(R, fpow[k - 1], f.coeffs(), M);
    Coeffs g(M, R.zero());
    g[1] = R.one();
    for (std::size_t n = 2; n < M; ++n) {
        Ring::Accumulator acc(R);
        for (std::size_t k = 1; k < n; ++k) {
            if (R.is_zero(g[k]) || R.is_zero(fpow[k][n])) continue;
            acc.submul(g[k], fpow[k][n]);
        }
        g[n] = acc.value();
    }
    return Series(R, std::move(g));
}

/**
 * f(a) mod pi^target for a point of positive valuation.
 *
 * Terms with i * v(a) >= target vanish mod pi^target, so only the first
 * ceil(target / v(a)) coefficients are summed.  Those must lie inside the
 * window unless the series is oracle-backed.
 */
inline Elem evaluate(const Series& f, const Elem& a, std::size_t target) {
    const auto& R = f.ring();
    if (!R.finite_precision()) fail(ErrorCode::UnsupportedRing, "evaluate needs a finite-precision ring");
    if (target > R.prec()) fail(ErrorCode::PrecisionTooLow, "target " + std::to_string(target) + " exceeds ring precision " + std::to_string(R.prec()));
    auto va = R.valuation(a);
    if (va && *va == 0) fail(ErrorCode::PointNotSmall, "evaluation point is a unit");
    std::size_t cutoff = va ? (target + *va - 1) / *va : 1;
    if (cutoff == 0) cutoff = 1;
    if (cutoff > f.precision() && !f.has_oracle())
        fail(ErrorCode::InsufficientXPrecision,
             "need " + std::to_string(cutoff) + " terms, window has " + std::to_string(f.precision()));
    Coeffs c = f.extended(cutoff);
    return R.reduce_to(detail::horner(R, c, cutoff, a), target);
}

/// Exact evaluation of the polynomial with coefficients c at any point.
inline Elem eval_poly(const Ring& R, const Coeffs& c, const Elem& a) {
    return detail::horner(R, c, c.size(), a);
}

}  // namespace prepkit
