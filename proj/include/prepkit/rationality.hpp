#pragma once

/**
 * @file rationality.hpp
 * @brief Rationality detection for power series.
 *
 * A Rational verdict is a certificate over the scanned window: the returned
 * denominator q (with q(0) = 1) annihilates every coefficient from s + d on.
 * IrrationalAtBudget only says that nothing was found within the budget.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prepkit/bigint.hpp"
#include "prepkit/error.hpp"
#include "prepkit/series.hpp"

namespace prepkit {

struct RationalityVerdict {
    bool rational = false;
    std::size_t preperiod = 0;  ///< s
    std::size_t period = 0;     ///< d (order of the recurrence)
    /// q_0 .. q_d with q_0 = 1.  Over F_p the entries are residues in [0, p).
    std::vector<BigRat> q;
    /// Number of coefficients examined.
    std::size_t budget = 0;
};

/**
 * Eventual periodicity of a 0/1 sequence given by an oracle.
 *
 * For each period d the smallest admissible preperiod is one past the last
 * index n with a_n != a_{n+d}.  A pair (s, d) is accepted only if the window
 * holds at least two full periods after s, i.e. s + 2d <= budget.
 */
inline RationalityVerdict detect_periodic_01(const std::function<int(std::size_t)>& oracle, std::size_t budget) {
    if (budget < 4) fail(ErrorCode::WindowTooSmall, "budget must be >= 4");
    std::vector<unsigned char> a(budget);
    for (std::size_t i = 0; i < budget; ++i) {
        int v = oracle(i);
        if (v != 0 && v != 1) fail(ErrorCode::NonBinaryCoefficient, "coefficient " + std::to_string(i) + " is " + std::to_string(v));
        a[i] = static_cast<unsigned char>(v);
    }
    RationalityVerdict out;
    out.budget = budget;
    for (std::size_t d = 1; 2 * d <= budget; ++d) {
        std::size_t s = 0;
        for (std::size_t n = budget - d; n-- > 0;) {
            if (a[n] != a[n + d]) {
                s = n + 1;
                break;
            }
        }
        if (s + 2 * d > budget) continue;
        out.rational = true;
        out.preperiod = s;
        out.period = d;
        out.q.assign(d + 1, BigRat(0));
        out.q[0] = 1;
        out.q[d] = -1;
        return out;
    }
    return out;
}

namespace detail {

/// Q (p = 0) or F_p, with elements stored as BigRat.
struct FieldOps {
    BigInt p;

    BigRat norm(const BigRat& a) const {
        if (p == 0) return a;
        BigInt num = mod_floor(a.get_num(), p);
        BigInt den = mod_floor(a.get_den(), p);
        BigInt inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0) fail(ErrorCode::NotAUnit, "denominator divisible by p");
        return BigRat(mod_floor(num * inv, p));
    }
    BigRat inv(const BigRat& a) const { return norm(BigRat(1) / a); }
    bool is_zero(const BigRat& a) const { return a == 0; }
};

/// Solve A q = b; returns one solution (free variables zero) or nullopt.
inline std::optional<std::vector<BigRat>> solve_linear(const FieldOps& F, std::vector<std::vector<BigRat>> A, std::vector<BigRat> b, std::size_t cols) {
    const std::size_t rows = A.size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && F.is_zero(A[piv][c])) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]);
        std::swap(b[piv], b[r]);
        const BigRat inv = F.inv(A[r][c]);
        for (std::size_t j = c; j < cols; ++j) A[r][j] = F.norm(A[r][j] * inv);
        b[r] = F.norm(b[r] * inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || F.is_zero(A[i][c])) continue;
            const BigRat f = A[i][c];
            for (std::size_t j = c; j < cols; ++j) A[i][j] = F.norm(A[i][j] - f * A[r][j]);
            b[i] = F.norm(b[i] - f * b[r]);
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!F.is_zero(b[i])) return std::nullopt;
    std::vector<BigRat> x(cols, BigRat(0));
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return x;
}

}  // namespace detail

/**
 * Least-order linear recurrence sum_{i=0}^{d} q_i a_{n-i} = 0 (q_0 = 1) that
 * holds for all n in [s + d, M), over F_p or Q.
 *
 * Orders d = 1 .. max_order are tried in turn, and for each d preperiods
 * s = 0 .. max_order.  A candidate is only considered when the window gives
 * at least d + 1 equations, so that the solution is overdetermined.
 */
inline RationalityVerdict detect_recurrence(const Series& f, std::size_t max_order) {
    const Ring& R = f.ring();
    detail::FieldOps F;
    if (R.is_prime_field())
        F.p = BigInt(static_cast<unsigned long>(R.p()));
    else if (R.kind() != RingKind::ExactZ)
        fail(ErrorCode::UnsupportedRing, "recurrence detection needs F_p or exact Z coefficients, got " + R.flag());
    const std::size_t M = f.precision();
    if (max_order < 1) fail(ErrorCode::WindowTooSmall, "max_order must be >= 1");
    if (M < 2 * max_order + 2)
        fail(ErrorCode::WindowTooSmall, "need x_prec >= " + std::to_string(2 * max_order + 2) + ", got " + std::to_string(M));

    std::vector<BigRat> a(M);
    for (std::size_t i = 0; i < M; ++i) a[i] = F.norm(BigRat(f[i].z()));

    RationalityVerdict out;
    out.budget = M;
    for (std::size_t d = 1; d <= max_order; ++d) {
        for (std::size_t s = 0; s <= max_order; ++s) {
            if (M < s + d || M - s - d < d + 1) break;
            // Unknowns q_1..q_d:  sum_i q_i a_{n-i} = -a_n.
            std::vector<std::vector<BigRat>> A;
            std::vector<BigRat> b;
            for (std::size_t n = s + d; n < M; ++n) {
                std::vector<BigRat> row(d);
                for (std::size_t i = 1; i <= d; ++i) row[i - 1] = a[n - i];
                A.push_back(std::move(row));
                b.push_back(F.norm(-a[n]));
            }
            auto sol = detail::solve_linear(F, std::move(A), std::move(b), d);
            if (!sol) continue;
            out.rational = true;
            out.preperiod = s;
            out.period = d;
            out.q.assign(1, BigRat(1));
            out.q.insert(out.q.end(), sol->begin(), sol->end());
            return out;
        }
    }
    return out;
}

/// Check a claimed recurrence on the window directly.
inline bool recurrence_holds(const Series& f, const RationalityVerdict& v) {
    if (!v.rational) return false;
    const Ring& R = f.ring();
    const BigInt p = R.is_prime_field() ? BigInt(static_cast<unsigned long>(R.p())) : BigInt(0);
    for (std::size_t n = v.preperiod + v.period; n < f.precision(); ++n) {
        BigRat acc = 0;
        for (std::size_t i = 0; i <= v.period; ++i) acc += v.q[i] * BigRat(f[n - i].z());
        if (p == 0 ? acc != 0 : mod_floor(acc.get_num(), p) != 0) return false;
    }
    return true;
}

}  // namespace prepkit
