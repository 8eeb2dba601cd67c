#pragma once

/**
 * @file resultant.hpp
 * @brief Sylvester resultants over Z and F_p[t], with the Hadamard bound
 *        and the t-degree bound.
 *
 * Polynomials are UPoly<T> for a coefficient domain T: BigInt for Z, FpPoly
 * for F_p[t] (degree-0 FpPoly values also serve as F_p).  The domain
 * operations used are +, -, *, equality and exact division (domain_divexact).
 */

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "prepkit/bigint.hpp"
#include "prepkit/error.hpp"
#include "prepkit/fp_poly.hpp"

namespace prepkit {

inline BigInt domain_divexact(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
inline FpPoly domain_divexact(const FpPoly& a, const FpPoly& b) { return FpPoly::divexact(a, b); }

inline bool domain_is_zero(const BigInt& a) { return a == 0; }
inline bool domain_is_zero(const FpPoly& a) { return a.is_zero(); }

inline BigInt one_like(const BigInt&) { return BigInt(1); }
inline FpPoly one_like(const FpPoly& z) { return FpPoly::constant(z.prime(), 1); }

inline std::string domain_to_string(const BigInt& a) { return to_decimal(a); }
inline std::string domain_to_string(const FpPoly& a) { return a.to_string('t'); }

/// Dense univariate polynomial, ascending coefficients with no trailing zeros.
template <class T>
class UPoly {
public:
    UPoly(std::vector<T> c, T zero) : c_(std::move(c)), zero_(std::move(zero)) { trim(); }

    const std::vector<T>& coeffs() const noexcept { return c_; }
    const T& zero() const noexcept { return zero_; }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const T& operator[](std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }
    const T& lead() const { return c_.empty() ? zero_ : c_.back(); }

    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    T eval(const T& x) const {
        T acc = zero_;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly({}, a.zero_);
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, a.zero_);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return UPoly(std::move(c), a.zero_);
    }

private:
    void trim() {
        while (!c_.empty() && domain_is_zero(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
    T zero_;
};

using ZPoly = UPoly<BigInt>;
using TPoly = UPoly<FpPoly>;

inline ZPoly make_zpoly(const std::vector<long>& c) {
    std::vector<BigInt> v;
    for (long x : c) v.emplace_back(x);
    return ZPoly(std::move(v), BigInt(0));
}

template <class T>
using Matrix = std::vector<std::vector<T>>;

/**
 * (m+n) x (m+n) Sylvester matrix of f (degree m) and g (degree n): n rows of
 * shifted f coefficients followed by m rows of shifted g coefficients, each
 * row listing coefficients from the leading one down.
 */
template <class T>
Matrix<T> sylvester_matrix(const UPoly<T>& f, const UPoly<T>& g) {
    const long m = f.degree(), n = g.degree();
    if (m < 1 && n < 1) fail(ErrorCode::BothConstant, "both polynomials are constant");
    const std::size_t dim = static_cast<std::size_t>(std::max(0L, m) + std::max(0L, n));
    Matrix<T> S(dim, std::vector<T>(dim, f.zero()));
    for (long r = 0; r < n; ++r)
        for (long j = 0; j <= m; ++j) S[r][r + j] = f[static_cast<std::size_t>(m - j)];
    for (long r = 0; r < m; ++r)
        for (long j = 0; j <= n; ++j) S[n + r][r + j] = g[static_cast<std::size_t>(n - j)];
    return S;
}

/// Cofactor expansion along the first row (used for small matrices and as
/// an independent check of Bareiss).
template <class T>
T det_cofactor(const Matrix<T>& A, const T& zero) {
    const std::size_t n = A.size();
    if (n == 0) return one_like(zero);
    if (n == 1) return A[0][0];
    T acc = zero;
    for (std::size_t c = 0; c < n; ++c) {
        if (domain_is_zero(A[0][c])) continue;
        Matrix<T> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<T> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(A[r][k]);
            minor.push_back(std::move(row));
        }
        T term = A[0][c] * det_cofactor(minor, zero);
        if (c % 2 == 0)
            acc = acc + term;
        else
            acc = acc - term;
    }
    return acc;
}

/// Fraction-free Gaussian elimination with row swaps.
template <class T>
T det_bareiss(Matrix<T> A, const T& zero) {
    const std::size_t n = A.size();
    if (n == 0) return one_like(zero);
    bool negate = false;
    T prev = one_like(zero);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (domain_is_zero(A[k][k])) {
            std::size_t r = k + 1;
            while (r < n && domain_is_zero(A[r][k])) ++r;
            if (r == n) return zero;
            std::swap(A[k], A[r]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                A[i][j] = domain_divexact(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev);
            A[i][k] = zero;
        }
        prev = A[k][k];
    }
    T d = A[n - 1][n - 1];
    if (negate) d = zero - d;
    return d;
}

template <class T>
T determinant(const Matrix<T>& A, const T& zero) {
    return A.size() <= 4 ? det_cofactor(A, zero) : det_bareiss(A, zero);
}

/// Res(f, g) = det of the Sylvester matrix.
template <class T>
T resultant(const UPoly<T>& f, const UPoly<T>& g) {
    return determinant(sylvester_matrix(f, g), f.zero());
}

template <class T>
T domain_pow(const T& a, std::size_t e) {
    T r = one_like(a), b = a;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

namespace detail {

/// u * v modulo a monic polynomial m (ascending coefficients, m.back() == 1).
template <class T>
std::vector<T> mulmod_monic(const std::vector<T>& u, const std::vector<T>& v, const std::vector<T>& m, const T& zero) {
    const std::size_t b = m.size() - 1;
    std::vector<T> prod(2 * b - 1, zero);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (domain_is_zero(u[i])) continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!domain_is_zero(v[j])) prod[i + j] = prod[i + j] + u[i] * v[j];
    }
    for (std::size_t k = prod.size(); k-- > b;) {
        if (domain_is_zero(prod[k])) continue;
        const T top = prod[k];
        for (std::size_t j = 0; j < b; ++j) prod[k - b + j] = prod[k - b + j] - top * m[j];
        prod[k] = zero;
    }
    prod.resize(b, zero);
    return prod;
}

/// y^e modulo the monic m, starting from `base` = y^s (so the result is y^(s+e)).
template <class T>
std::vector<T> powmod_monic(std::vector<T> acc, std::size_t e, const std::vector<T>& m, const T& zero) {
    const std::size_t b = m.size() - 1;
    std::vector<T> y(b, zero);
    if (b == 1) {
        y[0] = zero - m[0];
    } else {
        y[1] = one_like(zero);
    }
    while (e) {
        if (e & 1) acc = mulmod_monic(acc, y, m, zero);
        e >>= 1;
        if (e) y = mulmod_monic(y, y, m, zero);
    }
    return acc;
}

}  // namespace detail

/**
 * Res(f, g) by reducing the higher-degree polynomial modulo the lower one.
 *
 * Take B of degree b >= 1 with c = lc(B) and A of degree a.  Substituting
 * y = c x turns B into the monic B~(y) = c^(b-1) B(y / c) and A into
 * A~(y) = c^a A(y / c), both with coefficients in the domain.  The roots of
 * B~ are c times those of B, so
 *     Res(B, A) = c^a prod A(beta) = Res(B~, A~ mod B~) / c^(a (b-1)),
 * and Res(A, B) = (-1)^(a b) Res(B, A).  A~ mod B~ only needs the powers
 * y^k mod B~ at the nonzero terms of A, so sparse A of huge degree is cheap.
 */
template <class T>
T resultant_reduced(const UPoly<T>& f, const UPoly<T>& g) {
    const long m = f.degree(), n = g.degree();
    if (m < 1 && n < 1) fail(ErrorCode::BothConstant, "both polynomials are constant");
    const T& zero = f.zero();
    if (f.is_zero() || g.is_zero()) return zero;
    if (m == 0) return domain_pow(f[0], static_cast<std::size_t>(n));
    if (n == 0) return domain_pow(g[0], static_cast<std::size_t>(m));
    const bool f_is_big = m >= n;
    const UPoly<T>& A = f_is_big ? f : g;
    const UPoly<T>& B = f_is_big ? g : f;
    const std::size_t a = static_cast<std::size_t>(A.degree()), b = static_cast<std::size_t>(B.degree());
    const T c = B.lead();

    std::vector<T> cpow(a + 1, one_like(zero));  // c^0 .. c^a
    for (std::size_t k = 1; k <= a; ++k) cpow[k] = cpow[k - 1] * c;
    std::vector<T> mon(b + 1, zero);
    for (std::size_t j = 0; j < b; ++j) mon[j] = B[j] * cpow[b - 1 - j];
    mon[b] = one_like(zero);

    std::vector<T> red(b, zero);
    std::vector<T> ypow(b, zero);
    ypow[0] = one_like(zero);
    std::size_t at = 0;
    for (std::size_t k = 0; k <= a; ++k) {
        if (domain_is_zero(A[k])) continue;
        ypow = detail::powmod_monic(std::move(ypow), k - at, mon, zero);
        at = k;
        const T scale = A[k] * cpow[a - k];
        for (std::size_t j = 0; j < b; ++j)
            if (!domain_is_zero(ypow[j])) red[j] = red[j] + scale * ypow[j];
    }
    const UPoly<T> Bm(std::move(mon), zero);
    const UPoly<T> R(std::move(red), zero);
    if (R.is_zero()) return zero;
    const T res_m = R.degree() == 0 ? domain_pow(R[0], b) : resultant(Bm, R);
    T res_ba = b == 1 ? res_m : domain_divexact(res_m, domain_pow(c, a * (b - 1)));
    if (f_is_big && (a * b) % 2 == 1) res_ba = zero - res_ba;
    return res_ba;
}

template <class T>
struct BoundReport {
    T B;
    bool bound_ok = false;
    /// Exact decimal forms of both sides; "-inf" stands for deg_t(0).
    std::string lhs, rhs;
    std::string which;
};

/// B^2 <= (sum f_i^2)^(deg g) * (sum g_i^2)^(deg f).
inline BoundReport<BigInt> hadamard_check(const ZPoly& f, const ZPoly& g) {
    BoundReport<BigInt> out;
    out.which = "hadamard";
    out.B = resultant(f, g);
    BigInt sf = 0, sg = 0;
    for (const auto& c : f.coeffs()) sf += c * c;
    for (const auto& c : g.coeffs()) sg += c * c;
    const BigInt lhs = out.B * out.B;
    const BigInt rhs = pow(sf, static_cast<unsigned long>(std::max(0L, g.degree()))) *
                       pow(sg, static_cast<unsigned long>(std::max(0L, f.degree())));
    out.lhs = to_decimal(lhs);
    out.rhs = to_decimal(rhs);
    out.bound_ok = lhs <= rhs;
    return out;
}

inline long max_tdegree(const TPoly& f) {
    long h = 0;
    for (const auto& c : f.coeffs()) h = std::max(h, c.degree());
    return h;
}

/// deg_t(Res) <= H deg g + A deg f, H and A bounding the t-degrees of the
/// coefficients of f and g respectively.
inline BoundReport<FpPoly> tdegree_check(const TPoly& f, const TPoly& g, long H, long A) {
    BoundReport<FpPoly> out;
    out.which = "tdegree";
    out.B = resultant(f, g);
    const long rhs = H * std::max(0L, g.degree()) + A * std::max(0L, f.degree());
    out.rhs = std::to_string(rhs);
    if (out.B.is_zero()) {
        out.lhs = "-inf";
        out.bound_ok = true;
    } else {
        out.lhs = std::to_string(out.B.degree());
        out.bound_ok = out.B.degree() <= rhs;
    }
    return out;
}

inline BoundReport<FpPoly> tdegree_check(const TPoly& f, const TPoly& g) {
    return tdegree_check(f, g, max_tdegree(f), max_tdegree(g));
}

}  // namespace prepkit
