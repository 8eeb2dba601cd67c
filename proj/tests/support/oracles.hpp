#pragma once

/**
 * @file oracles.hpp
 * @brief Slow, independent reference computations and random generators
 *        shared by the test suites and the acceptance runner.
 *
 * Nothing here calls the algorithms under test; each oracle is written from
 * the definition with plain GMP or machine arithmetic.
 */

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "prepkit/fp_poly.hpp"
#include "prepkit/rings.hpp"
#include "prepkit/series.hpp"

namespace oracle {

using prepkit::BigInt;
using prepkit::BigRat;
using prepkit::Coeffs;
using prepkit::Elem;
using prepkit::FpPoly;
using prepkit::Ring;
using prepkit::RingKind;
using prepkit::Series;

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}
inline long uniform_signed(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// ---- random ring elements ----------------------------------------------------

/// Uniform element of a finite-precision ring (residue mod p^K, or t-poly of degree < K).
inline Elem random_elem(Rng& rng, const Ring& R) {
    if (R.is_poly_kind()) {
        std::vector<FpPoly::coeff_t> c(R.prec());
        for (auto& x : c) x = static_cast<FpPoly::coeff_t>(uniform(rng, 0, R.p() - 1));
        return R.from_tpoly(FpPoly(static_cast<FpPoly::coeff_t>(R.p()), c));
    }
    BigInt v = 0;
    for (std::size_t i = 0; i < R.prec(); ++i) v = v * BigInt(static_cast<unsigned long>(R.p())) + static_cast<unsigned long>(uniform(rng, 0, R.p() - 1));
    return R.from_bigint(v);
}

inline Elem random_unit(Rng& rng, const Ring& R) {
    for (;;) {
        Elem e = random_elem(rng, R);
        if (R.is_unit(e)) return e;
    }
}

/// Random element of the maximal ideal (pi * anything).
inline Elem random_nonunit(Rng& rng, const Ring& R) { return R.mul(R.uniformizer_pow(1), random_elem(rng, R)); }

/// Series whose first unit coefficient is at index n.
inline Series random_series_with_index(Rng& rng, const Ring& R, std::size_t M, std::size_t n) {
    Coeffs c;
    for (std::size_t i = 0; i < M; ++i) {
        if (i < n) c.push_back(random_nonunit(rng, R));
        else if (i == n) c.push_back(random_unit(rng, R));
        else c.push_back(random_elem(rng, R));
    }
    return Series(R, std::move(c));
}

// ---- naive arithmetic --------------------------------------------------------

/// Residue of an element of Zp / ZmodPk as a BigInt in [0, p^K).
inline BigInt residue(const Ring& R, const Elem& e) {
    BigInt m = prepkit::pow_ui(static_cast<unsigned long>(R.p()), R.prec());
    BigInt r = e.z() % m;
    if (r < 0) r += m;
    return r;
}

/// Schoolbook product of coefficient vectors over F_p, truncated to n terms.
inline std::vector<std::uint64_t> fp_mul(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b, std::uint64_t p, std::size_t n) {
    std::vector<std::uint64_t> r(n, 0);
    for (std::size_t i = 0; i < a.size() && i < n; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return r;
}

inline std::vector<std::uint64_t> digits_of(const FpPoly& f, std::size_t n) {
    std::vector<std::uint64_t> d(n, 0);
    for (std::size_t i = 0; i < n; ++i) d[i] = f[i];
    return d;
}

/// Coefficient-by-coefficient product in R, truncated at M, for any ring kind.
inline Coeffs naive_series_mul(const Ring& R, const Coeffs& a, const Coeffs& b, std::size_t M) {
    Coeffs out(M, R.zero());
    for (std::size_t i = 0; i < a.size() && i < M; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < M; ++j) out[i + j] = R.add(out[i + j], R.mul(a[i], b[j]));
    return out;
}

// ---- polynomials over F_p (vector<long>, ascending, trimmed) -------------------

using Fp = std::vector<long>;

inline void trim(Fp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline long inv_mod(long a, long p) {
    long r = 1, b = ((a % p) + p) % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

/// Monic gcd by the Euclidean algorithm.
inline Fp fp_gcd(Fp a, Fp b, long p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        while (a.size() >= b.size() && !a.empty()) {
            const long f = a.back() * inv_mod(b.back(), p) % p;
            const std::size_t s = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[s + i] = ((a[s + i] - f * b[i]) % p + p) % p;
            trim(a);
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        const long il = inv_mod(a.back(), p);
        for (auto& c : a) c = c * il % p;
    }
    return a;
}

/// Determinant over F_p by Gaussian elimination.
inline long fp_det(std::vector<std::vector<long>> A, long p) {
    const std::size_t n = A.size();
    long det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && A[piv][c] % p == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(A[piv], A[c]);
            det = (p - det) % p;
        }
        det = det * A[c][c] % p;
        const long inv = inv_mod(A[c][c], p);
        for (std::size_t r = c + 1; r < n; ++r) {
            const long f = A[r][c] * inv % p;
            if (f == 0) continue;
            for (std::size_t k = c; k < n; ++k) A[r][k] = ((A[r][k] - f * A[c][k]) % p + p) % p;
        }
    }
    return det;
}

/**
 * Res(f, g) over F_p from the root-product formula
 *     Res(f, g) = lc(f)^deg(g) * prod_{f(alpha)=0} g(alpha)
 * where the product over the roots (with multiplicity, in a splitting field)
 * is the determinant of multiplication by g on F_p[x]/(f).  Requires
 * deg f >= 1; deg g >= 0 (g nonzero).
 */
inline long fp_resultant_norm(Fp f, Fp g, long p) {
    trim(f);
    trim(g);
    const std::size_t m = f.size() - 1;
    const long lc = f.back();
    const long il = inv_mod(lc, p);
    Fp monic = f;
    for (auto& c : monic) c = c * il % p;
    // Column j: x^j * g mod monic f.
    std::vector<std::vector<long>> M(m, std::vector<long>(m, 0));
    auto reduce = [&](Fp v) {
        for (std::size_t k = v.size(); k-- > m;) {
            const long top = v[k];
            if (top == 0) continue;
            for (std::size_t i = 0; i <= m; ++i) v[k - m + i] = ((v[k - m + i] - top * monic[i]) % p + p) % p;
        }
        v.resize(m, 0);
        return v;
    };
    for (std::size_t j = 0; j < m; ++j) {
        Fp v(j + g.size(), 0);
        for (std::size_t i = 0; i < g.size(); ++i) v[i + j] = g[i];
        const Fp r = reduce(v);
        for (std::size_t i = 0; i < m; ++i) M[i][j] = r[i];
    }
    long res = fp_det(M, p);
    const std::size_t n = g.size() - 1;
    for (std::size_t i = 0; i < n; ++i) res = res * lc % p;
    return res;
}

/// Same formula over Q (exact rationals) for integer polynomials.
inline BigInt z_resultant_norm(const std::vector<BigInt>& f, const std::vector<BigInt>& g) {
    const std::size_t m = f.size() - 1, n = g.size() - 1;
    const BigRat lc(f.back());
    std::vector<BigRat> monic;
    for (const auto& c : f) monic.push_back(BigRat(c) / lc);
    std::vector<std::vector<BigRat>> M(m, std::vector<BigRat>(m, BigRat(0)));
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<BigRat> v(std::max(j + g.size(), m), BigRat(0));
        for (std::size_t i = 0; i < g.size(); ++i) v[i + j] = BigRat(g[i]);
        for (std::size_t k = v.size(); k-- > m;) {
            const BigRat top = v[k];
            if (top == 0) continue;
            for (std::size_t i = 0; i <= m; ++i) v[k - m + i] -= top * monic[i];
        }
        for (std::size_t i = 0; i < m; ++i) M[i][j] = v[i];
    }
    BigRat det = 1;
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t piv = c;
        while (piv < m && M[piv][c] == 0) ++piv;
        if (piv == m) return 0;
        if (piv != c) {
            std::swap(M[piv], M[c]);
            det = -det;
        }
        det *= M[c][c];
        for (std::size_t r = c + 1; r < m; ++r) {
            const BigRat f2 = M[r][c] / M[c][c];
            for (std::size_t k = c; k < m; ++k) M[r][k] -= f2 * M[c][k];
        }
    }
    for (std::size_t i = 0; i < n; ++i) det *= lc;
    det.canonicalize();
    if (det.get_den() != 1) throw std::runtime_error("non-integral resultant");
    return det.get_num();
}

// ---- eventually periodic 0/1 windows -------------------------------------------

/// Smallest period d (then smallest preperiod s) with a_n = a_{n+d} for all
/// s <= n < size - d and s + 2d <= size, straight from the definition.
inline std::optional<std::pair<std::size_t, std::size_t>> brute_periodic(const std::vector<int>& a) {
    const std::size_t B = a.size();
    for (std::size_t d = 1; 2 * d <= B; ++d)
        for (std::size_t s = 0; s + 2 * d <= B; ++s) {
            bool ok = true;
            for (std::size_t n = s; n + d < B && ok; ++n) ok = a[n] == a[n + d];
            if (ok) return std::make_pair(s, d);
        }
    return std::nullopt;
}

// ---- gap series in raw GMP ---------------------------------------------------

/// v_2 of a nonzero integer.
inline std::size_t v2(const BigInt& x) { return mpz_scan1(x.get_mpz_t(), 0); }

/// a0 + sum_{n <= N} x^{b(n)} mod 2^K, reference exponents b(0) = 1, b(n) = 2^(n^2).
inline BigInt reference_phi_mod(const BigInt& lambda, std::size_t N, std::size_t K, long a0 = 2) {
    BigInt mod = BigInt(1) << K;
    BigInt acc = a0;
    for (std::size_t n = 0; n <= N; ++n) {
        BigInt e = n == 0 ? BigInt(1) : BigInt(1) << (n * n);
        BigInt t;
        mpz_powm(t.get_mpz_t(), lambda.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
        acc += t;
    }
    acc %= mod;
    if (acc < 0) acc += mod;
    return acc;
}

/// p(x) mod 2^K by Horner.
inline BigInt horner_mod(const std::vector<BigInt>& c, const BigInt& x, std::size_t K) {
    const BigInt mod = BigInt(1) << K;
    BigInt acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = (acc * x + c[i]) % mod;
        if (acc < 0) acc += mod;
    }
    return acc;
}

}  // namespace oracle
