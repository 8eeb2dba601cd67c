#pragma once

/**
 * @file fp_poly.hpp
 * @brief Dense univariate polynomials over the prime field F_p.
 *
 * Used for elements of F_p[t] (exact) and F_p[[t]]/(t^K) (truncated), and
 * as the polynomial ring F_p[x] in tests.  Coefficients are stored ascending
 * with no trailing zeros, so the zero polynomial has an empty vector.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "prepkit/error.hpp"

namespace prepkit {

/// Bit-packed kernels for F_2[t], 64 coefficients per word (bit i = t^i).
namespace gf2 {

using Words = std::vector<std::uint64_t>;

inline Words pack(const std::vector<std::uint32_t>& c) {
    Words w((c.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        w[i / 64] |= std::uint64_t{c[i] & 1u} << (i % 64);
    return w;
}

inline std::vector<std::uint32_t> unpack(const Words& w, std::size_t len) {
    std::vector<std::uint32_t> c(len, 0);
    for (std::size_t i = 0; i < len && i / 64 < w.size(); ++i) c[i] = (w[i / 64] >> (i % 64)) & 1u;
    return c;
}

inline bool bit(const Words& w, std::size_t i) { return (w[i / 64] >> (i % 64)) & 1u; }

/// dst ^= src * t^shift
inline void xor_shifted(Words& dst, const Words& src, std::size_t shift) {
    const std::size_t ws = shift / 64, bs = shift % 64;
    for (std::size_t j = 0; j < src.size(); ++j) {
        const std::uint64_t v = src[j];
        if (v == 0) continue;
        if (j + ws < dst.size()) dst[j + ws] ^= v << bs;
        if (bs != 0 && j + ws + 1 < dst.size()) dst[j + ws + 1] ^= v >> (64 - bs);
    }
}

/// a*b mod t^len.
inline Words mul(const Words& a, const Words& b, std::size_t len) {
    Words r((len + 63) / 64, 0);
    for (std::size_t j = 0; j < a.size(); ++j) {
        std::uint64_t v = a[j];
        while (v) {
            const std::size_t i = j * 64 + static_cast<std::size_t>(__builtin_ctzll(v));
            if (i >= len) break;
            xor_shifted(r, b, i);
            v &= v - 1;
        }
    }
    if (len % 64 && !r.empty()) r.back() &= (std::uint64_t{1} << (len % 64)) - 1;
    return r;
}

/// a = q b + r, where a has na coefficients and b has nb with b's top bit set.
inline std::pair<Words, Words> divmod(Words a, std::size_t na, const Words& b, std::size_t nb) {
    const std::size_t db = nb - 1;
    Words q((na - db + 63) / 64, 0);
    for (std::size_t k = na; k-- > db;) {
        if (!bit(a, k)) continue;
        q[(k - db) / 64] |= std::uint64_t{1} << ((k - db) % 64);
        xor_shifted(a, b, k - db);
    }
    return {q, a};
}

}  // namespace gf2

class FpPoly {
public:
    using coeff_t = std::uint32_t;

    FpPoly() = default;
    explicit FpPoly(coeff_t p) : p_(p) {}
    FpPoly(coeff_t p, std::vector<coeff_t> c) : p_(p), c_(std::move(c)) {
        for (auto& x : c_) x %= p_;
        trim();
    }

    static FpPoly constant(coeff_t p, std::int64_t v) {
        std::int64_t r = v % static_cast<std::int64_t>(p);
        if (r < 0) r += p;
        return FpPoly(p, {static_cast<coeff_t>(r)});
    }
    static FpPoly monomial(coeff_t p, std::size_t deg, coeff_t coef = 1) {
        std::vector<coeff_t> c(deg + 1, 0);
        c[deg] = coef;
        return FpPoly(p, std::move(c));
    }

    coeff_t prime() const noexcept { return p_; }
    const std::vector<coeff_t>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    coeff_t operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    coeff_t lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }

    /// Index of the lowest nonzero coefficient; the polynomial must be nonzero.
    std::size_t low_order() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) return i;
        fail(ErrorCode::ZeroInput, "low order of zero polynomial");
    }

    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const FpPoly& a, const FpPoly& b) { return !(a == b); }

    FpPoly& operator+=(const FpPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            coeff_t s = c_[i] + o.c_[i];
            c_[i] = s >= p_ ? s - p_ : s;
        }
        trim();
        return *this;
    }
    FpPoly& operator-=(const FpPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            c_[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + p_ - o.c_[i];
        }
        trim();
        return *this;
    }
    friend FpPoly operator+(FpPoly a, const FpPoly& b) { return a += b; }
    friend FpPoly operator-(FpPoly a, const FpPoly& b) { return a -= b; }
    FpPoly operator-() const {
        FpPoly r(*this);
        for (auto& x : r.c_) x = x == 0 ? 0 : p_ - x;
        return r;
    }

    friend FpPoly operator*(const FpPoly& a, const FpPoly& b) { return mul_trunc(a, b, SIZE_MAX); }
    FpPoly& operator*=(const FpPoly& o) { return *this = *this * o; }

    /// a*b mod x^n.
    static FpPoly mul_trunc(const FpPoly& a, const FpPoly& b, std::size_t n) {
        FpPoly r(a.p_ ? a.p_ : b.p_);
        if (a.c_.empty() || b.c_.empty() || n == 0) return r;
        std::size_t len = std::min(a.c_.size() + b.c_.size() - 1, n);
        const coeff_t p = r.p_;
        if (p == 2 && a.c_.size() <= 64 && b.c_.size() <= 64) {
            std::uint64_t wa = 0, wb = 0;
            for (std::size_t i = 0; i < a.c_.size(); ++i) wa |= std::uint64_t{a.c_[i]} << i;
            for (std::size_t i = 0; i < b.c_.size(); ++i) wb |= std::uint64_t{b.c_[i]} << i;
            unsigned __int128 prod = 0;
            for (; wa; wa &= wa - 1) prod ^= static_cast<unsigned __int128>(wb) << __builtin_ctzll(wa);
            r.c_.resize(len);
            for (std::size_t k = 0; k < len; ++k) r.c_[k] = static_cast<coeff_t>((prod >> k) & 1u);
            r.trim();
            return r;
        }
        if (p == 2) {
            r.c_ = gf2::unpack(gf2::mul(gf2::pack(a.c_), gf2::pack(b.c_), len), len);
            r.trim();
            return r;
        }
        r.c_.assign(len, 0);
        if (p < (1u << 16)) {
            std::vector<std::uint64_t> acc(len, 0);
            for (std::size_t i = 0; i < a.c_.size() && i < len; ++i) {
                const std::uint64_t ai = a.c_[i];
                if (ai == 0) continue;
                std::size_t jmax = std::min(b.c_.size(), len - i);
                std::uint64_t* out = acc.data() + i;
                const coeff_t* bj = b.c_.data();
                for (std::size_t j = 0; j < jmax; ++j) out[j] += ai * bj[j];
            }
            for (std::size_t k = 0; k < len; ++k) r.c_[k] = static_cast<coeff_t>(acc[k] % p);
        } else {
            for (std::size_t i = 0; i < a.c_.size() && i < len; ++i) {
                const std::uint64_t ai = a.c_[i];
                if (ai == 0) continue;
                std::size_t jmax = std::min(b.c_.size(), len - i);
                for (std::size_t j = 0; j < jmax; ++j)
                    r.c_[i + j] = static_cast<coeff_t>((r.c_[i + j] + ai * b.c_[j] % p) % p);
            }
        }
        r.trim();
        return r;
    }

    FpPoly scaled(coeff_t s) const {
        FpPoly r(*this);
        s %= p_;
        for (auto& x : r.c_) x = static_cast<coeff_t>(static_cast<std::uint64_t>(x) * s % p_);
        r.trim();
        return r;
    }

    /// Multiply by x^k.
    FpPoly shifted_up(std::size_t k) const {
        if (c_.empty()) return *this;
        FpPoly r(p_);
        r.c_.assign(k, 0);
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }
    /// Floor division by x^k.
    FpPoly shifted_down(std::size_t k) const {
        FpPoly r(p_);
        if (k < c_.size()) r.c_.assign(c_.begin() + static_cast<long>(k), c_.end());
        return r;
    }
    /// Reduce mod x^n.
    FpPoly truncated(std::size_t n) const {
        FpPoly r(*this);
        if (r.c_.size() > n) r.c_.resize(n);
        r.trim();
        return r;
    }

    static coeff_t inv_mod(coeff_t a, coeff_t p) {
        // Fermat: a^(p-2).
        if (a % p == 0) fail(ErrorCode::NotAUnit, "zero has no inverse in F_p");
        std::uint64_t r = 1, b = a % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return static_cast<coeff_t>(r);
    }

    /// Euclidean division by a nonzero divisor (its leading coefficient is invertible in F_p).
    static std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
        if (b.is_zero()) fail(ErrorCode::ZeroInput, "polynomial division by zero");
        const coeff_t p = b.p_;
        FpPoly q(p), r(a);
        if (a.degree() < b.degree()) return {q, r};
        if (p == 2) {
            auto [qw, rw] = gf2::divmod(gf2::pack(a.c_), a.c_.size(), gf2::pack(b.c_), b.c_.size());
            q.c_ = gf2::unpack(qw, a.c_.size() - b.c_.size() + 1);
            r.c_ = gf2::unpack(rw, b.c_.size() - 1);
            q.trim();
            r.trim();
            return {q, r};
        }
        const coeff_t inv = inv_mod(b.lead(), p);
        const std::size_t db = b.c_.size() - 1;
        q.c_.assign(a.c_.size() - db, 0);
        std::vector<coeff_t>& rc = r.c_;
        for (std::size_t k = rc.size(); k-- > db;) {
            coeff_t lc = rc[k];
            if (lc == 0) continue;
            coeff_t f = static_cast<coeff_t>(static_cast<std::uint64_t>(lc) * inv % p);
            q.c_[k - db] = f;
            for (std::size_t j = 0; j <= db; ++j) {
                std::uint64_t sub = static_cast<std::uint64_t>(f) * b.c_[j] % p;
                coeff_t& t = rc[k - db + j];
                t = static_cast<coeff_t>((t + p - sub) % p);
            }
        }
        q.trim();
        r.trim();
        return {q, r};
    }

    /// Exact division: throws if b does not divide a.
    static FpPoly divexact(const FpPoly& a, const FpPoly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) fail(ErrorCode::Internal, "inexact polynomial division");
        return q;
    }

    static FpPoly gcd(FpPoly a, FpPoly b) {
        while (!b.is_zero()) {
            FpPoly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.is_zero()) a = a.scaled(inv_mod(a.lead(), a.p_));
        return a;
    }

    coeff_t eval(coeff_t x) const {
        std::uint64_t acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = (acc * x + c_[i]) % p_;
        return static_cast<coeff_t>(acc);
    }

    FpPoly derivative() const {
        FpPoly r(p_);
        if (c_.size() <= 1) return r;
        r.c_.resize(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_[i - 1] = static_cast<coeff_t>(static_cast<std::uint64_t>(c_[i]) * (i % p_) % p_);
        r.trim();
        return r;
    }

    std::string to_string(char var = 't') const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            if (i == 0 || c_[i] != 1) s += std::to_string(c_[i]);
            if (i >= 1) s += var;
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    coeff_t p_ = 2;
    std::vector<coeff_t> c_;
};

}  // namespace prepkit
