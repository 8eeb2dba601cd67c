#pragma once

/**
 * @file rings.hpp
 * @brief Coefficient rings: Z_p and F_p[[t]] at finite precision, Z/p^k,
 *        and the exact rings Z and F_p[t].
 *
 * A Ring is a small immutable value describing the ring; elements (Elem) are
 * plain values that carry no back-pointer, so every operation goes through
 * the ring: `R.mul(a, b)`.  All results are canonical:
 *
 *   - Zp, ZmodPk : least nonnegative residue mod p^K
 *   - FpT        : polynomial in t of degree < K, no trailing zeros
 *   - ExactZ     : the integer itself
 *   - ExactFpT   : polynomial in t over F_p, no trailing zeros
 *
 * Zp and FpT model the complete DVRs truncated at pi^K, so their zero means
 * "zero at this precision".  ZmodPk is the Artinian ring Z/p^k itself.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "prepkit/bigint.hpp"
#include "prepkit/error.hpp"
#include "prepkit/fp_poly.hpp"

namespace prepkit {

enum class RingKind { Zp, FpT, ZmodPk, ExactZ, ExactFpT };

inline std::string_view kind_name(RingKind k) {
    switch (k) {
        case RingKind::Zp: return "zp";
        case RingKind::FpT: return "fpt";
        case RingKind::ZmodPk: return "zmodpk";
        case RingKind::ExactZ: return "z";
        case RingKind::ExactFpT: return "fpt_exact";
    }
    return "?";
}

struct RingDesc {
    RingKind kind = RingKind::ExactZ;
    /// 0 only for ExactZ without an ambient prime.
    std::uint64_t p = 0;
    /// K for Zp / FpT, k for ZmodPk; 0 for exact kinds.
    std::size_t prec = 0;

    friend bool operator==(const RingDesc&, const RingDesc&) = default;
};

class Elem {
public:
    Elem() = default;
    explicit Elem(BigInt z) : rep_(std::move(z)) {}
    explicit Elem(FpPoly t) : rep_(std::move(t)) {}

    bool is_int() const noexcept { return std::holds_alternative<BigInt>(rep_); }
    const BigInt& z() const { return std::get<BigInt>(rep_); }
    const FpPoly& t() const { return std::get<FpPoly>(rep_); }
    BigInt& z_mut() { return std::get<BigInt>(rep_); }

    friend bool operator==(const Elem& a, const Elem& b) {
        if (a.rep_.index() != b.rep_.index()) return false;
        if (a.is_int()) return a.z() == b.z();
        return a.t() == b.t();
    }
    friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

private:
    std::variant<BigInt, FpPoly> rep_;
};

struct ValUnit {
    std::size_t v;
    Elem u;
};

class Ring {
public:
    /// Validates the descriptor: p prime, precision >= 1 where required.
    explicit Ring(RingDesc d) : d_(d) {
        const bool needs_p = d_.kind != RingKind::ExactZ || d_.p != 0;
        if (needs_p && !is_prime(BigInt(static_cast<unsigned long>(d_.p))))
            fail(ErrorCode::CompositeModulus, std::to_string(d_.p) + " is not prime");
        if (is_poly_kind() && d_.p >= (1ull << 31))
            fail(ErrorCode::UnsupportedRing, "F_p[t] requires p < 2^31");
        if (finite_precision()) {
            if (d_.prec < 1) fail(ErrorCode::BadPrecision, "precision must be >= 1");
            if (!is_poly_kind()) modulus_ = pow_ui(static_cast<unsigned long>(d_.p), d_.prec);
        } else {
            d_.prec = 0;
        }
    }

    static Ring zp(std::uint64_t p, std::size_t K) { return Ring({RingKind::Zp, p, K}); }
    static Ring fpt(std::uint64_t p, std::size_t K) { return Ring({RingKind::FpT, p, K}); }
    static Ring zmodpk(std::uint64_t p, std::size_t k) { return Ring({RingKind::ZmodPk, p, k}); }
    static Ring exact_z(std::uint64_t p = 0) { return Ring({RingKind::ExactZ, p, 0}); }
    static Ring exact_fpt(std::uint64_t p) { return Ring({RingKind::ExactFpT, p, 0}); }

    const RingDesc& desc() const noexcept { return d_; }
    RingKind kind() const noexcept { return d_.kind; }
    std::uint64_t p() const noexcept { return d_.p; }
    std::size_t prec() const noexcept { return d_.prec; }
    const BigInt& modulus() const noexcept { return modulus_; }

    bool finite_precision() const noexcept {
        return d_.kind == RingKind::Zp || d_.kind == RingKind::FpT || d_.kind == RingKind::ZmodPk;
    }
    bool is_exact() const noexcept { return !finite_precision(); }
    bool is_poly_kind() const noexcept { return d_.kind == RingKind::FpT || d_.kind == RingKind::ExactFpT; }
    bool has_uniformizer() const noexcept { return d_.p != 0; }
    /// F_p itself: Z/p, or Z_p at precision 1.
    bool is_prime_field() const noexcept {
        return (d_.kind == RingKind::ZmodPk || d_.kind == RingKind::Zp) && d_.prec == 1;
    }

    friend bool operator==(const Ring& a, const Ring& b) { return a.d_ == b.d_; }
    friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

    /// Same kind and prime, different precision (finite-precision kinds only).
    Ring with_precision(std::size_t K) const {
        if (!finite_precision()) fail(ErrorCode::UnsupportedRing, "exact rings carry no precision");
        return Ring({d_.kind, d_.p, K});
    }

    std::string flag() const {
        std::string s(kind_name(d_.kind));
        if (d_.p != 0) s += ":" + std::to_string(d_.p);
        if (finite_precision()) s += ":" + std::to_string(d_.prec);
        return s;
    }

    // ---- construction ----------------------------------------------------

    Elem zero() const { return is_poly_kind() ? Elem(FpPoly(fp())) : Elem(BigInt(0)); }
    Elem one() const { return from_int(1); }
    Elem from_int(long v) const { return from_bigint(BigInt(v)); }
    Elem from_bigint(const BigInt& v) const {
        if (is_poly_kind()) {
            BigInt r = mod_floor(v, BigInt(static_cast<unsigned long>(d_.p)));
            return Elem(FpPoly(fp(), {static_cast<FpPoly::coeff_t>(r.get_ui())}));
        }
        return canon_int(v);
    }
    /// Polynomial in t (poly kinds only); reduced mod t^K for FpT.
    Elem from_tpoly(const FpPoly& t) const {
        if (!is_poly_kind()) fail(ErrorCode::RingMismatch, "t-polynomial given to " + flag());
        FpPoly c(fp(), t.coeffs());
        return Elem(d_.kind == RingKind::FpT ? c.truncated(d_.prec) : c);
    }
    /// pi^v, where pi is p or t.
    Elem uniformizer_pow(std::size_t v) const {
        require_uniformizer();
        if (is_poly_kind()) return from_tpoly(FpPoly::monomial(fp(), v));
        return canon_int(pow_ui(static_cast<unsigned long>(d_.p), v));
    }

    /// Re-express an element of a sibling ring (same kind and prime) here.
    Elem convert(const Elem& e, const Ring& from) const {
        if (from.d_.kind != d_.kind || from.d_.p != d_.p) fail(ErrorCode::RingMismatch, from.flag() + " -> " + flag());
        if (is_poly_kind()) return from_tpoly(e.t());
        return canon_int(e.z());
    }

    // ---- arithmetic -------------------------------------------------------

    Elem add(const Elem& a, const Elem& b) const {
        if (is_poly_kind()) return Elem(a.t() + b.t());
        return canon_int(a.z() + b.z());
    }
    Elem sub(const Elem& a, const Elem& b) const {
        if (is_poly_kind()) return Elem(a.t() - b.t());
        return canon_int(a.z() - b.z());
    }
    Elem neg(const Elem& a) const {
        if (is_poly_kind()) return Elem(-a.t());
        return canon_int(-a.z());
    }
    Elem mul(const Elem& a, const Elem& b) const {
        if (d_.kind == RingKind::FpT) return Elem(FpPoly::mul_trunc(a.t(), b.t(), d_.prec));
        if (d_.kind == RingKind::ExactFpT) return Elem(a.t() * b.t());
        return canon_int(a.z() * b.z());
    }
    Elem pow(const Elem& a, BigInt e) const {
        Elem result = one(), base = a;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) result = mul(result, base);
            e >>= 1;
            if (e > 0) base = mul(base, base);
        }
        return result;
    }

    bool is_zero(const Elem& a) const {
        return is_poly_kind() ? a.t().is_zero() : a.z() == 0;
    }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    /// Units of the ring (for exact Z: +-1; for F_p[t]: nonzero constants).
    bool is_unit(const Elem& a) const {
        switch (d_.kind) {
            case RingKind::ExactZ: return a.z() == 1 || a.z() == -1;
            case RingKind::ExactFpT: return a.t().degree() == 0;
            case RingKind::FpT: return a.t()[0] != 0;
            default: return mpz_divisible_ui_p(a.z().get_mpz_t(), static_cast<unsigned long>(d_.p)) == 0;
        }
    }

    // ---- valuation --------------------------------------------------------

    /// v_pi(a); nullopt means zero (for finite-precision kinds: "zero at this precision").
    std::optional<std::size_t> valuation(const Elem& a) const {
        require_uniformizer();
        if (is_zero(a)) return std::nullopt;
        if (is_poly_kind()) return a.t().low_order();
        return valuation_p(a.z(), BigInt(static_cast<unsigned long>(d_.p)));
    }

    /// r = pi^v * u with v_pi(u) = 0.
    ValUnit val_unit_decompose(const Elem& r) const {
        require_uniformizer();
        auto v = valuation(r);
        if (!v) {
            if (finite_precision()) fail(ErrorCode::ZeroAtPrecision, "element is zero mod pi^" + std::to_string(d_.prec));
            fail(ErrorCode::ZeroInput, "val_unit_decompose of zero");
        }
        return {*v, shift_down(r, *v)};
    }

    /// Exact valuation on the exact kinds (ExactZ needs its ambient prime).
    std::size_t valuation_exact(const Elem& r) const {
        if (!is_exact()) fail(ErrorCode::UnsupportedRing, "valuation_exact needs an exact ring, got " + flag());
        require_uniformizer();
        if (is_zero(r)) fail(ErrorCode::ZeroInput, "valuation of zero");
        return *valuation(r);
    }

    /// Quotient r / pi^v, where pi^v | r.  For finite-precision kinds the
    /// result is the canonical representative of degree/size below pi^(K-v).
    Elem shift_down(const Elem& r, std::size_t v) const {
        if (is_poly_kind()) return Elem(r.t().shifted_down(v));
        BigInt q;
        BigInt pv = pow_ui(static_cast<unsigned long>(d_.p), v);
        mpz_divexact(q.get_mpz_t(), r.z().get_mpz_t(), pv.get_mpz_t());
        return canon_int(q);
    }

    /// r mod pi^prec.
    Elem reduce_to(const Elem& r, std::size_t prec) const {
        require_uniformizer();
        if (is_poly_kind()) return Elem(r.t().truncated(prec));
        return canon_int(mod_floor(r.z(), pow_ui(static_cast<unsigned long>(d_.p), prec)));
    }

    Elem invert_unit(const Elem& r) const {
        switch (d_.kind) {
            case RingKind::ExactZ:
                if (!is_unit(r)) fail(ErrorCode::NotAUnit, to_decimal(r.z()) + " is not a unit of Z");
                return r;
            case RingKind::ExactFpT:
                if (!is_unit(r)) fail(ErrorCode::NotAUnit, "non-constant or zero element of F_p[t]");
                return Elem(FpPoly(fp(), {FpPoly::inv_mod(r.t()[0], fp())}));
            case RingKind::FpT: {
                const FpPoly& a = r.t();
                if (a[0] == 0) fail(ErrorCode::NotAUnit, "element lies in (t)");
                const std::size_t K = d_.prec;
                const std::uint64_t P = fp();
                std::vector<FpPoly::coeff_t> g(K, 0);
                const std::uint64_t inv0 = FpPoly::inv_mod(a[0], fp());
                g[0] = static_cast<FpPoly::coeff_t>(inv0);
                for (std::size_t n = 1; n < K; ++n) {
                    std::uint64_t s = 0;
                    for (std::size_t i = 1; i <= n && i < a.coeffs().size(); ++i) s = (s + a[i] * static_cast<std::uint64_t>(g[n - i])) % P;
                    g[n] = static_cast<FpPoly::coeff_t>((P - s) % P * inv0 % P);
                }
                return Elem(FpPoly(fp(), std::move(g)));
            }
            default: {
                BigInt inv;
                if (!is_unit(r) || mpz_invert(inv.get_mpz_t(), r.z().get_mpz_t(), modulus_.get_mpz_t()) == 0)
                    fail(ErrorCode::NotAUnit, to_decimal(r.z()) + " is not a unit mod " + to_decimal(modulus_));
                return Elem(inv);
            }
        }
    }

    std::string to_string(const Elem& a) const {
        return is_poly_kind() ? a.t().to_string('t') : to_decimal(a.z());
    }

    class Accumulator;

private:
    FpPoly::coeff_t fp() const noexcept { return static_cast<FpPoly::coeff_t>(d_.p); }

    void require_uniformizer() const {
        if (!has_uniformizer()) fail(ErrorCode::NoUniformizer, "ring " + flag() + " has no chosen prime");
    }

    void reduce_in_place(BigInt& v) const {
        if (d_.p == 2)
            mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), d_.prec);
        else
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), modulus_.get_mpz_t());
    }

    Elem canon_int(BigInt v) const {
        if (finite_precision()) reduce_in_place(v);
        return Elem(std::move(v));
    }

    RingDesc d_;
    BigInt modulus_;
};

/// Sum of products over a ring, reduced once when read.  This is the inner
/// loop of every convolution, so it avoids canonicalizing per term.
class Ring::Accumulator {
public:
    explicit Accumulator(const Ring& R) : R_(R) {
        if (R_.d_.kind == RingKind::FpT) t_.assign(R_.d_.prec, 0);
    }

    void addmul(const Elem& a, const Elem& b) {
        if (!R_.is_poly_kind()) {
            mpz_addmul(z_.get_mpz_t(), a.z().get_mpz_t(), b.z().get_mpz_t());
            return;
        }
        poly_addmul(a.t(), b.t(), false);
    }
    void submul(const Elem& a, const Elem& b) {
        if (!R_.is_poly_kind()) {
            mpz_submul(z_.get_mpz_t(), a.z().get_mpz_t(), b.z().get_mpz_t());
            return;
        }
        poly_addmul(a.t(), b.t(), true);
    }
    void add(const Elem& a) {
        if (!R_.is_poly_kind()) {
            z_ += a.z();
            return;
        }
        const auto& c = a.t().coeffs();
        if (c.size() > t_.size()) t_.resize(c.size(), 0);
        for (std::size_t i = 0; i < c.size(); ++i) t_[i] += c[i];
        bump(1);
    }

    Elem value() const {
        if (!R_.is_poly_kind()) return R_.canon_int(z_);
        const std::uint64_t p = R_.d_.p;
        std::vector<FpPoly::coeff_t> c(t_.size());
        for (std::size_t i = 0; i < t_.size(); ++i) c[i] = static_cast<FpPoly::coeff_t>(t_[i] % p);
        return Elem(FpPoly(R_.fp(), std::move(c)));
    }

private:
    void poly_addmul(const FpPoly& a, const FpPoly& b, bool negate) {
        const auto& ac = a.coeffs();
        const auto& bc = b.coeffs();
        if (ac.empty() || bc.empty()) return;
        const std::uint64_t p = R_.d_.p;
        std::size_t len = ac.size() + bc.size() - 1;
        if (R_.d_.kind == RingKind::FpT) len = std::min(len, R_.d_.prec);
        if (t_.size() < len) t_.resize(len, 0);
        for (std::size_t i = 0; i < ac.size() && i < len; ++i) {
            std::uint64_t ai = ac[i];
            if (ai == 0) continue;
            if (negate) ai = p - ai;
            const std::size_t jmax = std::min(bc.size(), len - i);
            std::uint64_t* out = t_.data() + i;
            if (p < (1u << 16)) {
                for (std::size_t j = 0; j < jmax; ++j) out[j] += ai * bc[j];
            } else {
                for (std::size_t j = 0; j < jmax; ++j) out[j] = (out[j] + ai * bc[j]) % p;
            }
        }
        bump(std::min(ac.size(), bc.size()));
    }

    // Keep the running sums far from overflow: each term adds < 2^32.
    void bump(std::size_t terms) {
        pending_ += terms;
        if (pending_ < (1u << 30)) return;
        const std::uint64_t p = R_.d_.p;
        for (auto& x : t_) x %= p;
        pending_ = 0;
    }

    const Ring& R_;
    BigInt z_;
    std::vector<std::uint64_t> t_;
    std::size_t pending_ = 0;
};

}  // namespace prepkit
