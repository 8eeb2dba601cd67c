#pragma once

/**
 * @file certificate.hpp
 * @brief Small roots of gap series, the truncation bound, and resultant
 *        certificates that a given polynomial does not vanish at the root.
 *
 * With Phi_N the truncation of the gap series f after the term c_N x^{b(N)}
 * and lambda the small root of f:
 *
 *   - v(Phi_N(lambda)) >= b(N+1) v(lambda) + v(c_{N+1}), because
 *     Phi_N(lambda) = -sum_{n>N} c_n lambda^{b(n)};
 *   - for P with integral coefficients, B = Res(P, Phi_N) = U P + V Phi_N
 *     with integral U, V, so P(lambda) = 0 would force v(B) >= v(Phi_N(lambda)).
 *
 * Hence B != 0 and v(B) < v(Phi_N(lambda)) certify P(lambda) != 0.
 */

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "prepkit/bigint.hpp"
#include "prepkit/error.hpp"
#include "prepkit/gap_series.hpp"
#include "prepkit/hensel.hpp"
#include "prepkit/resultant.hpp"
#include "prepkit/rings.hpp"
#include "prepkit/weierstrass.hpp"

namespace prepkit {

// ---- exact coefficient plumbing ---------------------------------------------

template <class T>
T exact_zero(const GapSpec& s);
template <>
inline BigInt exact_zero<BigInt>(const GapSpec&) { return BigInt(0); }
template <>
inline FpPoly exact_zero<FpPoly>(const GapSpec& s) { return FpPoly(static_cast<FpPoly::coeff_t>(s.p)); }

inline const BigInt& coef_as(const Elem& e, const BigInt*) { return e.z(); }
inline const FpPoly& coef_as(const Elem& e, const FpPoly*) { return e.t(); }

template <class T>
const T& coef_as(const Elem& e) { return coef_as(e, static_cast<const T*>(nullptr)); }

inline Elem as_elem(const BigInt& v) { return Elem(v); }
inline Elem as_elem(const FpPoly& v) { return Elem(v); }

template <class T>
void require_matching_type(const GapSpec& s) {
    constexpr bool is_t = std::is_same_v<T, FpPoly>;
    if (is_t != s.char_p) fail(ErrorCode::RingMismatch, "polynomial coefficients do not match the spec characteristic");
}

// ---- small root --------------------------------------------------------------

struct SmallRoot {
    Elem lambda;  ///< in spec.local_ring(K)
    Ring ring;
    WFactorization coarse;  ///< preparation used for the starting point
    HenselResult lift;
};

/**
 * The root of the gap series in the maximal ideal, to precision K.  The
 * reduction index must be 1 (c_0 a unit); a degree-1 Weierstrass polynomial
 * from a coarse preparation gives the start, and Newton refines it.
 */
inline SmallRoot small_root_of_gap(const GapSpec& s, std::size_t K) {
    validate_gap_spec(s, 2);
    if (!exact_is_unit_mod_pi(s, s.coeff(0)))
        fail(ErrorCode::DegreeAboveOne, "c_0 is not a unit, so the Weierstrass degree is at least b(1) = " + to_decimal(s.b(1)));
    const std::size_t K0 = std::min<std::size_t>(K, 8);
    const Ring R0 = s.local_ring(K0);
    WFactorization w = prepare(build_gap_series(s, R0, 4));
    if (w.n != 1) fail(ErrorCode::DegreeAboveOne, "Weierstrass degree " + std::to_string(w.n));
    const Elem x0 = R0.neg(w.P[0]);
    HenselResult h = hensel_lift(R0, gap_evaluator(s), x0, K);
    const Ring R = s.local_ring(K);
    return {h.root, R, std::move(w), std::move(h)};
}

// ---- truncations -------------------------------------------------------------

/// Dense Phi_N = a_0 + sum_{n<=N} c_n x^{b(n)}; b(N) must not exceed the cap.
template <class T>
UPoly<T> phi_truncation(const GapSpec& s, std::size_t N) {
    require_matching_type<T>(s);
    validate_gap_spec(s, N);
    if (N >= s.defined_prefix()) fail(ErrorCode::SpecViolation, "Phi_" + std::to_string(N) + " needs coefficients past the rule");
    const BigInt top = s.b(N);
    if (top > s.degree_cap)
        fail(ErrorCode::BudgetExceeded, "b(" + std::to_string(N) + ") = " + to_decimal(top) + " exceeds the degree cap " + std::to_string(s.degree_cap));
    const T zero = exact_zero<T>(s);
    std::vector<T> c(static_cast<std::size_t>(top.get_ui()) + 1, zero);
    c[0] = coef_as<T>(s.a0);
    for (std::size_t n = 0; n <= N; ++n) c[static_cast<std::size_t>(s.b(n).get_ui())] = coef_as<T>(s.coeff(n));
    return UPoly<T>(std::move(c), zero);
}

/// Phi_N(x) in a local ring, summed sparsely.
inline Elem phi_value(const GapSpec& s, std::size_t N, const Ring& R, const Elem& x) {
    return eval_terms(R, gap_terms_upto(s, N), x);
}

struct BoundCheckReport {
    std::size_t N = 0;
    BigInt b_next;
    std::size_t v_lambda = 0;
    std::size_t v_next_coeff = 0;
    /// b(N+1) v(lambda) + v(c_{N+1})
    BigInt required;
    /// nullopt: Phi_N(lambda) = 0 modulo pi^K.
    std::optional<std::size_t> phi_val;
    std::size_t K = 0;
    bool holds = false;
    /// phi_val == required.
    bool equality = false;
};

inline BigInt bound_required(const GapSpec& s, const Ring& R, const Elem& lambda, std::size_t N) {
    auto vl = R.valuation(lambda);
    if (!vl) fail(ErrorCode::ZeroAtPrecision, "lambda is zero at precision " + std::to_string(R.prec()));
    return s.b(N + 1) * BigInt(static_cast<unsigned long>(*vl)) + BigInt(static_cast<unsigned long>(exact_valuation(s, s.coeff(N + 1))));
}

/// v(Phi_N(lambda)) >= b(N+1) v(lambda) + v(c_{N+1}), checked exactly.
inline BoundCheckReport bound_check_prime(const GapSpec& s, const Ring& R, const Elem& lambda, std::size_t N) {
    validate_gap_spec(s, N + 1);
    BoundCheckReport out;
    out.N = N;
    out.K = R.prec();
    out.b_next = s.b(N + 1);
    out.required = bound_required(s, R, lambda, N);
    out.v_lambda = *R.valuation(lambda);
    out.v_next_coeff = exact_valuation(s, s.coeff(N + 1));
    if (BigInt(static_cast<unsigned long>(R.prec())) <= out.required)
        fail(ErrorCode::PrecisionTooLow, "the bound needs K >= " + to_decimal(out.required + 1) + ", got K = " + std::to_string(R.prec()));
    out.phi_val = R.valuation(phi_value(s, N, R, lambda));
    const BigInt pv(static_cast<unsigned long>(out.phi_val ? *out.phi_val : R.prec()));
    out.holds = pv >= out.required;
    out.equality = out.phi_val && pv == out.required;
    return out;
}

// ---- margin of the final inequality ------------------------------------------

struct MarginReport {
    std::size_t N = 0;
    BigInt b_N, b_next;
    /// b(N+1) / b(N)
    BigRat ratio;
    /// char 0: the Hadamard upper bound for |B|^2 and the p-adic lower bound
    /// p^(2 v(lambda) b(N+1)); char p: the t-degree upper bound and the
    /// t-adic lower bound on v_t(B).
    BigRat lhs, rhs;
    std::string form;
    /// The two bounds are incompatible: no nonzero B can satisfy both.
    bool flipped = false;
};

/**
 * Characteristic 0.  For P of degree d with L = sum p_i^2, Hadamard gives
 *     |B|^2 <= L^{b(N)} (sum of squared Phi_N coefficients)^d
 *          <= L^{b(N)} (kappa^2 C^{2 b(N) + 2} / (C^2 - 1))^d,
 * while v(B) >= v(lambda) b(N+1) forces |B|^2 >= p^{2 v(lambda) b(N+1)}.
 * The comparison is done on exact rationals.
 */
inline MarginReport margin_char0(const GapSpec& s, std::size_t N, const BigInt& L, std::size_t d, std::size_t v_lambda) {
    MarginReport m;
    m.N = N;
    m.b_N = s.b(N);
    m.b_next = s.b(N + 1);
    m.ratio = BigRat(m.b_next, m.b_N);
    m.ratio.canonicalize();
    const std::size_t bn = to_size(m.b_N, "b(N)");
    const std::size_t bn1 = to_size(m.b_next, "b(N+1)");
    if (bn > (1u << 24) || bn1 > (1u << 24)) fail(ErrorCode::BudgetExceeded, "margin exponents exceed 2^24");
    auto rpow = [](const BigRat& r, std::size_t e) {
        BigRat out(pow(r.get_num(), e), pow(r.get_den(), e));
        out.canonicalize();
        return out;
    };
    const BigRat C2 = s.C * s.C;
    const BigRat row = s.kappa * s.kappa * rpow(s.C, 2 * bn + 2) / (C2 - 1);
    m.lhs = BigRat(pow(L, bn)) * rpow(row, d);
    m.rhs = BigRat(pow_ui(static_cast<unsigned long>(s.p), 2 * v_lambda * bn1));
    m.form = "L^b(N) * (kappa^2 C^(2b(N)+2) / (C^2-1))^d vs p^(2 v(lambda) b(N+1))";
    m.flipped = !(m.lhs > m.rhs);
    return m;
}

/**
 * Characteristic p.  deg_t(B) <= H b(N) + A d, with H the t-degree bound of
 * P's coefficients and A that of Phi_N's; v_t(B) >= b(N+1) v(lambda) + v(c_{N+1}).
 */
inline MarginReport margin_char_p(const GapSpec& s, std::size_t N, long H, std::size_t d, std::size_t v_lambda) {
    MarginReport m;
    m.N = N;
    m.b_N = s.b(N);
    m.b_next = s.b(N + 1);
    m.ratio = BigRat(m.b_next, m.b_N);
    m.ratio.canonicalize();
    long A = s.a0.t().degree();
    for (std::size_t n = 0; n <= N; ++n) A = std::max(A, s.coeff(n).t().degree());
    m.lhs = BigRat(BigInt(H) * m.b_N + BigInt(A) * BigInt(static_cast<unsigned long>(d)));
    m.rhs = BigRat(m.b_next * BigInt(static_cast<unsigned long>(v_lambda)) +
                   BigInt(static_cast<unsigned long>(exact_valuation(s, s.coeff(N + 1)))));
    m.form = "H b(N) + A d vs b(N+1) v(lambda) + v(c_(N+1))";
    m.flipped = m.lhs < m.rhs;
    return m;
}

// ---- certificates ------------------------------------------------------------

enum class Verdict { CertifiedNotRoot, SharedFactor, Inconclusive };

inline std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::CertifiedNotRoot: return "CertifiedNotRoot";
        case Verdict::SharedFactor: return "SharedFactor";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct CertificateReport {
    std::size_t N = 0;
    std::size_t K = 0;
    std::optional<std::size_t> phi_val;
    BigInt b_next;
    std::string B;
    bool B_zero = false;
    std::optional<std::size_t> B_val;
    Verdict verdict = Verdict::Inconclusive;
    /// For CertifiedNotRoot: P(lambda) was evaluated modulo pi^min(K, v(B)+1)
    /// and found nonzero.
    bool cross_checked = false;
    MarginReport margin;
};

/// Everything about (spec, lambda, N) that does not depend on P.
template <class T>
class CertificateContext {
public:
    CertificateContext(GapSpec s, Ring R, Elem lambda, std::size_t N)
        : s_(std::move(s)), R_(std::move(R)), lambda_(std::move(lambda)), N_(N), phi_(phi_truncation<T>(s_, N)) {
        auto vl = R_.valuation(lambda_);
        if (!vl || *vl == 0) fail(ErrorCode::PointNotSmall, "lambda must lie in the maximal ideal and be nonzero at precision");
        v_lambda_ = *vl;
        const BigInt req = bound_required(s_, R_, lambda_, N_);
        if (BigInt(static_cast<unsigned long>(R_.prec())) <= req)
            fail(ErrorCode::PrecisionTooLow, "certificates at N = " + std::to_string(N) + " need K >= " + to_decimal(req + 1));
        phi_val_ = R_.valuation(phi_value(s_, N_, R_, lambda_));
    }

    const GapSpec& spec() const noexcept { return s_; }
    const Ring& ring() const noexcept { return R_; }
    const Elem& lambda() const noexcept { return lambda_; }
    const UPoly<T>& phi() const noexcept { return phi_; }
    std::optional<std::size_t> phi_val() const noexcept { return phi_val_; }
    std::size_t v_lambda() const noexcept { return v_lambda_; }
    std::size_t N() const noexcept { return N_; }

    /// P(lambda) modulo pi^prec.
    Elem eval_at_lambda(const UPoly<T>& P, std::size_t prec) const {
        const Ring Rk = R_.with_precision(prec);
        const Elem x = Rk.convert(lambda_, R_);
        Elem acc = Rk.zero();
        for (std::size_t i = P.coeffs().size(); i-- > 0;) acc = Rk.add(Rk.mul(acc, x), to_local(Rk, as_elem(P.coeffs()[i])));
        return acc;
    }

    CertificateReport certify(const UPoly<T>& P, bool with_margin = true) const {
        if (P.degree() < 1) fail(ErrorCode::BothConstant, "P must be nonconstant");
        CertificateReport r;
        r.N = N_;
        r.K = R_.prec();
        r.phi_val = phi_val_;
        r.b_next = s_.b(N_ + 1);
        const T B = resultant_reduced(P, phi_);
        r.B = domain_to_string(B);
        r.B_zero = domain_is_zero(B);
        if (r.B_zero) {
            r.verdict = Verdict::SharedFactor;
        } else {
            const std::size_t bv = s_.exact_ring().valuation_exact(as_elem(B));
            r.B_val = bv;
            const std::size_t pv = phi_val_ ? *phi_val_ : R_.prec();
            // Without an exact phi_val only v(Phi_N(lambda)) >= K is known,
            // which still suffices when v(B) < K.
            if (bv < pv) {
                r.verdict = Verdict::CertifiedNotRoot;
                const std::size_t prec = std::min(R_.prec(), bv + 1);
                if (Rk_is_zero(eval_at_lambda(P, prec), prec))
                    fail(ErrorCode::Internal, "certificate contradicts direct evaluation of P(lambda)");
                r.cross_checked = true;
            }
        }
        if (with_margin) r.margin = margin_for(P);
        return r;
    }

    MarginReport margin_for(const UPoly<T>& P) const {
        const std::size_t d = static_cast<std::size_t>(P.degree());
        if constexpr (std::is_same_v<T, BigInt>) {
            BigInt L = 0;
            for (const auto& c : P.coeffs()) L += c * c;
            return margin_char0(s_, N_, L, d, v_lambda_);
        } else {
            long H = 0;
            for (const auto& c : P.coeffs()) H = std::max(H, c.degree());
            return margin_char_p(s_, N_, H, d, v_lambda_);
        }
    }

private:
    bool Rk_is_zero(const Elem& e, std::size_t prec) const { return R_.with_precision(prec).is_zero(e); }

    GapSpec s_;
    Ring R_;
    Elem lambda_;
    std::size_t N_;
    UPoly<T> phi_;
    std::optional<std::size_t> phi_val_;
    std::size_t v_lambda_ = 0;
};

template <class T>
CertificateReport certify_not_root(const GapSpec& s, const Ring& R, const Elem& lambda, const UPoly<T>& P, std::size_t N) {
    return CertificateContext<T>(s, R, lambda, N).certify(P);
}

// ---- families ----------------------------------------------------------------

struct FamilyEntry {
    /// Ascending coefficients, rendered.
    std::vector<std::string> coeffs;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<std::size_t> B_val;
};

struct FamilySummary {
    std::size_t degree_cap = 0;
    std::size_t height_cap = 0;
    std::size_t N = 0;
    std::size_t total = 0, certified = 0, shared = 0, inconclusive = 0;
    /// Every CertifiedNotRoot passed the direct evaluation cross-check.
    bool all_cross_checked = true;
    std::vector<FamilyEntry> entries;
    /// Margin for the worst candidate of the family.
    MarginReport margin;
};

/**
 * Candidates in enumeration order: degree d = 1 .. D; within a degree the
 * coefficient vector is read from x^d down to x^0 and ordered
 * lexicographically.  Characteristic 0: leading coefficient 1 .. H, the
 * others -H .. H.  Characteristic p: every coefficient is a polynomial in t of
 * degree <= H (ordered by its base-p digit string, t^0 lowest); the leading
 * one is nonzero with top coefficient 1.
 */
template <class T>
class FamilyEnumerator {
public:
    FamilyEnumerator(const GapSpec& s, std::size_t D, std::size_t H) : s_(s), D_(D), H_(H) {
        if constexpr (std::is_same_v<T, BigInt>) {
            lead_count_ = BigInt(static_cast<unsigned long>(H));
            other_count_ = BigInt(static_cast<unsigned long>(2 * H + 1));
        } else {
            // Monic-in-t leading coefficients: top digit fixed to 1 at degree k.
            lead_count_ = 0;
            for (std::size_t k = 0; k <= H; ++k) lead_count_ += pow_ui(static_cast<unsigned long>(s.p), k);
            other_count_ = pow_ui(static_cast<unsigned long>(s.p), H + 1);
        }
        for (std::size_t d = 1; d <= D; ++d) {
            per_degree_.push_back(to_size(lead_count_ * pow(other_count_, d), "family size"));
            total_ += per_degree_.back();
        }
    }

    std::size_t size() const noexcept { return total_; }

    UPoly<T> at(std::size_t idx) const {
        std::size_t d = 1;
        while (idx >= per_degree_[d - 1]) idx -= per_degree_[d - 1], ++d;
        const std::size_t oc = to_size(other_count_, "count");
        std::vector<T> c(d + 1, exact_zero<T>(s_));
        for (std::size_t i = 0; i < d; ++i) {
            c[i] = other(idx % oc);
            idx /= oc;
        }
        c[d] = lead(idx);
        return UPoly<T>(std::move(c), exact_zero<T>(s_));
    }

private:
    T other(std::size_t k) const {
        if constexpr (std::is_same_v<T, BigInt>) {
            return BigInt(static_cast<long>(k) - static_cast<long>(H_));
        } else {
            return digits(k, H_ + 1);
        }
    }
    T lead(std::size_t k) const {
        if constexpr (std::is_same_v<T, BigInt>) {
            return BigInt(static_cast<unsigned long>(k + 1));
        } else {
            // Leading coefficients of t-degree j come in blocks of p^j.
            const std::size_t p = s_.p;
            std::size_t j = 0, block = 1;
            while (k >= block) k -= block, ++j, block *= p;
            FpPoly low = digits(k, j);
            return low + FpPoly::monomial(static_cast<FpPoly::coeff_t>(p), j);
        }
    }
    FpPoly digits(std::size_t k, std::size_t len) const {
        std::vector<FpPoly::coeff_t> c(len, 0);
        for (std::size_t i = 0; i < len; ++i) {
            c[i] = static_cast<FpPoly::coeff_t>(k % s_.p);
            k /= s_.p;
        }
        return FpPoly(static_cast<FpPoly::coeff_t>(s_.p), std::move(c));
    }

    const GapSpec& s_;
    std::size_t D_, H_;
    BigInt lead_count_, other_count_;
    std::vector<std::size_t> per_degree_;
    std::size_t total_ = 0;
};

/// Certify every candidate of the family; `jobs` worker threads, results
/// merged in enumeration order.
template <class T>
FamilySummary certify_family(const GapSpec& s, const Ring& R, const Elem& lambda, std::size_t D, std::size_t H, std::size_t N,
                             std::size_t jobs = 1, bool keep_entries = true) {
    require_matching_type<T>(s);
    FamilySummary out;
    out.degree_cap = D;
    out.height_cap = H;
    out.N = N;
    const CertificateContext<T> ctx(s, R, lambda, N);
    if constexpr (std::is_same_v<T, BigInt>) {
        out.margin = margin_char0(s, N, BigInt(static_cast<unsigned long>((D + 1) * H * H)), std::max<std::size_t>(D, 1), ctx.v_lambda());
    } else {
        out.margin = margin_char_p(s, N, static_cast<long>(H), std::max<std::size_t>(D, 1), ctx.v_lambda());
    }
    if (D == 0) return out;
    const FamilyEnumerator<T> fam(s, D, H);
    const std::size_t total = fam.size();
    out.total = total;
    std::vector<Verdict> verdicts(total);
    std::vector<std::optional<std::size_t>> bvals(total);
    std::vector<unsigned char> checked(total, 0);

    std::atomic<bool> failed{false};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&](std::size_t start, std::size_t stride) {
        try {
            for (std::size_t i = start; i < total && !failed; i += stride) {
                CertificateReport r = ctx.certify(fam.at(i), false);
                verdicts[i] = r.verdict;
                bvals[i] = r.B_val;
                checked[i] = r.cross_checked;
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!err) err = std::current_exception();
            failed = true;
        }
    };
    jobs = std::max<std::size_t>(1, std::min(jobs, total));
    if (jobs == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);

    for (std::size_t i = 0; i < total; ++i) {
        switch (verdicts[i]) {
            case Verdict::CertifiedNotRoot:
                ++out.certified;
                if (!checked[i]) out.all_cross_checked = false;
                break;
            case Verdict::SharedFactor: ++out.shared; break;
            case Verdict::Inconclusive: ++out.inconclusive; break;
        }
        if (keep_entries) {
            FamilyEntry e;
            const UPoly<T> P = fam.at(i);
            for (const auto& c : P.coeffs()) e.coeffs.push_back(domain_to_string(c));
            e.verdict = verdicts[i];
            e.B_val = bvals[i];
            out.entries.push_back(std::move(e));
        }
    }
    return out;
}

}  // namespace prepkit
