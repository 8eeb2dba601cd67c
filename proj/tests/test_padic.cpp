/**
 * @file test_padic.cpp
 * @brief Hensel lifting, the gap-series root and its bound chain, root
 *        transfer through preparation, and transcendence certificates.
 */

#include <gtest/gtest.h>

#include <set>

#include "prepkit/certificate.hpp"
#include "prepkit/gap_series.hpp"
#include "prepkit/hensel.hpp"
#include "prepkit/weierstrass.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"

using namespace prepkit;

namespace {

constexpr std::size_t kK = 600;

// ---- exact polynomial helpers for building Hensel instances ----

std::vector<BigInt> zmul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<FpPoly> tmul(const std::vector<FpPoly>& a, const std::vector<FpPoly>& b) {
    std::vector<FpPoly> r(a.size() + b.size() - 1, FpPoly(a[0].prime()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

BigInt zhorner_mod(const std::vector<BigInt>& c, const BigInt& x, const BigInt& m) {
    BigInt acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = mod_floor(acc * x + c[i], m);
    return acc;
}

FpPoly thorner_trunc(const std::vector<FpPoly>& c, const FpPoly& x, std::size_t K) {
    FpPoly acc(x.prime());
    for (std::size_t i = c.size(); i-- > 0;) acc = (FpPoly::mul_trunc(acc, x, K) + c[i]).truncated(K);
    return acc;
}

std::size_t t_order(const FpPoly& f, std::size_t K) { return f.is_zero() ? K : f.low_order(); }

FpPoly random_fp(oracle::Rng& rng, std::uint32_t p, std::size_t len) {
    std::vector<std::uint32_t> d(len);
    for (auto& x : d) x = static_cast<std::uint32_t>(oracle::uniform(rng, 0, p - 1));
    return FpPoly(p, d);
}

FpPoly random_fp_unit(oracle::Rng& rng, std::uint32_t p, std::size_t len) {
    FpPoly f = random_fp(rng, p, len);
    while (f[0] == 0) f = random_fp(rng, p, len);
    return f;
}

void expect_doubling(const HenselResult& h) {
    ASSERT_FALSE(h.trace.empty());
    EXPECT_GT(h.trace.front(), 2 * h.e);
    for (std::size_t j = 0; j + 1 < h.trace.size(); ++j) {
        const std::size_t a = h.trace[j];
        const std::size_t want = std::min(h.working_precision, 2 * a - 2 * h.e);
        EXPECT_GE(h.trace[j + 1], want) << "step " << j;
    }
    EXPECT_EQ(h.trace.back(), h.working_precision);
}

// ---- gap-series fixtures ----

struct Char0Fixture {
    GapSpec s = GapSpec::reference();
    SmallRoot root = small_root_of_gap(s, kK);
    BigInt lambda() const { return root.lambda.z(); }
};

struct CharPFixture {
    GapSpec s = GapSpec::reference_char_p();
    SmallRoot root = small_root_of_gap(s, kK);
    const FpPoly& lambda() const { return root.lambda.t(); }
};

/// a_0 + sum_{n<=N} lambda^{b(n)} mod t^K by repeated squaring (t + x + x^2 + x^16 + ...).
FpPoly char_p_phi(const FpPoly& lambda, std::size_t N, std::size_t K) {
    FpPoly acc = FpPoly(2, {0, 1});
    FpPoly pw = lambda;  // lambda^(2^k)
    std::size_t k = 0;
    for (std::size_t n = 0; n <= N; ++n) {
        const std::size_t e = n == 0 ? 0 : n * n;  // b(n) = 2^e
        while (k < e) {
            pw = FpPoly::mul_trunc(pw, pw, K);
            ++k;
        }
        acc = acc + pw;
    }
    return acc.truncated(K);
}

}  // namespace

// ---- Hensel -------------------------------------------------------------------

TEST(Hensel, SquareRootOfSixInZ5) {
    const auto h = hensel_lift(Ring::zp(5, 3), poly_evaluator({Elem(BigInt(-6)), Elem(BigInt(0)), Elem(BigInt(1))}),
                               Ring::zp(5, 3).from_int(1), 3);
    EXPECT_EQ(h.root.z(), 16);
    EXPECT_EQ(mod_floor(BigInt(16) * 16 - 6, BigInt(125)), 0);
    expect_doubling(h);
    EXPECT_PREPKIT_ERROR(hensel_lift(Ring::zp(5, 3), poly_evaluator({Elem(BigInt(-6)), Elem(BigInt(0)), Elem(BigInt(1))}),
                                     Ring::zp(5, 3).from_int(2), 3),
                         HenselConditionFails);
    EXPECT_PREPKIT_ERROR(hensel_lift(Ring::zmodpk(5, 3), poly_evaluator({Elem(BigInt(-6)), Elem(BigInt(1))}),
                                     Ring::zmodpk(5, 3).from_int(1), 3),
                         UnsupportedRing);
}

TEST(Hensel, DoublingOnRandomLiftableInstances) {
    // f = (x - r)(x - r - pi^e u) h(x) with h(r) a unit and x0 = r + pi^(e+1) w:
    // then v(f'(x0)) = e, v(f(x0)) > 2e, and the lifted root agrees with r
    // modulo pi^(K-e).
    oracle::Rng rng(51);
    int done = 0;
    for (int it = 0; it < 100; ++it) {
        const std::size_t e = oracle::uniform(rng, 0, 2);
        const std::size_t K = oracle::uniform(rng, 10, 40);
        if (it % 2 == 0) {
            const unsigned long p = std::vector<unsigned long>{3, 5, 7}[oracle::uniform(rng, 0, 2)];
            const BigInt pe = pow_ui(p, e), P = BigInt(p);
            const BigInt r = P * static_cast<unsigned long>(oracle::uniform(rng, 0, 1000000));
            const BigInt u = static_cast<unsigned long>(oracle::uniform(rng, 1, p - 1));
            const BigInt w = static_cast<unsigned long>(oracle::uniform(rng, 0, 1000));
            std::vector<BigInt> f = zmul({-r, 1}, {-(r + pe * u), 1});
            f = zmul(f, {BigInt(static_cast<unsigned long>(oracle::uniform(rng, 1, p - 1))), BigInt(static_cast<long>(oracle::uniform(rng, 0, 50)))});
            const BigInt x0 = r + pe * P * w;
            std::vector<Elem> ce;
            for (const auto& c : f) ce.emplace_back(c);
            const Ring base = Ring::zp(p, K);
            const auto h = hensel_lift(base, poly_evaluator(ce), base.from_bigint(x0), K);
            EXPECT_EQ(h.e, e);
            expect_doubling(h);
            const BigInt mK = pow_ui(p, K);
            EXPECT_EQ(zhorner_mod(f, h.root.z(), mK), 0);
            EXPECT_EQ(mod_floor(h.root.z() - x0, pe * P), 0);
            EXPECT_EQ(mod_floor(h.root.z() - r, pow_ui(p, K - e)), 0);
        } else {
            const std::uint32_t p = std::vector<std::uint32_t>{2, 3}[oracle::uniform(rng, 0, 1)];
            const FpPoly t = FpPoly::monomial(p, 1);
            const FpPoly pe = FpPoly::monomial(p, e);
            const FpPoly r = random_fp(rng, p, 12).shifted_up(1);
            const FpPoly u = random_fp_unit(rng, p, 3);
            const FpPoly w = random_fp(rng, p, 5);
            std::vector<FpPoly> f = tmul({FpPoly(p) - r, FpPoly::constant(p, 1)}, {FpPoly(p) - (r + pe * u), FpPoly::constant(p, 1)});
            f = tmul(f, {random_fp_unit(rng, p, 2), random_fp(rng, p, 3)});
            const FpPoly x0 = r + pe * t * w;
            std::vector<Elem> ce;
            for (const auto& c : f) ce.emplace_back(c);
            const Ring base = Ring::fpt(p, K);
            const auto h = hensel_lift(base, poly_evaluator(ce), base.from_tpoly(x0), K);
            EXPECT_EQ(h.e, e);
            expect_doubling(h);
            const FpPoly root = h.root.t();
            EXPECT_TRUE(thorner_trunc(f, root, K).is_zero());
            EXPECT_GE(t_order(root - x0, K), e + 1);
            EXPECT_GE(t_order((root - r).truncated(K), K), K - e);
        }
        ++done;
    }
    EXPECT_EQ(done, 100);
}

// ---- gap series: bound chain and root transfer ----------------------------------

TEST(GapSeries, SmallRootAndBoundChainCharZero) {
    const Char0Fixture fx;
    const BigInt lam = fx.lambda();
    EXPECT_EQ(fx.root.ring, Ring::zp(2, kK));
    EXPECT_EQ(mod_floor(lam, BigInt(4)), 2);
    // f(lambda) mod 2^600 only sees x, x^2, x^16, x^512 (2^16 v(lambda) > 600).
    EXPECT_EQ(oracle::reference_phi_mod(lam, 3, kK), 0);
    EXPECT_EQ(oracle::v2(oracle::reference_phi_mod(lam, 1, kK)), 16u);
    EXPECT_EQ(oracle::v2(oracle::reference_phi_mod(lam, 2, kK)), 512u);
    expect_doubling(fx.root.lift);

    for (std::size_t N : {1u, 2u}) {
        const auto rep = bound_check_prime(fx.s, fx.root.ring, fx.root.lambda, N);
        ASSERT_TRUE(rep.phi_val.has_value());
        EXPECT_EQ(BigInt(static_cast<unsigned long>(*rep.phi_val)), rep.required);
        EXPECT_EQ(rep.required, fx.s.b(N + 1));
        EXPECT_TRUE(rep.holds);
        EXPECT_TRUE(rep.equality);
    }
    EXPECT_EQ(fx.s.b(2), 16);
    EXPECT_EQ(fx.s.b(3), 512);
}

TEST(GapSeries, RootTransferThroughPreparationCharZero) {
    const Char0Fixture fx;
    const BigInt lam = fx.lambda();
    // The coarse preparation that seeded Newton, and a full one at K = 600.
    std::vector<WFactorization> facs = {fx.root.coarse, prepare(build_gap_series(fx.s, fx.s.local_ring(kK), 4))};
    for (const auto& w : facs) {
        ASSERT_EQ(w.n, 1u);
        EXPECT_TRUE(w.ring.is_unit(w.U[0]));
        const std::size_t K = w.ring.prec();
        const BigInt Pl = mod_floor(lam + w.P[0].z(), BigInt(1) << K);
        const std::size_t v = Pl == 0 ? K : oracle::v2(Pl);
        EXPECT_GE(v, K);
    }
    EXPECT_EQ(facs[1].ring.prec(), kK);
    // The schedules agree at a smaller precision where the dense one is cheap.
    const Series f200 = build_gap_series(fx.s, fx.s.local_ring(200), 4);
    EXPECT_EQ(prepare(f200, Schedule::Forward).P, prepare(f200, Schedule::WarmStart).P);
}

TEST(GapSeries, SmallRootAndBoundChainCharP) {
    const CharPFixture fx;
    const FpPoly& lam = fx.lambda();
    EXPECT_EQ(fx.root.ring, Ring::fpt(2, kK));
    EXPECT_EQ(lam.low_order(), 1u);
    EXPECT_TRUE(char_p_phi(lam, 3, kK).is_zero());
    EXPECT_EQ(char_p_phi(lam, 1, kK).low_order(), 16u);
    EXPECT_EQ(char_p_phi(lam, 2, kK).low_order(), 512u);
    expect_doubling(fx.root.lift);
    for (std::size_t N : {1u, 2u}) {
        const auto rep = bound_check_prime(fx.s, fx.root.ring, fx.root.lambda, N);
        EXPECT_TRUE(rep.equality);
        EXPECT_EQ(rep.required, fx.s.b(N + 1));
    }
    const auto w = prepare(build_gap_series(fx.s, fx.s.local_ring(kK), 4));
    ASSERT_EQ(w.n, 1u);
    EXPECT_TRUE((lam + w.P[0].t()).truncated(kK).is_zero());
}

TEST(GapSeries, SpecErrors) {
    GapSpec bad = GapSpec::reference();
    bad.a0 = Elem(BigInt(3));
    EXPECT_PREPKIT_ERROR(small_root_of_gap(bad, 20), SpecViolation);
    GapSpec deg2 = GapSpec::reference();
    deg2.values = {Elem(BigInt(2))};
    EXPECT_PREPKIT_ERROR(small_root_of_gap(deg2, 20), DegreeAboveOne);
    EXPECT_PREPKIT_ERROR(phi_truncation<BigInt>(GapSpec::reference(), 5), BudgetExceeded);
    EXPECT_PREPKIT_ERROR(phi_truncation<FpPoly>(GapSpec::reference(), 1), RingMismatch);
}

// ---- certificates -----------------------------------------------------------------

TEST(Certificates, SingleCandidates) {
    const Char0Fixture fx;
    const auto rx = certify_not_root(fx.s, fx.root.ring, fx.root.lambda, make_zpoly({0, 1}), 1);
    EXPECT_EQ(rx.B, "2");
    EXPECT_EQ(rx.verdict, Verdict::CertifiedNotRoot);
    EXPECT_TRUE(rx.cross_checked);
    const auto rphi = certify_not_root(fx.s, fx.root.ring, fx.root.lambda, make_zpoly({2, 1, 1}), 1);
    EXPECT_EQ(rphi.verdict, Verdict::SharedFactor);
    // Res(x - 2, 2 + x + x^2) = 2 + 2 + 4.
    const auto r2 = certify_not_root(fx.s, fx.root.ring, fx.root.lambda, make_zpoly({-2, 1}), 1);
    EXPECT_EQ(r2.B, "8");
    EXPECT_EQ(r2.B_val, 3u);
    EXPECT_EQ(r2.verdict, Verdict::CertifiedNotRoot);

    const Ring R10 = Ring::zp(2, 10);
    EXPECT_PREPKIT_ERROR(CertificateContext<BigInt>(fx.s, R10, R10.convert(fx.root.lambda, fx.root.ring), 1), PrecisionTooLow);
}

TEST(Certificates, MarginFlipsFromBValues) {
    const GapSpec s = GapSpec::reference();
    const BigInt L(static_cast<unsigned long>(3 * 5 * 5));  // (D + 1) H^2 with D = 2, H = 5
    EXPECT_FALSE(margin_char0(s, 0, L, 2, 1).flipped);
    for (std::size_t N : {2u, 3u}) {
        const auto m = margin_char0(s, N, L, 2, 1);
        EXPECT_TRUE(m.flipped) << N;
        // Recheck with raw integers: L^b(N) (4 * 2^(2b(N)+2) / 3)^2 vs 2^(2 b(N+1)).
        const unsigned long bn = s.b(N).get_ui(), bn1 = s.b(N + 1).get_ui();
        const BigRat row = BigRat(BigInt(4) * pow_ui(2, 2 * bn + 2), BigInt(3));
        EXPECT_LE(BigRat(pow(L, bn)) * row * row, BigRat(pow_ui(2, 2 * bn1)));
    }
    const GapSpec sp = GapSpec::reference_char_p();
    EXPECT_FALSE(margin_char_p(sp, 0, 5, 2, 1).flipped);
    for (std::size_t N : {2u, 3u}) {
        const auto m = margin_char_p(sp, N, 5, 2, 1);
        EXPECT_TRUE(m.flipped);
        EXPECT_EQ(m.lhs, BigRat(BigInt(5) * sp.b(N) + 2));
        EXPECT_EQ(m.rhs, BigRat(sp.b(N + 1)));
    }
}

TEST(Certificates, FamilyCharZeroIsFullyCertified) {
    const Char0Fixture fx;
    const std::size_t D = 2, H = 5, N = 2;
    const auto sum = certify_family<BigInt>(fx.s, fx.root.ring, fx.root.lambda, D, H, N);
    // Candidates: leading coefficient 1..H, the rest -H..H.
    EXPECT_EQ(sum.total, H * (2 * H + 1) + H * (2 * H + 1) * (2 * H + 1));
    EXPECT_EQ(sum.inconclusive, 0u);
    EXPECT_EQ(sum.certified + sum.shared, sum.total);
    EXPECT_TRUE(sum.all_cross_checked);
    EXPECT_TRUE(sum.margin.flipped);

    std::vector<BigInt> phi(17, 0);
    phi[0] = 2;
    phi[1] = phi[2] = phi[16] = 1;
    std::set<std::vector<std::string>> seen;
    ASSERT_EQ(sum.entries.size(), sum.total);
    for (const auto& e : sum.entries) {
        EXPECT_TRUE(seen.insert(e.coeffs).second);
        std::vector<BigInt> P;
        for (const auto& c : e.coeffs) P.push_back(parse_bigint(c));
        ASSERT_GE(P.size(), 2u);
        EXPECT_GE(P.back(), 1);
        EXPECT_LE(P.back(), static_cast<long>(H));
        for (const auto& c : P) EXPECT_LE(abs(c), static_cast<long>(H));
        const BigInt B = oracle::z_resultant_norm(P, phi);
        const BigInt Pl = oracle::horner_mod(P, fx.lambda(), kK);
        if (e.verdict == Verdict::SharedFactor) {
            EXPECT_EQ(B, 0);
        } else {
            ASSERT_EQ(e.verdict, Verdict::CertifiedNotRoot);
            ASSERT_NE(B, 0);
            EXPECT_EQ(e.B_val, oracle::v2(B));
            EXPECT_LT(oracle::v2(B), 512u);
            // Direct evaluation: P(lambda) is nonzero modulo 2^600.
            ASSERT_NE(Pl, 0);
            EXPECT_LT(oracle::v2(Pl), kK);
        }
    }
}

TEST(Certificates, FamilyCharPIsFullyCertified) {
    const CharPFixture fx;
    const std::size_t D = 2, H = 5, N = 2;
    const auto sum = certify_family<FpPoly>(fx.s, fx.root.ring, fx.root.lambda, D, H, N, 1, false);
    const std::size_t lead = 63, other = 64;  // sum_{k<=5} 2^k monic-in-t leads, 2^6 others
    EXPECT_EQ(sum.total, lead * other + lead * other * other);
    EXPECT_EQ(sum.inconclusive, 0u);
    EXPECT_EQ(sum.certified + sum.shared, sum.total);
    EXPECT_TRUE(sum.all_cross_checked);
    EXPECT_TRUE(sum.margin.flipped);

    // Direct v_t(P(lambda)) < 600 for every candidate, by Horner mod t^600.
    const FamilyEnumerator<FpPoly> fam(fx.s, D, H);
    ASSERT_EQ(fam.size(), sum.total);
    const FpPoly& lam = fx.lambda();
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto P = fam.at(i);
        EXPECT_EQ(P.lead().lead(), 1u);
        std::vector<FpPoly> c(P.coeffs().begin(), P.coeffs().end());
        nonzero += !thorner_trunc(c, lam, kK).is_zero();
    }
    EXPECT_EQ(nonzero, sum.total);
}
