/**
 * @file test_series.cpp
 * @brief Truncated power series: products, inverses, composition,
 *        compositional inversion and rationality detection.
 */

#include <gtest/gtest.h>

#include "prepkit/rationality.hpp"
#include "prepkit/series.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"

using namespace prepkit;

namespace {

/// f(g) from the definition: sum_i f_i g^i with naive products.
Coeffs naive_compose(const Ring& R, const Coeffs& f, const Coeffs& g, std::size_t M) {
    Coeffs acc(M, R.zero());
    Coeffs gp(M, R.zero());
    gp[0] = R.one();
    for (std::size_t i = 0; i < M && i < f.size(); ++i) {
        for (std::size_t k = 0; k < M; ++k) acc[k] = R.add(acc[k], R.mul(f[i], gp[k]));
        gp = oracle::naive_series_mul(R, gp, g, M);
    }
    return acc;
}

Series random_normalized(oracle::Rng& rng, const Ring& R, std::size_t M, long span) {
    Coeffs c(M, R.zero());
    c[1] = R.one();
    for (std::size_t i = 2; i < M; ++i) c[i] = R.from_int(oracle::uniform_signed(rng, -span, span));
    return Series(R, std::move(c));
}

Series identity(const Ring& R, std::size_t M) { return Series::x(R, M); }

}  // namespace

TEST(SeriesArithmetic, ProductAgreesWithNaiveConvolution) {
    oracle::Rng rng(21);
    for (const Ring& R : {Ring::zp(5, 12), Ring::fpt(3, 10), Ring::zmodpk(2, 6), Ring::fpt(2, 80)}) {
        for (int it = 0; it < 30; ++it) {
            const Series f = oracle::random_series_with_index(rng, R, 40, 0);
            const Series g = oracle::random_series_with_index(rng, R, 40, 3);
            EXPECT_EQ(series_mul(f, g).coeffs(), oracle::naive_series_mul(R, f.coeffs(), g.coeffs(), 40));
        }
    }
}

TEST(SeriesArithmetic, InverseTimesSeriesIsOne) {
    oracle::Rng rng(22);
    for (const Ring& R : {Ring::zp(5, 12), Ring::fpt(3, 10), Ring::zmodpk(2, 6), Ring::zmodpk(7, 1)}) {
        for (int it = 0; it < 50; ++it) {
            const Series f = oracle::random_series_with_index(rng, R, 40, 0);
            const Coeffs prod = oracle::naive_series_mul(R, f.coeffs(), series_invert(f).coeffs(), 40);
            for (std::size_t i = 0; i < 40; ++i) EXPECT_EQ(prod[i], i == 0 ? R.one() : R.zero());
        }
        EXPECT_PREPKIT_ERROR(series_invert(oracle::random_series_with_index(rng, R, 10, 1)), NotAUnitSeries);
    }
    const Ring Z = Ring::exact_z();
    const Series one_minus_x = Series::from_ints(Z, {1, -1}, 12);
    const Series geometric = series_invert(one_minus_x);
    for (const auto& c : geometric.coeffs()) EXPECT_EQ(c.z(), 1);
    EXPECT_PREPKIT_ERROR(series_invert(Series::from_ints(Z, {2, 1}, 5)), NotAUnitSeries);
}

TEST(SeriesArithmetic, CompositionMatchesDefinition) {
    oracle::Rng rng(23);
    for (const Ring& R : {Ring::zp(5, 12), Ring::fpt(3, 10), Ring::exact_z()}) {
        for (int it = 0; it < 20; ++it) {
            Coeffs fc, gc;
            for (int i = 0; i < 24; ++i) {
                fc.push_back(R.from_int(oracle::uniform_signed(rng, -4, 4)));
                gc.push_back(i == 0 ? R.zero() : R.from_int(oracle::uniform_signed(rng, -4, 4)));
            }
            const Series f(R, fc), g(R, gc);
            EXPECT_EQ(compose(f, g).coeffs(), naive_compose(R, fc, gc, 24));
            EXPECT_EQ(compose(f, identity(R, 24)), f);
        }
        EXPECT_PREPKIT_ERROR(compose(Series::from_ints(R, {1, 1}, 4), Series::from_ints(R, {1, 1}, 4)), NonzeroConstantInner);
    }
    EXPECT_PREPKIT_ERROR(series_mul(Series::from_ints(Ring::zp(5, 3), {1}, 3), Series::from_ints(Ring::zp(5, 4), {1}, 3)),
                         RingMismatch);
}

TEST(SeriesArithmetic, DerivativeAndEvaluation) {
    const Ring R = Ring::zp(5, 6);
    const Series f = Series::from_ints(R, {1, 1, 1}, 3);
    EXPECT_EQ(derivative(f).coeffs(), (Coeffs{R.from_int(1), R.from_int(2)}));
    // f(5) = 31 mod 5^6.
    EXPECT_EQ(evaluate(Series::from_ints(R, {1, 1, 1}, 6), R.from_int(5), 6).z(), 31);
    EXPECT_PREPKIT_ERROR(evaluate(f, R.from_int(2), 6), PointNotSmall);
    EXPECT_PREPKIT_ERROR(evaluate(f, R.from_int(5), 7), PrecisionTooLow);
    // a = 5 with target 6 needs coefficients up to index 5.
    EXPECT_PREPKIT_ERROR(evaluate(Series::from_ints(R, {0, 1}, 2), R.from_int(5), 6), InsufficientXPrecision);
}

TEST(CompositionalInverse, CatalanGolden) {
    // g(x) = x - x^2 + 2x^3 - 5x^4 + ... inverts x + x^2; coefficients are
    // signed Catalan numbers computed here from binomials.
    const Ring Z = Ring::exact_z();
    const std::size_t M = 30;
    const Series g = comp_inverse(Series::from_ints(Z, {0, 1, 1}, M));
    EXPECT_EQ(g[0].z(), 0);
    for (std::size_t n = 1; n < M; ++n) {
        BigInt c;
        mpz_bin_uiui(c.get_mpz_t(), 2 * (n - 1), n - 1);
        c /= n;
        EXPECT_EQ(g[n].z(), (n % 2 == 1) ? c : BigInt(-c)) << n;
    }
    EXPECT_EQ(comp_inverse_left(Series::from_ints(Z, {0, 1, 1}, M)), g);
}

TEST(CompositionalInverse, RoundTripsOverIntegersAndF7) {
    oracle::Rng rng(24);
    const std::size_t M = 64;
    int checked = 0;
    for (const Ring& R : {Ring::exact_z(), Ring::zmodpk(7, 1)}) {
        for (int it = 0; it < 200; ++it) {
            const Series f = random_normalized(rng, R, M, R.is_exact() ? 2 : 3);
            const Series g = comp_inverse(f);
            const Series x = identity(R, M);
            EXPECT_EQ(compose(f, g), x);
            EXPECT_EQ(compose(g, f), x);
            if (it % 20 == 0) {
                EXPECT_EQ(naive_compose(R, f.coeffs(), g.coeffs(), M), x.coeffs());
                EXPECT_EQ(comp_inverse_left(f), g);
            }
            ++checked;
        }
    }
    EXPECT_EQ(checked, 400);
}

TEST(CompositionalInverse, RejectsUnnormalizedInput) {
    const Ring Z = Ring::exact_z();
    EXPECT_PREPKIT_ERROR(comp_inverse(Series::from_ints(Z, {0, 2, 1}, 8)), BadNormalization);
    EXPECT_PREPKIT_ERROR(comp_inverse(Series::from_ints(Z, {1, 1}, 8)), BadNormalization);
    EXPECT_PREPKIT_ERROR(comp_inverse(Series::from_ints(Z, {0}, 1)), WindowTooSmall);
}

TEST(Rationality, PeriodicDetectorMatchesDefinitionOnAllWindows) {
    // Every 0/1 window of length 16 against the brute-force (s, d) search.
    for (std::uint32_t w = 0; w < (1u << 16); ++w) {
        std::vector<int> a(16);
        for (std::size_t i = 0; i < 16; ++i) a[i] = static_cast<int>((w >> i) & 1u);
        const auto v = detect_periodic_01([&](std::size_t i) { return a[i]; }, 16);
        const auto ref = oracle::brute_periodic(a);
        ASSERT_EQ(v.rational, ref.has_value()) << w;
        if (ref) {
            ASSERT_EQ(v.preperiod, ref->first) << w;
            ASSERT_EQ(v.period, ref->second) << w;
        }
    }
}

TEST(Rationality, PeriodicDetectorErrors) {
    EXPECT_PREPKIT_ERROR(detect_periodic_01([](std::size_t) { return 2; }, 8), NonBinaryCoefficient);
    EXPECT_PREPKIT_ERROR(detect_periodic_01([](std::size_t) { return 0; }, 3), WindowTooSmall);
}

TEST(Rationality, RecurrencesOverIntegersAndPrimeFields) {
    const Ring Z = Ring::exact_z();
    std::vector<long> fib = {0, 1};
    while (fib.size() < 40) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
    const Series F = Series::from_ints(Z, fib, 40);
    const auto v = detect_recurrence(F, 6);
    ASSERT_TRUE(v.rational);
    EXPECT_EQ(v.period, 2u);
    EXPECT_EQ(v.preperiod, 0u);
    EXPECT_EQ(v.q, (std::vector<BigRat>{1, -1, -1}));
    EXPECT_TRUE(recurrence_holds(F, v));

    // 5 + x/(1-x): preperiod 1, period 1.
    std::vector<long> tail(30, 1);
    tail[0] = 5;
    const auto w = detect_recurrence(Series::from_ints(Z, tail, 30), 4);
    ASSERT_TRUE(w.rational);
    EXPECT_EQ(w.preperiod, 1u);
    EXPECT_EQ(w.period, 1u);

    // (n+1)(n+2)/2 has minimal order 3.
    std::vector<long> tri;
    for (long n = 0; n < 30; ++n) tri.push_back((n + 1) * (n + 2) / 2);
    EXPECT_EQ(detect_recurrence(Series::from_ints(Z, tri, 30), 5).period, 3u);

    const Ring F5 = Ring::zmodpk(5, 1);
    const Series Fib5 = Series::from_ints(F5, fib, 40);
    const auto u = detect_recurrence(Fib5, 6);
    ASSERT_TRUE(u.rational);
    EXPECT_EQ(u.q, (std::vector<BigRat>{1, 4, 4}));
    EXPECT_TRUE(recurrence_holds(Fib5, u));
}

TEST(Rationality, RandomSequencesHaveNoShortRecurrence) {
    oracle::Rng rng(25);
    const Ring F7 = Ring::zmodpk(7, 1);
    for (int it = 0; it < 50; ++it) {
        std::vector<long> a;
        for (int i = 0; i < 40; ++i) a.push_back(oracle::uniform_signed(rng, 0, 6));
        EXPECT_FALSE(detect_recurrence(Series::from_ints(F7, a, 40), 5).rational);
    }
    EXPECT_PREPKIT_ERROR(detect_recurrence(Series::from_ints(Ring::zp(5, 3), {1}, 20), 3), UnsupportedRing);
    EXPECT_PREPKIT_ERROR(detect_recurrence(Series::from_ints(Ring::exact_z(), {1}, 5), 3), WindowTooSmall);
}
