/**
 * @file test_weierstrass.cpp
 * @brief Weierstrass division, preparation and strong factorization.
 */

#include <gtest/gtest.h>

#include "prepkit/weierstrass.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"

using namespace prepkit;

namespace {

/// pi^v * P * U, multiplied out naively on the window of U.
Coeffs naive_product(const WFactorization& w) {
    const Ring& R = w.ring;
    const std::size_t M = w.U.precision();
    Coeffs prod = oracle::naive_series_mul(R, w.P, w.U.coeffs(), M);
    const Elem pv = R.uniformizer_pow(w.v);
    for (auto& c : prod) c = R.mul(c, pv);
    return prod;
}

}  // namespace

TEST(Preparation, GoldenQuadraticOverZ5) {
    const Ring R = Ring::zp(5, 3);
    const Series f = Series::from_ints(R, {5, 1, 1}, 10);
    const auto w = prepare(f);
    EXPECT_EQ(w.n, 1u);
    ASSERT_EQ(w.P.size(), 2u);
    EXPECT_EQ(w.P[0].z(), 30);
    EXPECT_EQ(w.P[1].z(), 1);
    EXPECT_EQ(naive_product(w), f.coeffs());
    // 30 is the root of x^2 + x + 5 near 0 mod 125, negated.
    EXPECT_EQ(mod_floor(BigInt(-30) * BigInt(-30) - 30 + 5, BigInt(125)), 0);
}

TEST(Preparation, RandomRoundTripsAndScheduleAgreement) {
    oracle::Rng rng(31);
    struct Case {
        Ring R;
        const char* name;
    };
    const std::vector<Case> cases = {{Ring::zp(5, 12), "zp:5:12"}, {Ring::fpt(3, 10), "fpt:3:10"}, {Ring::zmodpk(2, 6), "zmodpk:2:6"}};
    const std::size_t M = 40;
    for (const auto& c : cases) {
        int passed = 0;
        for (int it = 0; it < 500; ++it) {
            const std::size_t n = oracle::uniform(rng, 0, 5);
            const Series f = oracle::random_series_with_index(rng, c.R, M, n);
            ASSERT_EQ(reduction_index(f), n);
            const auto fw = prepare(f, Schedule::Forward);
            const auto ws = prepare(f, Schedule::WarmStart);
            ASSERT_EQ(fw.n, n);
            for (std::size_t i = 0; i < n; ++i) EXPECT_FALSE(c.R.is_unit(fw.P[i])) << c.name;
            EXPECT_EQ(fw.P.back(), c.R.one());
            EXPECT_TRUE(c.R.is_unit(fw.U[0]));
            EXPECT_EQ(fw.P, ws.P) << c.name << " case " << it;
            EXPECT_EQ(fw.U, ws.U) << c.name << " case " << it;
            const Coeffs back = naive_product(fw);
            EXPECT_EQ(back, f.coeffs()) << c.name << " case " << it;
            if (back == f.coeffs() && fw.P == ws.P && fw.U == ws.U) ++passed;
        }
        EXPECT_EQ(passed, 500) << c.name;
    }
}

TEST(Preparation, DivisionIdentity) {
    oracle::Rng rng(32);
    for (const Ring& R : {Ring::zp(5, 8), Ring::fpt(2, 12)}) {
        for (int it = 0; it < 60; ++it) {
            const std::size_t n = oracle::uniform(rng, 1, 4);
            const Series f = oracle::random_series_with_index(rng, R, 30, n);
            const Series g = oracle::random_series_with_index(rng, R, 30, 0);
            for (Schedule s : {Schedule::Forward, Schedule::WarmStart}) {
                const auto d = weierstrass_divide(g, f, s);
                ASSERT_EQ(d.r.size(), n);
                Coeffs rhs = oracle::naive_series_mul(R, d.q.coeffs(), f.coeffs(), 30);
                for (std::size_t i = 0; i < n; ++i) rhs[i] = R.add(rhs[i], d.r[i]);
                EXPECT_EQ(rhs, g.coeffs());
            }
        }
    }
}

TEST(Preparation, Errors) {
    const Ring R = Ring::zp(5, 3);
    EXPECT_PREPKIT_ERROR(prepare(Series::from_ints(R, {5, 10, 25}, 3)), NoUnitCoefficient);
    EXPECT_PREPKIT_ERROR(prepare(Series::from_ints(Ring::exact_z(), {1, 1}, 3)), UnsupportedRing);
    EXPECT_PREPKIT_ERROR(strong_factor(Series::from_ints(R, {125, 0}, 3)), ZeroAtPrecision);
}

TEST(StrongFactorization, GoldenOverZ8) {
    const Ring R = Ring::zmodpk(2, 3);
    const Series f = Series::from_ints(R, {4, 2}, 6);
    const auto w = strong_factor(f);
    EXPECT_EQ(w.v, 1u);
    EXPECT_EQ(w.n, 1u);
    ASSERT_EQ(w.P.size(), 2u);
    EXPECT_EQ(w.P[0].z(), 2);
    EXPECT_EQ(w.P[1].z(), 1);
    for (std::size_t i = 0; i < w.U.precision(); ++i) EXPECT_EQ(w.U[i].z(), i == 0 ? 1 : 0);
    EXPECT_EQ(naive_product(w), f.coeffs());
}

TEST(StrongFactorization, RandomRoundTrips) {
    oracle::Rng rng(33);
    int passed = 0;
    for (int it = 0; it < 500; ++it) {
        const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5}[oracle::uniform(rng, 0, 2)];
        const std::size_t k = oracle::uniform(rng, 2, 6);
        const std::size_t v = oracle::uniform(rng, 0, k - 1);
        const std::size_t n = oracle::uniform(rng, 0, 4);
        const Ring R = Ring::zmodpk(p, k);
        const Series g = oracle::random_series_with_index(rng, R, 20, n);
        const Series f = series_scale(g, R.uniformizer_pow(v));
        const auto w = strong_factor(f);
        ASSERT_EQ(w.v, v);
        ASSERT_EQ(w.P.size(), w.n + 1);
        EXPECT_EQ(w.P.back(), R.one());
        // P is Weierstrass over Z/p^(k-v): every lower coefficient divisible by p.
        for (std::size_t i = 0; i < w.n; ++i) EXPECT_EQ(oracle::residue(R, w.P[i]) % p, 0) << it;
        EXPECT_EQ(oracle::residue(R, w.U[0]) % p == 0, false);
        const bool ok = naive_product(w) == f.coeffs() && roundtrip_ok(f, w);
        EXPECT_TRUE(ok) << "p=" << p << " k=" << k << " v=" << v;
        if (ok) ++passed;
    }
    EXPECT_EQ(passed, 500);
}
