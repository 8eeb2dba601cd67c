/**
 * @file test_rings.cpp
 * @brief Coefficient rings, big-integer helpers and F_p[t] arithmetic against
 *        naive modular oracles.
 */

#include <gtest/gtest.h>

#include "prepkit/bigint.hpp"
#include "prepkit/fp_poly.hpp"
#include "prepkit/rings.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"

using namespace prepkit;

namespace {

std::vector<std::uint32_t> random_digits(oracle::Rng& rng, std::uint64_t p, std::size_t n) {
    std::vector<std::uint32_t> d(n);
    for (auto& x : d) x = static_cast<std::uint32_t>(oracle::uniform(rng, 0, p - 1));
    return d;
}

bool trial_division_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST(BigIntHelpers, PrimalityMatchesTrialDivision) {
    for (unsigned long n = 0; n < 3000; ++n) EXPECT_EQ(is_prime(BigInt(n)), trial_division_prime(n)) << n;
}

TEST(BigIntHelpers, ValuationAndFloorMod) {
    EXPECT_EQ(valuation_p(BigInt(96), BigInt(2)), 5u);
    EXPECT_EQ(valuation_p(BigInt(-250), BigInt(5)), 3u);
    EXPECT_EQ(mod_floor(BigInt(-7), BigInt(5)), 3);
    EXPECT_EQ(mod_floor(BigInt(7), BigInt(5)), 2);
    EXPECT_EQ(bit_length(BigInt(1) << 100), 101u);
    EXPECT_EQ(parse_bigint("-123456789012345678901234567890").get_str(), "-123456789012345678901234567890");
    EXPECT_EQ(to_decimal(parse_bigrat("6/4")), "3/2");
}

TEST(RingConstruction, RejectsBadDescriptors) {
    EXPECT_PREPKIT_ERROR(Ring::zp(6, 3), CompositeModulus);
    EXPECT_PREPKIT_ERROR(Ring::fpt(1, 3), CompositeModulus);
    EXPECT_PREPKIT_ERROR(Ring::zmodpk(9, 2), CompositeModulus);
    EXPECT_PREPKIT_ERROR(Ring::zp(5, 0), BadPrecision);
    EXPECT_PREPKIT_ERROR(Ring::fpt(3, 0), BadPrecision);
    EXPECT_NO_THROW(Ring::exact_z());
    EXPECT_EQ(Ring::zp(5, 3).modulus(), 125);
}

TEST(RingConstruction, FlagsAndPrecisionChange) {
    EXPECT_EQ(Ring::zp(5, 3).flag(), "zp:5:3");
    EXPECT_EQ(Ring::fpt(3, 10).flag(), "fpt:3:10");
    EXPECT_EQ(Ring::zmodpk(2, 6).flag(), "zmodpk:2:6");
    EXPECT_EQ(Ring::zp(5, 3).with_precision(7), Ring::zp(5, 7));
    EXPECT_TRUE(Ring::zmodpk(7, 1).is_prime_field());
    EXPECT_FALSE(Ring::zmodpk(7, 2).is_prime_field());
}

TEST(RingArithmetic, ResidueRingsMatchBigIntModulo) {
    oracle::Rng rng(11);
    for (const Ring& R : {Ring::zp(5, 12), Ring::zmodpk(2, 6), Ring::zp(7, 3), Ring::zmodpk(3, 5)}) {
        const BigInt m = R.modulus();
        for (int it = 0; it < 500; ++it) {
            const Elem a = oracle::random_elem(rng, R), b = oracle::random_elem(rng, R);
            const BigInt ra = oracle::residue(R, a), rb = oracle::residue(R, b);
            EXPECT_EQ(oracle::residue(R, R.add(a, b)), mod_floor(ra + rb, m));
            EXPECT_EQ(oracle::residue(R, R.sub(a, b)), mod_floor(ra - rb, m));
            EXPECT_EQ(oracle::residue(R, R.mul(a, b)), mod_floor(ra * rb, m));
            EXPECT_EQ(oracle::residue(R, R.neg(a)), mod_floor(-ra, m));
            BigInt pw;
            mpz_powm_ui(pw.get_mpz_t(), ra.get_mpz_t(), 13, m.get_mpz_t());
            EXPECT_EQ(oracle::residue(R, R.pow(a, BigInt(13))), pw);
        }
        EXPECT_EQ(R.from_int(-1), R.sub(R.zero(), R.one()));
    }
}

TEST(RingArithmetic, PowerSeriesRingMatchesTruncatedConvolution) {
    oracle::Rng rng(12);
    for (const Ring& R : {Ring::fpt(3, 10), Ring::fpt(2, 70), Ring::fpt(2, 200), Ring::fpt(7, 5)}) {
        for (int it = 0; it < 300; ++it) {
            const Elem a = oracle::random_elem(rng, R), b = oracle::random_elem(rng, R);
            const auto prod = oracle::fp_mul(oracle::digits_of(a.t(), R.prec()), oracle::digits_of(b.t(), R.prec()), R.p(), R.prec());
            EXPECT_EQ(oracle::digits_of(R.mul(a, b).t(), R.prec()), prod);
            for (std::size_t i = 0; i < R.prec(); ++i)
                EXPECT_EQ(R.add(a, b).t()[i], (a.t()[i] + b.t()[i]) % R.p());
        }
    }
}

TEST(RingArithmetic, UnitsInvertAndNonUnitsRaise) {
    oracle::Rng rng(13);
    for (const Ring& R : {Ring::zp(5, 12), Ring::fpt(3, 10), Ring::zmodpk(2, 6), Ring::fpt(2, 130)}) {
        for (int it = 0; it < 200; ++it) {
            const Elem u = oracle::random_unit(rng, R);
            EXPECT_EQ(R.mul(u, R.invert_unit(u)), R.one());
            const Elem n = oracle::random_nonunit(rng, R);
            EXPECT_FALSE(R.is_unit(n));
            EXPECT_PREPKIT_ERROR(R.invert_unit(n), NotAUnit);
        }
    }
}

TEST(RingArithmetic, ValuationDecompositionRecomposes) {
    oracle::Rng rng(14);
    for (const Ring& R : {Ring::zp(5, 12), Ring::fpt(3, 10), Ring::zmodpk(2, 6)}) {
        EXPECT_FALSE(R.valuation(R.zero()).has_value());
        for (int it = 0; it < 300; ++it) {
            Elem r = R.mul(R.uniformizer_pow(oracle::uniform(rng, 0, R.prec() - 1)), oracle::random_unit(rng, R));
            const auto vu = R.val_unit_decompose(r);
            EXPECT_TRUE(R.is_unit(vu.u));
            EXPECT_EQ(R.mul(R.uniformizer_pow(vu.v), vu.u), r);
            // Independent valuation: p-adic order of the residue, or t-order.
            const std::size_t expect = R.is_poly_kind() ? r.t().low_order()
                                                        : valuation_p(oracle::residue(R, r), BigInt(static_cast<unsigned long>(R.p())));
            EXPECT_EQ(*R.valuation(r), expect);
        }
        EXPECT_PREPKIT_ERROR(R.val_unit_decompose(R.zero()), ZeroAtPrecision);
    }
}

TEST(RingArithmetic, ExactRingsAndConversion) {
    const Ring Z = Ring::exact_z();
    EXPECT_EQ(Z.mul(Z.from_int(-12), Z.from_int(7)).z(), -84);
    const Ring Zp = Ring::zp(5, 3);
    EXPECT_EQ(Zp.from_bigint(BigInt(-1)).z(), 124);
    EXPECT_EQ(Zp.convert(Ring::zp(5, 6).from_int(3126), Ring::zp(5, 6)).z(), 1);
    EXPECT_PREPKIT_ERROR(Zp.convert(Z.from_int(1), Z), RingMismatch);
    const Ring F = Ring::exact_fpt(3);
    const Elem t2 = F.mul(F.uniformizer_pow(1), F.uniformizer_pow(1));
    EXPECT_EQ(t2.t().degree(), 2);
    const Ring Ft = Ring::fpt(3, 2);
    EXPECT_TRUE(Ft.is_zero(Ft.from_tpoly(t2.t())));
    EXPECT_TRUE(Ft.is_zero(Ft.convert(Ring::fpt(3, 5).from_tpoly(t2.t()), Ring::fpt(3, 5))));
    EXPECT_EQ(Zp.to_string(Zp.from_int(7)), "7");
}

TEST(RingArithmetic, AccumulatorMatchesSequentialSums) {
    oracle::Rng rng(15);
    for (const Ring& R : {Ring::zp(5, 12), Ring::fpt(2, 90), Ring::fpt(5, 7)}) {
        for (int it = 0; it < 50; ++it) {
            Ring::Accumulator acc(R);
            Elem ref = R.zero();
            for (int k = 0; k < 40; ++k) {
                const Elem a = oracle::random_elem(rng, R), b = oracle::random_elem(rng, R);
                if (k % 3 == 0) {
                    acc.submul(a, b);
                    ref = R.sub(ref, R.mul(a, b));
                } else {
                    acc.addmul(a, b);
                    ref = R.add(ref, R.mul(a, b));
                }
            }
            EXPECT_EQ(acc.value(), ref);
        }
    }
}

TEST(FpPolyArithmetic, ProductsMatchSchoolbookIncludingBinaryFastPaths) {
    oracle::Rng rng(16);
    const std::vector<std::pair<std::uint32_t, std::size_t>> cases = {{2, 5}, {2, 40}, {2, 64}, {2, 65}, {2, 150}, {2, 400},
                                                                      {3, 30}, {5, 60}, {65521, 20}, {2147483647, 12}};
    for (auto [p, n] : cases) {
        for (int it = 0; it < 40; ++it) {
            const auto da = random_digits(rng, p, oracle::uniform(rng, 1, n));
            const auto db = random_digits(rng, p, oracle::uniform(rng, 1, n));
            const FpPoly a(p, da), b(p, db);
            std::vector<std::uint64_t> wa(da.begin(), da.end()), wb(db.begin(), db.end());
            const std::size_t full = da.size() + db.size();
            auto naive = oracle::fp_mul(wa, wb, p, full);
            if (p > 65536) {
                // Schoolbook oracle above may overflow for large p; recompute in GMP.
                std::vector<BigInt> acc(full, 0);
                for (std::size_t i = 0; i < da.size(); ++i)
                    for (std::size_t j = 0; j < db.size(); ++j) acc[i + j] += BigInt(da[i]) * BigInt(db[j]);
                for (std::size_t i = 0; i < full; ++i) naive[i] = mod_floor(acc[i], BigInt(p)).get_ui();
            }
            EXPECT_EQ(oracle::digits_of(a * b, full), naive) << "p=" << p;
            const std::size_t cut = oracle::uniform(rng, 1, full);
            EXPECT_EQ(oracle::digits_of(FpPoly::mul_trunc(a, b, cut), full),
                      [&] {
                          auto v = naive;
                          for (std::size_t i = cut; i < v.size(); ++i) v[i] = 0;
                          return v;
                      }())
                << "p=" << p << " cut=" << cut;
        }
    }
}

TEST(FpPolyArithmetic, DivisionIdentityAndGcd) {
    oracle::Rng rng(17);
    for (std::uint32_t p : {2u, 3u, 5u, 101u}) {
        for (int it = 0; it < 200; ++it) {
            const FpPoly a(p, random_digits(rng, p, oracle::uniform(rng, 1, 150)));
            FpPoly b(p, random_digits(rng, p, oracle::uniform(rng, 1, 90)));
            if (b.is_zero()) b = FpPoly::constant(p, 1);
            const auto [q, r] = FpPoly::divmod(a, b);
            EXPECT_EQ(q * b + r, a);
            EXPECT_LT(r.degree(), b.degree());
            EXPECT_EQ(FpPoly::divexact(a * b, b), a);
            const FpPoly c(p, random_digits(rng, p, 4));
            if (!c.is_zero()) {
                const FpPoly g = FpPoly::gcd(a * c, b * c);
                EXPECT_TRUE(FpPoly::divmod(g, c).second.is_zero());
                EXPECT_TRUE(FpPoly::divmod(a * c, g).second.is_zero());
            }
        }
    }
}

TEST(FpPolyArithmetic, EvaluationDerivativeAndPrinting) {
    const FpPoly f(5, {1, 0, 3, 4});  // 1 + 3t^2 + 4t^3
    for (std::uint32_t x = 0; x < 5; ++x) EXPECT_EQ(f.eval(x), (1 + 3 * x * x + 4 * x * x * x) % 5);
    EXPECT_EQ(f.derivative(), FpPoly(5, {0, 6, 12}));
    EXPECT_EQ(FpPoly(2, {1, 1}).to_string('t'), "t + 1");
    EXPECT_EQ(FpPoly::constant(7, -1)[0], 6u);
    EXPECT_EQ(FpPoly(3).degree(), -1);
    EXPECT_EQ(FpPoly(5, {0, 0, 2}).low_order(), 2u);
    EXPECT_EQ(FpPoly(5, {0, 0, 2}).shifted_down(2), FpPoly::constant(5, 2));
    EXPECT_EQ(FpPoly::constant(5, 2).shifted_up(3), FpPoly(5, {0, 0, 0, 2}));
}
