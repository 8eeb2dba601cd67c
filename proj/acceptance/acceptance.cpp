/**
 * @file acceptance.cpp
 * @brief End-to-end acceptance run: one PASS/FAIL line per criterion.
 *
 * Each check recomputes its expected values with the naive oracles in
 * tests/support rather than trusting the library's own cross-checks.
 * The exit status is the number of failed criteria.
 */

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "prepkit/cli.hpp"
#include "support/oracles.hpp"

using namespace prepkit;

namespace {

constexpr std::size_t kK = 600;
constexpr std::size_t kBits = 1000000;

/// Collects the first few reasons a criterion did not hold.
class Check {
public:
    void require(bool cond, const std::string& what) {
        if (cond) return;
        if (failures_ < 5) notes_ += (notes_.empty() ? "" : "; ") + what;
        ++failures_;
    }
    bool ok() const { return failures_ == 0; }
    std::string notes() const { return notes_ + (failures_ > 5 ? " (+" + std::to_string(failures_ - 5) + " more)" : ""); }

private:
    std::size_t failures_ = 0;
    std::string notes_;
};

Coeffs naive_product(const WFactorization& w) {
    const Ring& R = w.ring;
    Coeffs prod = oracle::naive_series_mul(R, w.P, w.U.coeffs(), w.U.precision());
    const Elem pv = R.uniformizer_pow(w.v);
    for (auto& c : prod) c = R.mul(c, pv);
    return prod;
}

Coeffs naive_compose(const Ring& R, const Coeffs& f, const Coeffs& g, std::size_t M) {
    Coeffs acc(M, R.zero()), gp(M, R.zero());
    gp[0] = R.one();
    for (std::size_t i = 0; i < M && i < f.size(); ++i) {
        for (std::size_t k = 0; k < M; ++k) acc[k] = R.add(acc[k], R.mul(f[i], gp[k]));
        gp = oracle::naive_series_mul(R, gp, g, M);
    }
    return acc;
}

// ---- criterion 1 --------------------------------------------------------------

void weierstrass_roundtrip(Check& c) {
    const Ring R5 = Ring::zp(5, 3);
    const auto golden = prepare(Series::from_ints(R5, {5, 1, 1}, 10));
    c.require(golden.P == Coeffs{R5.from_int(30), R5.one()}, "prepare(5+x+x^2) over zp:5:3 is not x+30");

    oracle::Rng rng(101);
    for (const Ring& R : {Ring::zp(5, 12), Ring::fpt(3, 10), Ring::zmodpk(2, 6)}) {
        for (int it = 0; it < 500; ++it) {
            const std::size_t n = oracle::uniform(rng, 0, 5);
            const Series f = oracle::random_series_with_index(rng, R, 40, n);
            const auto fw = prepare(f, Schedule::Forward);
            const auto ws = prepare(f, Schedule::WarmStart);
            c.require(fw.n == n, R.flag() + ": wrong reduction index");
            c.require(fw.P == ws.P && fw.U == ws.U, R.flag() + ": schedules differ");
            c.require(naive_product(fw) == f.coeffs(), R.flag() + ": P*U != f");
            c.require(fw.P.back() == R.one() && R.is_unit(fw.U[0]), R.flag() + ": P not monic or U not a unit");
            for (std::size_t i = 0; i < n; ++i) c.require(!R.is_unit(fw.P[i]), R.flag() + ": P is not Weierstrass");
        }
    }
}

// ---- criterion 2 --------------------------------------------------------------

void strong_factorization(Check& c) {
    const Ring Z8 = Ring::zmodpk(2, 3);
    const Series f = Series::from_ints(Z8, {4, 2}, 6);
    const auto w = strong_factor(f);
    bool unit_one = true;
    for (std::size_t i = 0; i < w.U.precision(); ++i) unit_one = unit_one && w.U[i].z() == (i == 0 ? 1 : 0);
    c.require(w.v == 1 && w.P == Coeffs{Z8.from_int(2), Z8.one()} && unit_one, "4+2x over Z/8 is not 2*(x+2)*1");

    oracle::Rng rng(102);
    for (int it = 0; it < 500; ++it) {
        const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5}[oracle::uniform(rng, 0, 2)];
        const std::size_t k = oracle::uniform(rng, 2, 6);
        const std::size_t v = oracle::uniform(rng, 0, k - 1);
        const Ring R = Ring::zmodpk(p, k);
        const Series g = series_scale(oracle::random_series_with_index(rng, R, 20, oracle::uniform(rng, 0, 4)),
                                      R.uniformizer_pow(v));
        const auto s = strong_factor(g);
        c.require(s.v == v && s.v < k, "wrong unit-stripping exponent");
        c.require(naive_product(s) == g.coeffs(), "strong factorization does not multiply back");
        for (std::size_t i = 0; i < s.n; ++i) c.require(oracle::residue(R, s.P[i]) % p == 0, "P is not Weierstrass");
    }
}

// ---- criterion 3 --------------------------------------------------------------

void compositional_inverse(Check& c) {
    const Ring Z = Ring::exact_z();
    const Series g = comp_inverse(Series::from_ints(Z, {0, 1, 1}, 7));
    const std::vector<long> want = {0, 1, -1, 2, -5, 14, -42};
    for (std::size_t i = 0; i < want.size(); ++i) c.require(g[i].z() == want[i], "inverse of x+x^2 coefficient " + std::to_string(i));

    oracle::Rng rng(103);
    const std::size_t M = 64;
    for (const Ring& R : {Ring::exact_z(), Ring::zmodpk(7, 1)}) {
        const Series x = Series::x(R, M);
        for (int it = 0; it < 200; ++it) {
            Coeffs fc(M, R.zero());
            fc[1] = R.one();
            for (std::size_t i = 2; i < M; ++i) fc[i] = R.from_int(oracle::uniform_signed(rng, -3, 3));
            const Series f(R, fc);
            const Series inv = comp_inverse(f);
            c.require(compose(f, inv) == x && compose(inv, f) == x, R.flag() + ": roundtrip");
            if (it % 25 == 0) c.require(naive_compose(R, fc, inv.coeffs(), M) == x.coeffs(), R.flag() + ": naive roundtrip");
        }
    }
}

// ---- criterion 4 --------------------------------------------------------------

long oracle_res(oracle::Fp f, oracle::Fp g, long p) {
    oracle::trim(f);
    oracle::trim(g);
    if (f.empty() || g.empty()) return 0;
    auto pw = [p](long b, std::size_t e) {
        long r = 1;
        for (std::size_t i = 0; i < e; ++i) r = r * b % p;
        return r;
    };
    if (f.size() == 1) return pw(f[0], g.size() - 1);
    if (g.size() == 1) return pw(g[0], f.size() - 1);
    return oracle::fp_resultant_norm(f, g, p);
}

void resultants(Check& c) {
    for (long p : {2L, 3L, 5L}) {
        const long count = p * p * p * p;
        auto decode = [p](long code) {
            oracle::Fp v(4);
            for (auto& x : v) {
                x = code % p;
                code /= p;
            }
            return v;
        };
        auto lift = [p](const oracle::Fp& v) {
            std::vector<FpPoly> cs;
            for (long x : v) cs.push_back(FpPoly::constant(static_cast<std::uint32_t>(p), x));
            return TPoly(std::move(cs), FpPoly(static_cast<std::uint32_t>(p)));
        };
        for (long a = 0; a < count; ++a) {
            const oracle::Fp f = decode(a);
            const TPoly F = lift(f);
            for (long b = 0; b < count; ++b) {
                const oracle::Fp g = decode(b);
                const TPoly G = lift(g);
                if (F.degree() < 1 && G.degree() < 1) continue;
                const FpPoly r = resultant(F, G);
                const long got = r.is_zero() ? 0 : static_cast<long>(r[0]);
                oracle::Fp ft = f, gt = g;
                oracle::trim(ft);
                oracle::trim(gt);
                const bool common = ft.empty() || gt.empty() || oracle::fp_gcd(ft, gt, p).size() > 1;
                c.require(r.degree() <= 0 && got == oracle_res(f, g, p), "F_" + std::to_string(p) + " root-product mismatch");
                c.require((got == 0) == common, "F_" + std::to_string(p) + " gcd zero-test mismatch");
            }
        }
    }
    c.require(resultant(make_zpoly({1, 0, 1}), make_zpoly({-1, 1})) == 2, "Res(x^2+1, x-1) != 2");

    oracle::Rng rng(104);
    auto rz = [&](long deg) {
        std::vector<BigInt> v;
        for (long i = 0; i <= deg; ++i) v.emplace_back(oracle::uniform_signed(rng, -20, 20));
        while (v.back() == 0) v.back() = oracle::uniform_signed(rng, 1, 20);
        return ZPoly(std::move(v), BigInt(0));
    };
    for (int it = 0; it < 1000; ++it) {
        const ZPoly f = rz(oracle::uniform_signed(rng, 1, 5)), g = rz(oracle::uniform_signed(rng, 1, 5));
        const auto rep = hadamard_check(f, g);
        BigInt sf = 0, sg = 0;
        for (const auto& x : f.coeffs()) sf += x * x;
        for (const auto& x : g.coeffs()) sg += x * x;
        const BigInt rhs = pow(sf, static_cast<unsigned long>(g.degree())) * pow(sg, static_cast<unsigned long>(f.degree()));
        c.require(rep.bound_ok && rep.B * rep.B <= rhs, "Hadamard violation");
        c.require(rep.B == oracle::z_resultant_norm(f.coeffs(), g.coeffs()), "integer resultant mismatch");
    }
    for (int it = 0; it < 1000; ++it) {
        const std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5}[oracle::uniform(rng, 0, 2)];
        auto rt = [&](long deg) {
            std::vector<FpPoly> v;
            for (long i = 0; i <= deg; ++i) {
                std::vector<std::uint32_t> d(oracle::uniform(rng, 1, 4));
                for (auto& x : d) x = static_cast<std::uint32_t>(oracle::uniform(rng, 0, p - 1));
                v.emplace_back(p, d);
            }
            if (v.back().is_zero()) v.back() = FpPoly::constant(p, 1);
            return TPoly(std::move(v), FpPoly(p));
        };
        const TPoly f = rt(oracle::uniform_signed(rng, 1, 3)), g = rt(oracle::uniform_signed(rng, 1, 3));
        const auto rep = tdegree_check(f, g);
        const long bound = max_tdegree(f) * g.degree() + max_tdegree(g) * f.degree();
        c.require(rep.bound_ok && (rep.B.is_zero() || rep.B.degree() <= bound), "t-degree violation");
    }
}

// ---- criterion 5 --------------------------------------------------------------

bool doubles(const HenselResult& h) {
    if (h.trace.empty() || h.trace.front() <= 2 * h.e || h.trace.back() != h.working_precision) return false;
    for (std::size_t j = 0; j + 1 < h.trace.size(); ++j)
        if (h.trace[j + 1] < std::min(h.working_precision, 2 * h.trace[j] - 2 * h.e)) return false;
    return true;
}

void hensel(Check& c) {
    const Ring R = Ring::zp(5, 3);
    const auto h = hensel_lift(R, poly_evaluator({Elem(BigInt(-6)), Elem(BigInt(0)), Elem(BigInt(1))}), R.from_int(1), 3);
    c.require(h.root.z() == 16 && doubles(h), "sqrt(6) in Z_5 is not 16 mod 125");

    oracle::Rng rng(105);
    for (int it = 0; it < 100; ++it) {
        // f = (x - r)(x - r - p^e u)(c0 + c1 x), x0 = r + p^(e+1) w.
        const unsigned long p = std::vector<unsigned long>{3, 5, 7}[oracle::uniform(rng, 0, 2)];
        const std::size_t e = oracle::uniform(rng, 0, 2), K = oracle::uniform(rng, 10, 40);
        const BigInt pe = pow_ui(p, e), P(p);
        const BigInt r = P * static_cast<unsigned long>(oracle::uniform(rng, 0, 1000000));
        const BigInt s = r + pe * static_cast<unsigned long>(oracle::uniform(rng, 1, p - 1));
        const BigInt c0 = static_cast<unsigned long>(oracle::uniform(rng, 1, p - 1));
        const BigInt c1 = static_cast<unsigned long>(oracle::uniform(rng, 0, 50));
        const std::vector<BigInt> f = {r * s * c0, r * s * c1 - (r + s) * c0, c0 - (r + s) * c1, c1};
        std::vector<Elem> fe;
        for (const auto& x : f) fe.emplace_back(x);
        const Ring base = Ring::zp(p, K);
        const BigInt x0 = r + pe * P * static_cast<unsigned long>(oracle::uniform(rng, 0, 1000));
        const auto lift = hensel_lift(base, poly_evaluator(fe), base.from_bigint(x0), K);
        BigInt val = 0;
        for (std::size_t i = f.size(); i-- > 0;) val = mod_floor(val * lift.root.z() + f[i], pow_ui(p, K));
        c.require(lift.e == e && doubles(lift), "Newton steps do not double the valuation");
        c.require(val == 0 && mod_floor(lift.root.z() - r, pow_ui(p, K - e)) == 0, "lifted root is wrong");
    }
}

// ---- criteria 6 and 9 ------------------------------------------------------------

void bound_chain(Check& c, const SmallRoot& root, double seconds) {
    const GapSpec s = GapSpec::reference();
    const BigInt lam = root.lambda.z();
    c.require(mod_floor(lam, BigInt(4)) == 2, "lambda is not 2 mod 4");
    // Terms beyond x^512 have valuation >= 2^16 > 600.
    c.require(oracle::reference_phi_mod(lam, 3, kK) == 0, "v2(f(lambda)) < 600");
    c.require(oracle::v2(oracle::reference_phi_mod(lam, 1, kK)) == 16 && s.b(2) == 16, "v2(Phi_1(lambda)) != 16 = b(2)");
    c.require(oracle::v2(oracle::reference_phi_mod(lam, 2, kK)) == 512 && s.b(3) == 512, "v2(Phi_2(lambda)) != 512 = b(3)");
    for (std::size_t N : {1u, 2u}) {
        const auto rep = bound_check_prime(s, root.ring, root.lambda, N);
        c.require(rep.equality && rep.phi_val && BigInt(static_cast<unsigned long>(*rep.phi_val)) == s.b(N + 1),
                  "bound report N=" + std::to_string(N));
    }
    c.require(seconds < 5.0, "root extraction took " + std::to_string(seconds) + " s");
}

void root_transfer(Check& c, const SmallRoot& root) {
    const GapSpec s = GapSpec::reference();
    const BigInt lam = root.lambda.z();
    const std::vector<WFactorization> facs = {root.coarse, prepare(build_gap_series(s, s.local_ring(kK), 4), Schedule::Forward)};
    c.require(facs[1].ring.prec() == kK, "factorization not at K=600");
    for (const auto& w : facs) {
        const std::size_t K = w.ring.prec();
        c.require(w.n == 1 && w.P.size() == 2 && w.ring.is_unit(w.U[0]), "not a degree-1 factorization with unit U");
        if (w.P.size() != 2) continue;
        const BigInt Pl = mod_floor(lam + w.P[0].z(), BigInt(1) << K);
        c.require(Pl == 0, "v2(P(lambda)) < " + std::to_string(K));
    }
}

// ---- criterion 7 --------------------------------------------------------------

FpPoly thorner(const std::vector<FpPoly>& cs, const FpPoly& x, std::size_t K) {
    FpPoly acc(x.prime());
    for (std::size_t i = cs.size(); i-- > 0;) acc = (FpPoly::mul_trunc(acc, x, K) + cs[i]).truncated(K);
    return acc;
}

void certificates(Check& c, const SmallRoot& root0) {
    const std::size_t D = 2, H = 5, N = 2;
    const GapSpec s0 = GapSpec::reference();
    const auto sum = certify_family<BigInt>(s0, root0.ring, root0.lambda, D, H, N);
    c.require(sum.total == 660 && sum.inconclusive == 0 && sum.certified + sum.shared == sum.total, "char 0 family verdicts");
    std::vector<BigInt> phi(17, 0);
    phi[0] = 2;
    phi[1] = phi[2] = phi[16] = 1;
    for (const auto& e : sum.entries) {
        std::vector<BigInt> P;
        for (const auto& x : e.coeffs) P.push_back(parse_bigint(x));
        const BigInt B = oracle::z_resultant_norm(P, phi);
        if (e.verdict == Verdict::SharedFactor) {
            c.require(B == 0, "SharedFactor with nonzero resultant");
        } else {
            const BigInt Pl = oracle::horner_mod(P, root0.lambda.z(), kK);
            c.require(e.verdict == Verdict::CertifiedNotRoot && B != 0 && Pl != 0, "char 0 candidate not cross-validated");
        }
    }
    const BigInt L(static_cast<unsigned long>((D + 1) * H * H));
    c.require(!margin_char0(s0, 0, L, D, 1).flipped, "char 0 margin flipped at N=0");
    c.require(margin_char0(s0, 2, L, D, 1).flipped && margin_char0(s0, 3, L, D, 1).flipped, "char 0 margin not flipped at N=2,3");

    const GapSpec sp = GapSpec::reference_char_p();
    const SmallRoot rootp = small_root_of_gap(sp, kK);
    const auto sump = certify_family<FpPoly>(sp, rootp.ring, rootp.lambda, D, H, N, 1, false);
    c.require(sump.total == 262080 && sump.inconclusive == 0 && sump.certified + sump.shared == sump.total, "char p family verdicts");
    const FamilyEnumerator<FpPoly> fam(sp, D, H);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto P = fam.at(i);
        nonzero += !thorner(std::vector<FpPoly>(P.coeffs().begin(), P.coeffs().end()), rootp.lambda.t(), kK).is_zero();
    }
    c.require(nonzero == sump.certified + sump.shared && sump.shared == 0, "char p candidate not cross-validated");
    c.require(!margin_char_p(sp, 0, H, D, 1).flipped, "char p margin flipped at N=0");
    c.require(margin_char_p(sp, 2, H, D, 1).flipped && margin_char_p(sp, 3, H, D, 1).flipped, "char p margin not flipped at N=2,3");
}

// ---- criterion 8 --------------------------------------------------------------

int cli_exit(std::vector<std::string> args) {
    args.insert(args.begin(), "prepkit");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

void h10_encoder(Check& c) {
    // Spiral cells, transcribed by hand.
    const std::vector<std::pair<long, long>> cells = {
        {0, 0},  {1, 0},   {1, 1},   {0, 1},   {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1},
        {2, -1}, {2, 0},   {2, 1},   {2, 2},   {1, 2},  {0, 2},  {-1, 2},  {-2, 2}, {-2, 1},
        {-2, 0}, {-2, -1}, {-2, -2}, {-1, -2}, {0, -2}, {1, -2}, {2, -2}};
    for (std::size_t n = 0; n < cells.size(); ++n) {
        const Point p = theta(n, 2);
        c.require(p.size() == 2 && p[0] == cells[n].first && p[1] == cells[n].second, "theta(" + std::to_string(n) + ", 2)");
    }
    for (std::size_t d : {1u, 2u, 3u}) {
        std::set<Point> image;
        for (std::size_t n = 0; n < 10000; ++n) {
            const Point p = theta(n, d);
            c.require(theta_inverse(p) == n, "theta not injective, d=" + std::to_string(d));
            image.insert(p);
        }
        c.require(image.size() == 10000, "theta collision, d=" + std::to_string(d));
        // Surjectivity: the inverse is defined on every lattice point of a box.
        const long r = d == 1 ? 200 : d == 2 ? 20 : 6;
        std::vector<long> cur(d, -r);
        for (;;) {
            Point p;
            for (long v : cur) p.emplace_back(v);
            c.require(theta(theta_inverse(p).get_ui(), d) == p, "theta not surjective, d=" + std::to_string(d));
            std::size_t k = 0;
            while (k < d && cur[k] == r) cur[k++] = -r;
            if (k == d) break;
            ++cur[k];
        }
    }
    const BPValue b2 = bp(parse_diopoly("x^2 + 1"), 2, kBits);
    c.require(b2.exact && b2.value == 2 + (BigInt(1) << 800), "b_P(2) != 2 + 2^800 for x^2+1");

    const auto lin = decision_probe(parse_diopoly("x - 3"), 10, kBits);
    c.require(lin.tag == ProbeTag::RationalCertified && lin.zero_index == 5 && lin.zero_point.size() == 1 && lin.zero_point[0] == 3,
              "x-3 is not RationalCertified(5, 3)");
    const FPOracle f = fP_oracle(parse_diopoly("x - 3"), 2, kBits);
    const auto tail = f.tail(10).second;
    const auto per = detect_periodic_01(tail, 64);
    c.require(per.rational && per.period == 1, "encoded tail is not period 1");
    c.require(decision_probe(parse_diopoly("x^2 + 1"), 100, kBits).tag == ProbeTag::GapGrowthEvidence, "x^2+1 verdict");
    c.require(decision_probe(parse_diopoly("x1^2 + x2^2 - 10^12"), 100, kBits).tag == ProbeTag::Inconclusive, "far-zero verdict");

    c.require(cli_exit({"gap", "probe", "--poly", "x-3", "--n", "10"}) == 0, "exit code for x-3");
    c.require(cli_exit({"h10", "probe", "--poly", "x^2+1", "--n", "100"}) == 0, "exit code for x^2+1");
    c.require(cli_exit({"h10", "probe", "--poly", "x1^2 + x2^2 - 10^12", "--n", "100"}) == 2, "exit code for far zero");
}

}  // namespace

int main() {
    int failed = 0;
    auto report = [&](int id, const char* title, const std::function<void(Check&)>& body) {
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            body(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  %d  %s  (%.1f s)%s%s\n", c.ok() ? "PASS" : "FAIL", id, title, s, c.ok() ? "" : ": ",
                    c.ok() ? "" : c.notes().c_str());
        std::fflush(stdout);
        failed += !c.ok();
    };

    report(1, "Weierstrass preparation roundtrip and schedule agreement", weierstrass_roundtrip);
    report(2, "strong factorization over Z/p^k", strong_factorization);
    report(3, "compositional inverse", compositional_inverse);
    report(4, "resultant oracles, Hadamard and t-degree bounds", resultants);
    report(5, "Hensel lifting", hensel);

    std::optional<SmallRoot> root;
    double root_seconds = 0;
    try {
        const auto t0 = std::chrono::steady_clock::now();
        root = small_root_of_gap(GapSpec::reference(), kK);
        root_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    } catch (const std::exception&) {
    }
    auto needs_root = [&](const std::function<void(Check&)>& body) {
        return [&, body](Check& c) {
            c.require(root.has_value(), "no small root at K=600");
            if (root) body(c);
        };
    };
    report(6, "gap series bound chain at K=600", needs_root([&](Check& c) { bound_chain(c, *root, root_seconds); }));
    report(7, "transcendence certificates, D=2 H=5 N=2, both characteristics",
           needs_root([&](Check& c) { certificates(c, *root); }));
    report(8, "Diophantine encoder and decision probe", h10_encoder);
    report(9, "root transfer through preparation", needs_root([&](Check& c) { root_transfer(c, *root); }));
    return failed;
}
