/**
 * @file weierstrass_demo.cpp
 * @brief Prepares a few power series over Z_5, F_3[[t]] and Z/8 and prints
 *        the Weierstrass polynomial and unit of each.
 */

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <string>

#include "prepkit/weierstrass.hpp"

using namespace prepkit;

namespace {

std::string show_poly(const Ring& R, const Coeffs& c, const char* var) {
    std::string s;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (R.is_zero(c[i])) continue;
        if (!s.empty()) s += " + ";
        const std::string k = R.to_string(c[i]);
        if (i == 0) s += k;
        else s += (k == "1" ? "" : "(" + k + ")") + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s.empty() ? "0" : s;
}

void show(const char* label, const Series& f, const WFactorization& w) {
    const Ring& R = w.ring;
    std::printf("%s over %s\n", label, R.flag().c_str());
    std::printf("  v = %zu, n = %zu\n", w.v, w.n);
    std::printf("  P = %s\n", show_poly(R, w.P, "x").c_str());
    const std::size_t shown = std::min<std::size_t>(4, w.U.precision());
    const Coeffs head(w.U.coeffs().begin(), w.U.coeffs().begin() + static_cast<std::ptrdiff_t>(shown));
    std::printf("  U = %s + O(x^%zu)\n", show_poly(R, head, "x").c_str(), shown);
    std::printf("  check: %s\n\n", roundtrip_ok(f, w) ? "ok" : "mismatch");
}

}  // namespace

int main() {
    // 5 + x + x^2 has reduction index 1: one root of size 1/5 near 0.
    const Ring Z5 = Ring::zp(5, 3);
    const Series f = Series::from_ints(Z5, {5, 1, 1}, 10);
    const auto w = prepare(f);
    show("5 + x + x^2", f, w);

    // Both schedules give the same factorization.
    const auto alt = prepare(f, Schedule::WarmStart);
    std::printf("schedules agree: %s\n\n", alt.P == w.P && alt.U == w.U ? "yes" : "no");

    // Over F_3[[t]] the uniformizer is t.
    const Ring F3t = Ring::fpt(3, 8);
    Coeffs g(12, F3t.zero());
    g[0] = F3t.from_tpoly(FpPoly(3, {0, 1}));
    g[1] = F3t.from_tpoly(FpPoly(3, {0, 0, 2}));
    g[2] = F3t.one();
    g[5] = F3t.from_int(1);
    const Series gs(F3t, g);
    show("t + 2t^2 x + x^2 + x^5", gs, prepare(gs));

    // 4 + 2x has no unit coefficient in Z/8, so a power of 2 comes out first.
    const Ring Z8 = Ring::zmodpk(2, 3);
    const Series h = Series::from_ints(Z8, {4, 2}, 6);
    show("4 + 2x", h, strong_factor(h));
    return 0;
}
