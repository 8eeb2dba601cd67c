/**
 * @file h10_probe.cpp
 * @brief Encodes Diophantine polynomials as 0/1 series and runs the bounded
 *        decision probe on three instances.
 */

#include <cstdio>
#include <string>

#include "prepkit/h10.hpp"
#include "prepkit/rationality.hpp"

using namespace prepkit;

namespace {

constexpr std::size_t kBits = 1000000;

std::string show_point(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].get_str();
    return s + ")";
}

}  // namespace

int main() {
    std::printf("first points of the plane enumeration:");
    for (std::size_t n = 0; n < 9; ++n) std::printf(" %s", show_point(theta(n, 2)).c_str());
    std::printf("\n\n");

    const DioPoly sq = parse_diopoly("x^2 + 1");
    for (std::size_t n = 0; n < 4; ++n) std::printf("b_P(%zu) for x^2 + 1: %s\n", n, bp(sq, n, kBits).describe().c_str());
    std::printf("\n");

    // x - 3 vanishes at theta(5) = 3, after which the exponents step by one.
    const FPOracle f = fP_oracle(parse_diopoly("x - 3"), 2, kBits);
    const auto tail = f.tail(10).second;
    const auto per = detect_periodic_01(tail, 64);
    std::printf("x - 3: 0/1 tail rational = %s, period %zu\n\n", per.rational ? "yes" : "no", per.period);

    for (const auto& [text, points] : {std::pair<const char*, std::size_t>{"x - 3", 10}, {"x^2 + 1", 100},
                                       {"x1^2 + x2^2 - 10^12", 100}}) {
        const auto v = decision_probe(parse_diopoly(text), points, kBits);
        std::printf("%-22s %s", text, probe_tag_name(v.tag).c_str());
        if (v.tag == ProbeTag::RationalCertified) std::printf(" at index %zu, point %s", v.zero_index, show_point(v.zero_point).c_str());
        if (v.obstruction_modulus) std::printf(" (no zero mod %zu)", static_cast<std::size_t>(*v.obstruction_modulus));
        std::printf("\n");
    }
    return 0;
}
