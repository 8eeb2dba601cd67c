/**
 * @file gap_certificate.cpp
 * @brief Finds the small 2-adic root of 2 + x + x^2 + x^16 + x^512 + ...,
 *        checks the valuation chain of its truncations, and certifies that a
 *        few integer polynomials do not vanish there.
 */

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "prepkit/certificate.hpp"

using namespace prepkit;

int main() {
    const std::size_t K = 600;
    const GapSpec s = GapSpec::reference();
    const SmallRoot root = small_root_of_gap(s, K);
    const std::string digits = root.lambda.z().get_str(2);
    std::printf("lambda mod 2^%zu, lowest 32 bits: ...%s\n", K, digits.substr(digits.size() - 32).c_str());
    std::printf("Newton precisions:");
    for (std::size_t a : root.lift.trace) std::printf(" %zu", a);
    std::printf("\n\n");

    for (std::size_t N : {1u, 2u}) {
        const auto rep = bound_check_prime(s, root.ring, root.lambda, N);
        std::printf("N = %zu: v(Phi_N(lambda)) = %s, b(N+1) = %s, %s\n", N,
                    rep.phi_val ? std::to_string(*rep.phi_val).c_str() : ">= K", rep.b_next.get_str().c_str(),
                    rep.equality ? "equal" : "not equal");
    }
    std::printf("\n");

    // x - 2 gives Res = 8; Phi_1 itself shares a factor with Phi_1.
    const std::vector<std::pair<const char*, std::vector<long>>> candidates = {
        {"x", {0, 1}}, {"x - 2", {-2, 1}}, {"1 - 3x^2", {1, 0, -3}}, {"2 + x + x^2", {2, 1, 1}}};
    for (const auto& [label, coeffs] : candidates) {
        const auto c = certify_not_root(s, root.ring, root.lambda, make_zpoly(coeffs), 1);
        std::printf("%-12s B = %-8s %s\n", label, c.B.c_str(), std::string(verdict_name(c.verdict)).c_str());
    }

    const auto fam = certify_family<BigInt>(s, root.ring, root.lambda, 2, 3, 2);
    std::printf("\ndegree <= 2, height <= 3: %zu candidates, %zu certified, %zu shared, %zu inconclusive\n", fam.total,
                fam.certified, fam.shared, fam.inconclusive);
    return fam.inconclusive == 0 ? 0 : 1;
}
