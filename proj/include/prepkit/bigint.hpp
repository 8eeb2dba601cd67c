#pragma once

/**
 * @file bigint.hpp
 * @brief Thin helpers over GMP's mpz_class / mpq_class.
 */

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>

#include "prepkit/error.hpp"

namespace prepkit {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

inline std::string to_decimal(const BigRat& v) {
    BigRat c(v);
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str(10);
    return c.get_num().get_str(10) + "/" + c.get_den().get_str(10);
}

/// Unevaluated GMP expressions (a + b, ...) go through their value type.
template <class U>
std::string to_decimal(const __gmp_expr<mpz_t, U>& e) { return to_decimal(BigInt(e)); }
template <class U>
std::string to_decimal(const __gmp_expr<mpq_t, U>& e) { return to_decimal(BigRat(e)); }

inline BigInt parse_bigint(const std::string& s) {
    BigInt v;
    std::string t = s;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    if (t.empty() || v.set_str(t, 10) != 0) fail(ErrorCode::ParseError, "not an integer: '" + s + "'");
    return v;
}

/// Accepts "n" or "n/d".
inline BigRat parse_bigrat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return BigRat(parse_bigint(s));
    BigInt num = parse_bigint(s.substr(0, slash));
    BigInt den = parse_bigint(s.substr(slash + 1));
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

inline BigInt pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt pow_ui(unsigned long base, unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

/// Bit length of |v| (0 for v = 0).
inline std::size_t bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

/// Largest v with p^v | r.  r must be nonzero.
inline std::size_t valuation_p(const BigInt& r, const BigInt& p) {
    if (r == 0) fail(ErrorCode::ZeroInput, "valuation of zero");
    if (p == 2) return mpz_scan1(r.get_mpz_t(), 0);
    BigInt q;
    return mpz_remove(q.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
}

/// Least nonnegative residue.
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline std::size_t to_size(const BigInt& v, const char* what) {
    if (v < 0 || !v.fits_ulong_p()) fail(ErrorCode::BudgetExceeded, std::string(what) + " does not fit a machine word");
    return static_cast<std::size_t>(v.get_ui());
}

}  // namespace prepkit
