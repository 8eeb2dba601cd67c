#pragma once

/**
 * @file h10.hpp
 * @brief Encoding integer polynomials as gap series.
 *
 * For P in Z[x_1..x_d] and an enumeration theta: N -> Z^d,
 *
 *     E(n)   = prod_{l<=n} P(theta(l))^2 * prod_{l<=n} (1 + P(theta(l))^2)
 *     b_P(0) = 1,   b_P(n) = b_P(n-1) + b_P(n-1)^E(n)
 *
 * and f_P = a0 + sum_{j>0} x^{b_P(j)}.  A zero of P makes E vanish from its
 * index on, so b_P steps by one and f_P (1 - x) is a polynomial.  Without a
 * zero, b_P grows super-exponentially.  The values of b_P explode almost at
 * once, so they are kept exact only while they fit a bit budget.
 */

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "prepkit/bigint.hpp"
#include "prepkit/error.hpp"
#include "prepkit/rings.hpp"
#include "prepkit/series.hpp"

namespace prepkit {

/// Default cap on materialized big integers, overridable by PREPKIT_BUDGET_BITS.
inline std::size_t default_budget_bits() {
    if (const char* env = std::getenv("PREPKIT_BUDGET_BITS")) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
            fail(ErrorCode::UsageError, std::string("PREPKIT_BUDGET_BITS is not a number: ") + env);
        }
    }
    return 1'000'000;
}

// ---------------------------------------------------------------------------
// Multivariate integer polynomials

using Point = std::vector<BigInt>;

class DioPoly {
public:
    using Exponents = std::vector<unsigned>;

    DioPoly() = default;
    explicit DioPoly(std::size_t d) : d_(d) {
        if (d == 0) fail(ErrorCode::ParseError, "a polynomial needs at least one variable");
    }

    static DioPoly constant(std::size_t d, const BigInt& c) {
        DioPoly r(d);
        r.add_term(Exponents(d, 0), c);
        return r;
    }
    static DioPoly variable(std::size_t d, std::size_t i) {
        DioPoly r(d);
        Exponents e(d, 0);
        e.at(i) = 1;
        r.add_term(e, 1);
        return r;
    }

    std::size_t nvars() const noexcept { return d_; }
    const std::map<Exponents, BigInt>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const Exponents& e, const BigInt& c) {
        if (e.size() != d_) fail(ErrorCode::ParseError, "exponent vector has the wrong length");
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Same polynomial viewed in more variables.
    DioPoly widened(std::size_t d) const {
        if (d < d_) fail(ErrorCode::ParseError, "cannot drop variables");
        DioPoly r(d);
        for (const auto& [e, c] : terms_) {
            Exponents w = e;
            w.resize(d, 0);
            r.add_term(w, c);
        }
        return r;
    }

    friend DioPoly operator+(const DioPoly& a, const DioPoly& b) {
        DioPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend DioPoly operator-(const DioPoly& a) {
        DioPoly r(a.d_);
        for (const auto& [e, c] : a.terms_) r.add_term(e, -c);
        return r;
    }
    friend DioPoly operator-(const DioPoly& a, const DioPoly& b) { return a + (-b); }
    friend DioPoly operator*(const DioPoly& a, const DioPoly& b) {
        DioPoly r(a.d_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.d_);
                for (std::size_t i = 0; i < a.d_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    DioPoly pow(unsigned k) const {
        DioPoly r = constant(d_, 1), b = *this;
        for (; k; k >>= 1) {
            if (k & 1) r = r * b;
            if (k > 1) b = b * b;
        }
        return r;
    }

    BigInt eval(const Point& x) const {
        if (x.size() != d_) fail(ErrorCode::ParseError, "point has " + std::to_string(x.size()) + " coordinates, expected " + std::to_string(d_));
        BigInt acc = 0;
        for (const auto& [e, c] : terms_) {
            BigInt t = c;
            for (std::size_t i = 0; i < d_; ++i)
                if (e[i]) t *= prepkit::pow(x[i], e[i]);
            acc += t;
        }
        return acc;
    }

    /// Sparse text form, one "c:e1,...,ed" per line, in exponent order.
    std::string to_sparse() const {
        std::ostringstream os;
        for (const auto& [e, c] : terms_) {
            os << to_decimal(c) << ':';
            for (std::size_t i = 0; i < d_; ++i) os << (i ? "," : "") << e[i];
            os << '\n';
        }
        return os.str();
    }

    /// Human-readable form in x1..xd (x when d = 1), highest total degree first.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Exponents, BigInt>> order(terms_.begin(), terms_.end());
        std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
            unsigned da = 0, db = 0;
            for (unsigned v : a.first) da += v;
            for (unsigned v : b.first) db += v;
            return da != db ? da > db : a.first > b.first;
        });
        std::string out;
        for (const auto& [e, c] : order) {
            const bool neg = c < 0;
            const BigInt mag = neg ? BigInt(-c) : c;
            std::string mono;
            for (std::size_t i = 0; i < d_; ++i) {
                if (!e[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += d_ == 1 ? std::string("x") : "x" + std::to_string(i + 1);
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            std::string term = mono.empty() ? to_decimal(mag) : (mag == 1 ? mono : to_decimal(mag) + "*" + mono);
            if (out.empty()) out = neg ? "-" + term : term;
            else out += (neg ? " - " : " + ") + term;
        }
        return out;
    }

    friend bool operator==(const DioPoly& a, const DioPoly& b) { return a.d_ == b.d_ && a.terms_ == b.terms_; }

private:
    std::size_t d_ = 1;
    std::map<Exponents, BigInt> terms_;
};

namespace detail {

/// Recursive descent over + - * ^ and parentheses.  Variables are x, y, z or
/// x1, x2, ...; a number directly followed by a variable or '(' multiplies.
class DioParser {
public:
    explicit DioParser(std::string src) : s_(std::move(src)) {}

    DioPoly parse(std::size_t min_vars) {
        scan_variables();
        d_ = std::max({min_vars, max_var_, std::size_t{1}});
        pos_ = 0;
        DioPoly r = expr();
        skip_ws();
        if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorCode::ParseError, what + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    /// Variable index (1-based) at the cursor, if the next token is a variable.
    std::optional<std::size_t> variable() {
        if (pos_ >= s_.size()) return std::nullopt;
        const char c = s_[pos_];
        if (c == 'y') return ++pos_, std::size_t{2};
        if (c == 'z') return ++pos_, std::size_t{3};
        if (c != 'x') return std::nullopt;
        ++pos_;
        std::string idx = digits();
        if (idx.empty()) return std::size_t{1};
        const std::size_t i = std::stoul(idx);
        if (i == 0) error("variable indices start at 1");
        return i;
    }

    void scan_variables() {
        for (pos_ = 0; pos_ < s_.size();) {
            if (auto v = variable()) max_var_ = std::max(max_var_, *v);
            else ++pos_;
        }
    }

    DioPoly expr() {
        DioPoly acc = term();
        for (;;) {
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else return acc;
        }
    }
    DioPoly term() {
        DioPoly acc = unary();
        for (;;) {
            if (eat('*')) {
                acc = acc * unary();
                continue;
            }
            skip_ws();
            if (pos_ < s_.size() && (s_[pos_] == '(' || s_[pos_] == 'x' || s_[pos_] == 'y' || s_[pos_] == 'z')) {
                acc = acc * unary();
                continue;
            }
            return acc;
        }
    }
    DioPoly unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    DioPoly power() {
        DioPoly base = primary();
        if (eat('^')) {
            skip_ws();
            std::string e = digits();
            if (e.empty()) error("expected an exponent");
            if (e.size() > 6) error("exponent too large");
            base = base.pow(static_cast<unsigned>(std::stoul(e)));
        }
        return base;
    }
    DioPoly primary() {
        skip_ws();
        if (eat('(')) {
            DioPoly r = expr();
            if (!eat(')')) error("expected ')'");
            return r;
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            return DioPoly::constant(d_, BigInt(digits()));
        if (auto v = variable()) return DioPoly::variable(d_, *v - 1);
        if (pos_ >= s_.size()) error("unexpected end of input");
        error("unexpected '" + std::string(1, s_[pos_]) + "'");
    }

    std::string s_;
    std::size_t pos_ = 0;
    std::size_t max_var_ = 0;
    std::size_t d_ = 1;
};

}  // namespace detail

/// Parse an inline polynomial such as "x^2+1" or "x1^2 + x2^2 - 10^12".
inline DioPoly parse_diopoly(const std::string& text, std::size_t min_vars = 1) {
    return detail::DioParser(text).parse(min_vars);
}

/// Parse the sparse format: one "c:e1,...,ed" term per line ('#' starts a comment).
inline DioPoly parse_diopoly_sparse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<DioPoly> out;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
        if (line.empty()) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": missing ':'");
        BigInt c;
        try {
            c = parse_bigint(line.substr(0, colon));
        } catch (const Error&) {
            fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": bad coefficient");
        }
        DioPoly::Exponents e;
        std::istringstream es(line.substr(colon + 1));
        std::string part;
        while (std::getline(es, part, ',')) {
            if (part.empty() || !std::all_of(part.begin(), part.end(), [](unsigned char ch) { return std::isdigit(ch); }))
                fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": bad exponent");
            e.push_back(static_cast<unsigned>(std::stoul(part)));
        }
        if (e.empty()) fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": no exponents");
        if (!out) out.emplace(e.size());
        if (e.size() != out->nvars()) fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": inconsistent number of variables");
        out->add_term(e, c);
    }
    if (!out) fail(ErrorCode::ParseError, "no terms");
    return *out;
}

/// Either format: sparse if the text contains ':', inline otherwise.
inline DioPoly parse_diopoly_any(const std::string& text, std::size_t min_vars = 1) {
    if (text.find(':') != std::string::npos) {
        DioPoly p = parse_diopoly_sparse(text);
        return p.nvars() < min_vars ? p.widened(min_vars) : p;
    }
    return parse_diopoly(text, min_vars);
}

// ---------------------------------------------------------------------------
// The enumeration theta: N -> Z^d

/// 0, 1, -1, 2, -2, ...
inline BigInt zigzag(const BigInt& n) {
    if (n % 2 == 1) return (n + 1) / 2;
    return BigInt(-n / 2);
}
inline BigInt zigzag_inverse(const BigInt& z) {
    if (z > 0) return 2 * z - 1;
    return BigInt(-2 * z);
}

/// Cantor unpairing n -> (a, b) with n = (a+b)(a+b+1)/2 + b.
inline std::pair<BigInt, BigInt> cantor_unpair(const BigInt& n) {
    BigInt s = 8 * n + 1;
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
    const BigInt w = (r - 1) / 2;
    const BigInt t = w * (w + 1) / 2;
    const BigInt b = n - t;
    return {BigInt(w - b), b};
}
inline BigInt cantor_pair(const BigInt& a, const BigInt& b) {
    const BigInt w = a + b;
    return w * (w + 1) / 2 + b;
}

namespace detail {

/// Square spiral from the origin: (1,0) first, then counterclockwise.
inline std::pair<BigInt, BigInt> spiral(const BigInt& n) {
    if (n == 0) return {0, 0};
    // Least k with (2k+1)^2 > n.
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    BigInt k = (r + 1) / 2;
    while ((2 * k + 1) * (2 * k + 1) <= n) ++k;
    while (k > 1 && (2 * k - 1) * (2 * k - 1) > n) --k;
    const BigInt o = n - (2 * k - 1) * (2 * k - 1);
    const BigInt side = o / (2 * k), off = o % (2 * k);
    switch (side.get_ui()) {
        case 0: return {k, BigInt(-k + 1 + off)};
        case 1: return {BigInt(k - 1 - off), k};
        case 2: return {BigInt(-k), BigInt(k - 1 - off)};
        default: return {BigInt(-k + 1 + off), BigInt(-k)};
    }
}

inline BigInt spiral_inverse(const BigInt& x, const BigInt& y) {
    const BigInt ax = abs(x), ay = abs(y);
    const BigInt k = ax > ay ? ax : ay;
    if (k == 0) return 0;
    const BigInt base = (2 * k - 1) * (2 * k - 1);
    if (x == k && y > -k) return base + (y + k - 1);
    if (y == k) return base + 2 * k + (k - 1 - x);
    if (x == -k) return base + 4 * k + (k - 1 - y);
    return base + 6 * k + (x + k - 1);
}

}  // namespace detail

/**
 * theta(n, d): the zigzag for d = 1, the square spiral for d = 2, and for
 * d >= 3 the zigzag applied to each coordinate of the iterated Cantor
 * unpairing of n (first coordinate split off first).
 */
inline Point theta(const BigInt& n, std::size_t d) {
    if (d == 0) fail(ErrorCode::UsageError, "theta needs d >= 1");
    if (n < 0) fail(ErrorCode::UsageError, "theta is defined on natural numbers");
    if (d == 1) return {zigzag(n)};
    if (d == 2) {
        auto [x, y] = detail::spiral(n);
        return {x, y};
    }
    Point out;
    BigInt rest = n;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        auto [a, b] = cantor_unpair(rest);
        out.push_back(zigzag(a));
        rest = b;
    }
    out.push_back(zigzag(rest));
    return out;
}
inline Point theta(std::size_t n, std::size_t d) { return theta(BigInt(static_cast<unsigned long>(n)), d); }

inline BigInt theta_inverse(const Point& z) {
    if (z.empty()) fail(ErrorCode::UsageError, "theta_inverse needs a point");
    if (z.size() == 1) return zigzag_inverse(z[0]);
    if (z.size() == 2) return detail::spiral_inverse(z[0], z[1]);
    BigInt acc = zigzag_inverse(z.back());
    for (std::size_t i = z.size() - 1; i-- > 0;) acc = cantor_pair(zigzag_inverse(z[i]), acc);
    return acc;
}

// ---------------------------------------------------------------------------
// The exponents E(n) and the sequence b_P

/// E(n) computed directly from its definition.
inline BigInt exponent_E(const DioPoly& P, std::size_t n) {
    BigInt sq = 1, shifted = 1;
    for (std::size_t l = 0; l <= n; ++l) {
        const BigInt v = P.eval(theta(l, P.nvars()));
        sq *= v * v;
        shifted *= 1 + v * v;
    }
    return sq * shifted;
}

/// b_P(n): exact, or over the budget.  An over-budget value is
/// b_P(marker) + offset with b_P(marker) unknown; the offset only grows
/// after a zero of P, where b_P steps by one.
struct BPValue {
    bool exact = true;
    BigInt value;
    std::size_t marker = 0;
    BigInt offset = 0;
    /// E(n), when it fits the budget (absent for n = 0).
    std::optional<BigInt> exponent;

    std::string describe() const {
        if (exact) return to_decimal(value);
        std::string s = "OverBudget(" + std::to_string(marker) + ")";
        if (offset != 0) s += " + " + to_decimal(offset);
        return s;
    }
};

/**
 * Memoized b_P with values kept exact while they have at most `bits` bits.
 * The size of b^E is predicted as E (bits(b) - 1) + 1 (a lower bound) before
 * any power is formed.  Safe to query from several threads.
 */
class LazyBP {
public:
    LazyBP(DioPoly P, std::size_t bits) : P_(std::move(P)), bits_(bits) {
        BPValue b0;
        b0.value = 1;
        vals_.push_back(std::move(b0));
        values_.push_back(P_.eval(theta(std::size_t{0}, P_.nvars())));
        if (values_[0] == 0) first_zero_ = 0;
        const BigInt v2 = values_[0] * values_[0];
        E_.push_back(v2 * (1 + v2));
    }

    const DioPoly& poly() const noexcept { return P_; }
    std::size_t budget_bits() const noexcept { return bits_; }

    BPValue at(std::size_t n) const {
        std::lock_guard<std::mutex> lock(mu_);
        extend(n);
        return vals_[n];
    }

    /// P(theta(l)).
    BigInt value_at(std::size_t l) const {
        std::lock_guard<std::mutex> lock(mu_);
        extend_points(l);
        return values_[l];
    }

    /// E(n) if it fits the budget.
    std::optional<BigInt> exponent(std::size_t n) const {
        std::lock_guard<std::mutex> lock(mu_);
        extend_points(n);
        return E_[n];
    }

    /// Least l <= n with P(theta(l)) = 0.
    std::optional<std::size_t> first_zero_upto(std::size_t n) const {
        std::lock_guard<std::mutex> lock(mu_);
        extend_points(n);
        if (first_zero_ && *first_zero_ <= n) return first_zero_;
        return std::nullopt;
    }

private:
    void extend_points(std::size_t n) const {
        while (values_.size() <= n) {
            const std::size_t l = values_.size();
            const BigInt v = P_.eval(theta(l, P_.nvars()));
            values_.push_back(v);
            if (v == 0 && !first_zero_) first_zero_ = l;
            const std::optional<BigInt>& prev = E_.back();
            if (first_zero_) {
                E_.push_back(BigInt(0));
            } else if (!prev) {
                E_.push_back(std::nullopt);
            } else {
                const BigInt v2 = v * v;
                BigInt e = *prev * v2 * (1 + v2);
                if (bit_length(e) > bits_) E_.push_back(std::nullopt);
                else E_.push_back(std::move(e));
            }
        }
    }

    void extend(std::size_t n) const {
        extend_points(n);
        while (vals_.size() <= n) {
            const std::size_t k = vals_.size();
            const BPValue& prev = vals_.back();
            BPValue next;
            next.exponent = E_[k];
            const bool zero = first_zero_ && *first_zero_ <= k;
            if (zero) {
                next.exact = prev.exact;
                next.marker = prev.marker;
                if (prev.exact) next.value = prev.value + 1;
                else next.offset = prev.offset + 1;
            } else if (!prev.exact) {
                next.exact = false;
                next.marker = k;
            } else if (prev.value == 1) {
                next.value = 2;
            } else {
                // b^E has at least E (bits(b) - 1) + 1 bits.
                const std::size_t bb = bit_length(prev.value);
                bool over = !E_[k];
                if (!over) over = *E_[k] * BigInt(static_cast<unsigned long>(bb - 1)) + 1 > BigInt(static_cast<unsigned long>(bits_));
                if (!over) {
                    BigInt v = pow(prev.value, E_[k]->get_ui()) + prev.value;
                    if (bit_length(v) > bits_) over = true;
                    else next.value = std::move(v);
                }
                if (over) {
                    next.exact = false;
                    next.marker = k;
                }
            }
            vals_.push_back(std::move(next));
        }
    }

    DioPoly P_;
    std::size_t bits_;
    mutable std::mutex mu_;
    mutable std::vector<BPValue> vals_;
    mutable std::vector<BigInt> values_;
    mutable std::vector<std::optional<BigInt>> E_;
    mutable std::optional<std::size_t> first_zero_;
};

inline BPValue bp(const DioPoly& P, std::size_t n, std::size_t bits) { return LazyBP(P, bits).at(n); }

// ---------------------------------------------------------------------------
// The encoded series f_P

/**
 * Coefficients of f_P: a0 at x^0, 1 at x^{b_P(j)} for j > 0, 0 elsewhere.
 * A query that runs into an over-budget b_P value answers 0 (that value is
 * beyond any machine index once the budget exceeds 64 bits) and records the
 * marker in `underdetermined_beyond`.
 */
class FPOracle {
public:
    FPOracle(DioPoly P, BigInt a0, std::size_t bits) : bp_(std::make_shared<LazyBP>(std::move(P), bits)), a0_(std::move(a0)) {
        if (a0_ < 2 || !is_prime(a0_)) fail(ErrorCode::NonPrimeBase, to_decimal(a0_) + " is not a prime");
    }

    const BigInt& a0() const noexcept { return a0_; }
    const LazyBP& bp() const noexcept { return *bp_; }

    int coeff(std::size_t n) const {
        if (n == 0) fail(ErrorCode::NonBinaryCoefficient, "a_P(0) is the base coefficient, not a 0/1 value");
        const BigInt target(static_cast<unsigned long>(n));
        for (std::size_t j = 1;; ++j) {
            const BPValue b = bp_->at(j);
            if (!b.exact) {
                std::lock_guard<std::mutex> lock(st_->mu);
                if (!st_->under || *st_->under > b.marker) st_->under = b.marker;
                return 0;
            }
            if (b.value == target) return 1;
            if (b.value > target) return 0;
            // Past a zero, b_P(j + i) = b_P(j) + i.
            if (auto z = bp_->first_zero_upto(j); z && *z <= j) return 1;
        }
    }

    BigInt coeff_full(std::size_t n) const { return n == 0 ? a0_ : BigInt(coeff(n)); }

    std::optional<std::size_t> underdetermined_beyond() const {
        std::lock_guard<std::mutex> lock(st_->mu);
        return st_->under;
    }

    /// f_P on x^0 .. x^(M-1), backed by this oracle (ExactZ with ambient prime a0 by default).
    Series series(std::size_t M) const { return series(M, Ring::exact_z(static_cast<std::uint64_t>(a0_.get_ui()))); }
    Series series(std::size_t M, const Ring& R) const {
        if (R.is_poly_kind()) fail(ErrorCode::RingMismatch, "f_P has integer coefficients, got " + R.flag());
        auto self = *this;
        auto oracle = std::make_shared<CoefficientOracle>("f_P", [self, R](std::size_t i) { return R.from_bigint(self.coeff_full(i)); });
        return Series::from_oracle(R, M, oracle);
    }

    /**
     * The 0/1 coefficients from the first post-zero value b_P(max(l0, 1)) on,
     * where l0 is the first zero within `points` scanned indices.  Those are
     * all 1, and the start may be symbolic (over budget).
     */
    std::pair<BPValue, std::function<int(std::size_t)>> tail(std::size_t points) const {
        auto z = bp_->first_zero_upto(points);
        if (!z) fail(ErrorCode::BudgetExceeded, "no zero of P among the first " + std::to_string(points + 1) + " points");
        const std::size_t j0 = std::max<std::size_t>(*z, 1);
        BPValue start = bp_->at(j0);
        auto bpp = bp_;
        return {start, [bpp, j0, start](std::size_t i) {
                    // a_P(start + i) = 1 exactly when start + i is some b_P(j); past
                    // the zero the candidate is b_P(j0 + i).
                    const BPValue b = bpp->at(j0 + i);
                    const BigInt step(static_cast<unsigned long>(i));
                    if (start.exact) return b.exact && b.value == start.value + step ? 1 : 0;
                    return !b.exact && b.marker == start.marker && b.offset == start.offset + step ? 1 : 0;
                }};
    }

private:
    struct State {
        std::mutex mu;
        std::optional<std::size_t> under;
    };
    std::shared_ptr<LazyBP> bp_;
    BigInt a0_;
    std::shared_ptr<State> st_ = std::make_shared<State>();
};

inline FPOracle fP_oracle(const DioPoly& P, const BigInt& a0 = 2, std::size_t bits = default_budget_bits()) {
    return FPOracle(P, a0, bits);
}

// ---------------------------------------------------------------------------
// The probe

enum class ProbeTag { RationalCertified, GapGrowthEvidence, Inconclusive };

inline std::string probe_tag_name(ProbeTag t) {
    switch (t) {
        case ProbeTag::RationalCertified: return "RationalCertified";
        case ProbeTag::GapGrowthEvidence: return "GapGrowthEvidence";
        case ProbeTag::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

struct ProbeVerdict {
    ProbeTag tag = ProbeTag::Inconclusive;
    std::size_t points = 0;
    std::size_t bits = 0;
    /// RationalCertified: first zero index and point.
    std::size_t zero_index = 0;
    Point zero_point;
    /// Growth: E(n) >= 2^(n+1) confirmed for every n <= horizon.
    std::size_t horizon = 0;
    /// Exact E(n) for the indices in `sample_indices` (those within budget).
    std::vector<std::size_t> sample_indices;
    std::vector<BigInt> samples;
    /// GapGrowthEvidence: a modulus m with P != 0 on all of (Z/m)^d.
    std::optional<std::uint64_t> obstruction_modulus;
};

namespace detail {

/// Least m in [2, max_m] such that P has no zero modulo m, if m^d stays small.
inline std::optional<std::uint64_t> local_obstruction(const DioPoly& P, std::uint64_t max_m = 32, std::uint64_t max_cells = 1u << 20) {
    const std::size_t d = P.nvars();
    for (std::uint64_t m = 2; m <= max_m; ++m) {
        std::uint64_t cells = 1;
        bool too_many = false;
        for (std::size_t i = 0; i < d; ++i) {
            cells *= m;
            if (cells > max_cells) {
                too_many = true;
                break;
            }
        }
        if (too_many) break;
        // Reduce coefficients once.
        std::vector<std::pair<DioPoly::Exponents, std::uint64_t>> red;
        for (const auto& [e, c] : P.terms()) red.push_back({e, mod_floor(c, BigInt(static_cast<unsigned long>(m))).get_ui()});
        bool has_zero = false;
        std::vector<std::uint64_t> x(d, 0);
        for (std::uint64_t cell = 0; cell < cells && !has_zero; ++cell) {
            std::uint64_t rest = cell;
            for (std::size_t i = 0; i < d; ++i) {
                x[i] = rest % m;
                rest /= m;
            }
            std::uint64_t acc = 0;
            for (const auto& [e, c] : red) {
                std::uint64_t t = c;
                for (std::size_t i = 0; i < d; ++i)
                    for (unsigned k = 0; k < e[i]; ++k) t = t * x[i] % m;
                acc = (acc + t) % m;
            }
            has_zero = acc == 0;
        }
        if (!has_zero) return m;
    }
    return std::nullopt;
}

}  // namespace detail

/**
 * Scan l = 0 .. points.  A zero gives RationalCertified (re-verified).
 * Otherwise E(n) >= 2^(n+1) is confirmed over the scanned horizon; that
 * bound alone holds for every P without a zero in the window, so the growth
 * verdict additionally requires a modulus at which P has no zero.  Without
 * one the answer is Inconclusive: the probe never claims more than it checked.
 */
inline ProbeVerdict decision_probe(const DioPoly& P, std::size_t points, std::size_t bits = default_budget_bits()) {
    ProbeVerdict out;
    out.points = points;
    out.bits = bits;
    const std::size_t d = P.nvars();
    BigInt E = 1;
    bool E_exact = true;
    const std::vector<std::size_t> wanted{0, 1, 2, 3, 4, 5, 10, 20, 50, 100, 1000, 10000};
    for (std::size_t l = 0; l <= points; ++l) {
        const Point x = theta(l, d);
        const BigInt v = P.eval(x);
        if (v == 0) {
            if (P.eval(x) != 0) fail(ErrorCode::Internal, "zero did not re-verify");
            out.tag = ProbeTag::RationalCertified;
            out.zero_index = l;
            out.zero_point = x;
            return out;
        }
        // Each factor v^2 (1 + v^2) is at least 2, so E(l) >= 2^(l+1).
        if (E_exact) {
            const BigInt v2 = v * v;
            E *= v2 * (1 + v2);
            if (bit_length(E) > bits) E_exact = false;
            else if (E < pow_ui(2, static_cast<unsigned long>(l + 1))) fail(ErrorCode::Internal, "exponent growth bound failed");
        }
        if (E_exact && std::binary_search(wanted.begin(), wanted.end(), l)) {
            out.sample_indices.push_back(l);
            out.samples.push_back(E);
        }
        out.horizon = l;
    }
    out.obstruction_modulus = detail::local_obstruction(P);
    out.tag = out.obstruction_modulus ? ProbeTag::GapGrowthEvidence : ProbeTag::Inconclusive;
    return out;
}

}  // namespace prepkit
