#pragma once

// Exact scalar domains. Every field is a small value object carrying whatever
// runtime data it needs (the modulus for GF(p)); arithmetic goes through it so
// that matrix code stays generic over Q, Q(i) and GF(p).

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include "rsl/errors.hpp"

namespace rsl {

enum class FieldKind { Rational, GaussianRational, PrimeField };

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

/// Runtime description of a scalar domain; tags are "rational", "gaussian", "gfP".
struct FieldSpec {
    FieldKind kind = FieldKind::Rational;
    std::uint32_t p = 0;

    static FieldSpec rational() { return {FieldKind::Rational, 0}; }
    static FieldSpec gaussian() { return {FieldKind::GaussianRational, 0}; }
    static FieldSpec prime(std::uint64_t p) {
        if (!is_prime(p) || p > 0xFFFFFFFFull) throw not_prime(p);
        return {FieldKind::PrimeField, static_cast<std::uint32_t>(p)};
    }

    std::string tag() const {
        switch (kind) {
        case FieldKind::Rational: return "rational";
        case FieldKind::GaussianRational: return "gaussian";
        case FieldKind::PrimeField: return "gf" + std::to_string(p);
        }
        return "?";
    }

    static FieldSpec parse(std::string_view tag) {
        if (tag == "rational" || tag == "Q" || tag == "q") return rational();
        if (tag == "gaussian" || tag == "Q(i)") return gaussian();
        if (tag.size() > 2 && (tag.substr(0, 2) == "gf" || tag.substr(0, 2) == "GF")) {
            std::uint64_t p = 0;
            for (char c : tag.substr(2)) {
                if (c < '0' || c > '9') throw parse_error("bad field tag '" + std::string(tag) + "'");
                p = p * 10 + static_cast<std::uint64_t>(c - '0');
                if (p > 0xFFFFFFFFull) throw not_prime(p);
            }
            return prime(p);
        }
        throw parse_error("unknown field tag '" + std::string(tag) + "'");
    }

    std::uint32_t characteristic() const { return kind == FieldKind::PrimeField ? p : 0; }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

namespace detail {

inline mpq_class parse_rational(std::string_view s) {
    if (s.empty()) throw parse_error("empty rational");
    std::string str(s);
    if (!str.empty() && str[0] == '+') str.erase(0, 1);
    mpq_class q;
    if (q.set_str(str, 10) != 0) throw parse_error("bad rational '" + std::string(s) + "'");
    if (q.get_den() == 0) throw parse_error("zero denominator in '" + std::string(s) + "'");
    q.canonicalize();
    return q;
}

inline std::string format_rational(const mpq_class& q) { return q.get_str(); }

} // namespace detail

/// The rationals, stored as canonical mpq fractions.
struct RationalField {
    using value_type = mpq_class;

    FieldSpec spec() const { return FieldSpec::rational(); }
    std::uint32_t characteristic() const { return 0; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long v) const { return v; }
    value_type from_rational(const mpq_class& q) const { return q; }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const {
        if (a == 0) throw singular_matrix("division by zero");
        return 1 / a;
    }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool eq(const value_type& a, const value_type& b) const { return a == b; }

    std::string format(const value_type& a) const { return detail::format_rational(a); }
    value_type parse(std::string_view s) const { return detail::parse_rational(s); }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

/// Element of Q(i).
struct Gaussian {
    mpq_class re;
    mpq_class im;

    friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
};

/// The Gaussian rationals Q(i), i^2 = -1.
struct GaussianField {
    using value_type = Gaussian;

    FieldSpec spec() const { return FieldSpec::gaussian(); }
    std::uint32_t characteristic() const { return 0; }

    value_type zero() const { return {0, 0}; }
    value_type one() const { return {1, 0}; }
    value_type i() const { return {0, 1}; }
    value_type from_int(long v) const { return {v, 0}; }
    value_type from_rational(const mpq_class& q) const { return {q, 0}; }

    value_type add(const value_type& a, const value_type& b) const { return {a.re + b.re, a.im + b.im}; }
    value_type sub(const value_type& a, const value_type& b) const { return {a.re - b.re, a.im - b.im}; }
    value_type mul(const value_type& a, const value_type& b) const {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    value_type neg(const value_type& a) const { return {-a.re, -a.im}; }
    value_type inv(const value_type& a) const {
        mpq_class norm = a.re * a.re + a.im * a.im;
        if (norm == 0) throw singular_matrix("division by zero");
        return {a.re / norm, -a.im / norm};
    }
    bool is_zero(const value_type& a) const { return sgn(a.re) == 0 && sgn(a.im) == 0; }
    bool eq(const value_type& a, const value_type& b) const { return a == b; }

    // "re+im i"; the imaginary part always carries an explicit sign.
    std::string format(const value_type& a) const {
        std::string out = detail::format_rational(a.re);
        if (sgn(a.im) < 0)
            out += detail::format_rational(a.im);
        else
            out += "+" + detail::format_rational(a.im);
        return out + " i";
    }

    // Accepts "re", "re+im i", "re+imi", "im i" and "re-im i".
    value_type parse(std::string_view s) const {
        std::string str;
        for (char c : s)
            if (c != ' ') str.push_back(c);
        if (str.empty()) throw parse_error("empty gaussian rational");
        if (str.back() != 'i') return {detail::parse_rational(str), 0};
        str.pop_back();
        std::size_t split = std::string::npos;
        for (std::size_t k = str.size(); k-- > 1;) {
            if ((str[k] == '+' || str[k] == '-') && str[k - 1] != '/') {
                split = k;
                break;
            }
        }
        if (split == std::string::npos) {
            if (str.empty() || str == "+") return {0, 1};
            if (str == "-") return {0, -1};
            return {0, detail::parse_rational(str)};
        }
        std::string re = str.substr(0, split);
        std::string im = str.substr(split);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        return {detail::parse_rational(re), detail::parse_rational(im)};
    }

    friend bool operator==(const GaussianField&, const GaussianField&) { return true; }
};

/// GF(p) for a prime p < 2^32; values are canonical residues in [0, p).
struct PrimeField {
    using value_type = std::uint64_t;

    std::uint64_t p = 2;

    PrimeField() = default;
    explicit PrimeField(std::uint64_t modulus) : p(modulus) {
        if (!is_prime(p) || p > 0xFFFFFFFFull) throw not_prime(p);
    }

    FieldSpec spec() const { return FieldSpec::prime(p); }
    std::uint32_t characteristic() const { return static_cast<std::uint32_t>(p); }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long v) const {
        long r = v % static_cast<long>(p);
        return static_cast<value_type>(r < 0 ? r + static_cast<long>(p) : r);
    }
    value_type from_mpz(const mpz_class& z) const {
        mpz_class r = z % static_cast<unsigned long>(p);
        if (r < 0) r += static_cast<unsigned long>(p);
        return r.get_ui();
    }
    value_type from_rational(const mpq_class& q) const {
        value_type den = from_mpz(q.get_den());
        if (den == 0)
            throw bad_reduction("prime " + std::to_string(p) + " divides denominator of " + q.get_str());
        return mul(from_mpz(q.get_num()), inv(den));
    }

    value_type add(value_type a, value_type b) const {
        value_type s = a + b;
        return s >= p ? s - p : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p - b; }
    value_type mul(value_type a, value_type b) const { return (a * b) % p; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
    value_type pow(value_type a, std::uint64_t e) const {
        value_type r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    value_type inv(value_type a) const {
        if (a == 0) throw singular_matrix("division by zero");
        return pow(a, p - 2);
    }
    bool is_zero(value_type a) const { return a == 0; }
    bool eq(value_type a, value_type b) const { return a == b; }

    std::string format(value_type a) const { return std::to_string(a); }
    value_type parse(std::string_view s) const {
        // Integers, or p/q read as a rational and reduced.
        return from_rational(detail::parse_rational(s));
    }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p == b.p; }
};

template <class F>
inline constexpr bool is_rational_field_v = std::is_same_v<F, RationalField>;
template <class F>
inline constexpr bool is_gaussian_field_v = std::is_same_v<F, GaussianField>;
template <class F>
inline constexpr bool is_prime_field_v = std::is_same_v<F, PrimeField>;

} // namespace rsl
