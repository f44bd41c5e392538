#pragma once

// Exact rational arithmetic for the library core. Everything downstream
// (breakpoints, slopes, supports) is computed over these types; floating
// point never enters.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace thompson {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Safe construction: normalizes sign, rejects zero denominators.
inline Rational make_rational(Int num, Int den) {
    if (den == 0)
        throw std::domain_error("rational: division by zero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

inline Int num(const Rational& q) { return numerator(q); }
inline Int den(const Rational& q) { return denominator(q); }

// 2^n as a rational, n may be negative.
inline Rational pow2(long n) {
    Int one = 1;
    if (n >= 0)
        return Rational(one << n);
    return Rational(one, one << (-n));
}

// True power of two (v = 2^k, v > 0); returns k.
inline std::optional<unsigned> log2_exact(const Int& v) {
    if (v <= 0 || (v & (v - 1)) != 0)
        return std::nullopt;
    return msb(v);
}

// Floor as an exact integer (cpp_int division truncates toward zero).
inline Int floor_int(const Rational& q) {
    Int quotient = num(q) / den(q);
    if (num(q) < 0 && quotient * den(q) != num(q))
        --quotient;
    return quotient;
}

// Reduce into [0, 1).
inline Rational mod_one(const Rational& q) {
    Rational r = q - Rational(floor_int(q));
    return r;
}

struct Dyadic {
    Int a;       // numerator
    unsigned k;  // q = a / 2^k with k minimal

    bool operator==(const Dyadic&) const = default;
};

// a/2^k with k minimal, or nullopt when the denominator has an odd factor.
inline std::optional<Dyadic> dyadic_decompose(const Rational& q) {
    auto k = log2_exact(den(q));
    if (!k)
        return std::nullopt;
    return Dyadic{num(q), *k};
}

inline bool is_dyadic(const Rational& q) { return log2_exact(den(q)).has_value(); }

// Serialization is "p/q", or "p" when q = 1 (boost's canonical str matches).
inline std::string to_string(const Rational& q) { return q.str(); }

// Strict parse of the "p/q" | "p" form.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] {
        throw std::invalid_argument("rational: cannot parse '" + std::string(text) + "'");
    };
    if (text.empty())
        fail();
    std::size_t pos = 0;
    auto read_int = [&]() -> Int {
        bool neg = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            neg = text[pos] == '-';
            ++pos;
        }
        if (pos >= text.size() || text[pos] < '0' || text[pos] > '9')
            fail();
        Int value = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            value = value * 10 + (text[pos] - '0');
            ++pos;
        }
        return neg ? Int(-value) : value;
    };
    Int p = read_int();
    Int q = 1;
    if (pos < text.size()) {
        if (text[pos] != '/')
            fail();
        ++pos;
        q = read_int();
        if (pos != text.size())
            fail();
    }
    return make_rational(std::move(p), std::move(q));
}

// A point of the circle R/Z, kept as its canonical representative in [0, 1).
struct CirclePoint {
    Rational value;

    CirclePoint() : value(0) {}
    explicit CirclePoint(const Rational& q) : value(mod_one(q)) {}

    bool operator==(const CirclePoint&) const = default;
    auto operator<=>(const CirclePoint& other) const {
        return value.compare(other.value) <=> 0;
    }
};

}  // namespace thompson
