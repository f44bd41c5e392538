#pragma once

// Piecewise-linear homeomorphisms of [0,1] fixing both endpoints, stored as
// exact breakpoint tables. This is the carrier of Thompson's group F.
//
// Convention used across the library: actions are on the right, so
// compose(f, g) means "apply f, then g" and evaluate(compose(f, g), x)
// equals evaluate(g, evaluate(f, x)).

#include "thompson/interval_set.hpp"
#include "thompson/rational.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace thompson {

struct BreakPoint {
    Rational x, y;

    bool operator==(const BreakPoint&) const = default;
};

namespace detail {

// Strictly increasing in both coordinates.
inline void check_table(const std::vector<BreakPoint>& pts) {
    if (pts.size() < 2)
        throw std::invalid_argument("breakpoint table needs at least two points");
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i - 1].x >= pts[i].x || pts[i - 1].y >= pts[i].y)
            throw std::invalid_argument("breakpoint table must be strictly increasing");
    }
}

// Drop interior points where the slope does not change, so equality of maps
// is equality of tables.
inline std::vector<BreakPoint> canonical_table(std::vector<BreakPoint> pts) {
    check_table(pts);
    std::vector<BreakPoint> out;
    out.reserve(pts.size());
    for (auto& p : pts) {
        while (out.size() >= 2) {
            const BreakPoint& a = out[out.size() - 2];
            const BreakPoint& b = out.back();
            // collinear iff (b-a) x (p-b) = 0
            if ((b.y - a.y) * (p.x - b.x) == (p.y - b.y) * (b.x - a.x))
                out.pop_back();
            else
                break;
        }
        out.push_back(std::move(p));
    }
    return out;
}

inline Rational eval_table(const std::vector<BreakPoint>& pts, const Rational& x) {
    if (x < pts.front().x || x > pts.back().x)
        throw std::domain_error("evaluation outside table domain");
    auto it = std::upper_bound(pts.begin(), pts.end(), x,
                               [](const Rational& v, const BreakPoint& p) { return v < p.x; });
    if (it == pts.end())
        return pts.back().y;
    if (it == pts.begin())
        return pts.front().y;
    const BreakPoint& b = *it;
    const BreakPoint& a = *(it - 1);
    return a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x);
}

inline std::vector<BreakPoint> invert_table(const std::vector<BreakPoint>& pts) {
    std::vector<BreakPoint> out;
    out.reserve(pts.size());
    for (const auto& p : pts)
        out.push_back({p.y, p.x});
    return out;
}

// Apply `first`, then `second`; second's domain must cover first's range.
inline std::vector<BreakPoint> compose_tables(const std::vector<BreakPoint>& first,
                                              const std::vector<BreakPoint>& second) {
    std::vector<Rational> xs;
    xs.reserve(first.size() + second.size());
    for (const auto& p : first)
        xs.push_back(p.x);
    const auto first_inv = invert_table(first);
    for (const auto& p : second) {
        if (p.x > first.front().y && p.x < first.back().y)
            xs.push_back(eval_table(first_inv, p.x));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<BreakPoint> out;
    out.reserve(xs.size());
    for (const auto& x : xs)
        out.push_back({x, eval_table(second, eval_table(first, x))});
    return canonical_table(std::move(out));
}

inline Rational segment_slope(const BreakPoint& a, const BreakPoint& b) {
    return (b.y - a.y) / (b.x - a.x);
}

// slope = 2^k exactly; nullopt otherwise.
inline std::optional<long> log2_slope(const Rational& slope) {
    if (slope <= 0)
        return std::nullopt;
    Int n = num(slope), d = den(slope);
    if (d == 1) {
        auto k = log2_exact(n);
        if (k)
            return static_cast<long>(*k);
        return std::nullopt;
    }
    if (n == 1) {
        auto k = log2_exact(d);
        if (k)
            return -static_cast<long>(*k);
    }
    return std::nullopt;
}

}  // namespace detail

// A bare increasing PL table, used for homeomorphisms between dyadic
// intervals (not pinned to [0,1]).
struct PLFragment {
    std::vector<BreakPoint> points;

    Rational source_lo() const { return points.front().x; }
    Rational source_hi() const { return points.back().x; }
    Rational operator()(const Rational& x) const { return detail::eval_table(points, x); }
    bool operator==(const PLFragment&) const = default;
};

class PLMap {
public:
    PLMap() : pts_{{Rational(0), Rational(0)}, {Rational(1), Rational(1)}} {}

    explicit PLMap(std::vector<BreakPoint> pts) : pts_(detail::canonical_table(std::move(pts))) {
        if (pts_.front() != BreakPoint{Rational(0), Rational(0)} ||
            pts_.back() != BreakPoint{Rational(1), Rational(1)})
            throw std::invalid_argument("PLMap must fix 0 and 1");
    }

    const std::vector<BreakPoint>& points() const { return pts_; }
    std::size_t breakpoint_count() const { return pts_.size(); }

    Rational operator()(const Rational& x) const { return detail::eval_table(pts_, x); }

    bool is_identity() const { return pts_.size() == 2; }

    bool operator==(const PLMap&) const = default;

private:
    std::vector<BreakPoint> pts_;
};

inline Rational evaluate(const PLMap& f, const Rational& x) { return f(x); }

inline PLMap compose(const PLMap& f, const PLMap& g) {
    return PLMap(detail::compose_tables(f.points(), g.points()));
}

inline PLMap invert(const PLMap& f) { return PLMap(detail::invert_table(f.points())); }

// g^h = h^{-1} g h; support(conjugate(g,h)) is the image of support(g) under h.
inline PLMap conjugate(const PLMap& g, const PLMap& h) {
    return compose(compose(invert(h), g), h);
}

inline PLMap power(const PLMap& f, long n) {
    PLMap base = n < 0 ? invert(f) : f;
    unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
    PLMap acc;
    while (e > 0) {
        if (e & 1)
            acc = compose(acc, base);
        base = compose(base, base);
        e >>= 1;
    }
    return acc;
}

// Exact fixed set: per affine piece, solve slope*x + offset = x.
inline ClosedSet fixed_set(const PLMap& f) {
    std::vector<ClosedInterval> fixed;
    const auto& pts = f.points();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const BreakPoint& a = pts[i];
        const BreakPoint& b = pts[i + 1];
        Rational slope = detail::segment_slope(a, b);
        Rational offset = a.y - slope * a.x;
        if (slope == 1) {
            if (offset == 0)
                fixed.push_back({a.x, b.x});
        } else {
            Rational root = offset / (Rational(1) - slope);
            if (a.x <= root && root <= b.x)
                fixed.push_back({root, root});
        }
    }
    return ClosedSet::make(Carrier::interval, std::move(fixed));
}

inline IntervalSet support(const PLMap& f) { return complement(fixed_set(f)); }

// The affine behavior near 0: f(x) = 2^exponent * x on [0, delta].
struct Germ {
    long exponent;
    Rational delta;

    bool operator==(const Germ&) const = default;
};

inline Germ germ_at_zero(const PLMap& f) {
    const auto& pts = f.points();
    auto e = detail::log2_slope(detail::segment_slope(pts[0], pts[1]));
    if (!e)
        throw std::domain_error("germ_at_zero: first slope is not a power of 2");
    return Germ{*e, pts[1].x};
}

// Exact functional agreement on a closed interval, decided from tables.
inline bool restriction_equals(const PLMap& f, const PLMap& g, const ClosedInterval& range) {
    std::vector<Rational> xs{range.lo, range.hi};
    for (const auto* map : {&f, &g}) {
        for (const auto& p : map->points())
            if (range.lo < p.x && p.x < range.hi)
                xs.push_back(p.x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (const auto& x : xs)
        if (f(x) != g(x))
            return false;
    return true;
}

struct ValidationResult {
    bool ok = true;
    std::string violation;  // first violated clause when !ok

    explicit operator bool() const { return ok; }
};

inline ValidationResult validation_failure(std::string clause) {
    return ValidationResult{false, std::move(clause)};
}

// F-validity: dyadic breakpoints and images, power-of-2 slopes. Orientation
// and endpoint fixing are structural for PLMap.
inline ValidationResult validate_f(const PLMap& f) {
    const auto& pts = f.points();
    for (const auto& p : pts) {
        if (!is_dyadic(p.x))
            return validation_failure("breakpoint " + to_string(p.x) + " is not dyadic");
        if (!is_dyadic(p.y))
            return validation_failure("image " + to_string(p.y) + " is not dyadic");
    }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Rational slope = detail::segment_slope(pts[i], pts[i + 1]);
        if (!detail::log2_slope(slope))
            return validation_failure("slope " + to_string(slope) + " is not a power of 2");
    }
    return {};
}

// Exact image of an open set under an increasing homeomorphism of [0,1].
inline IntervalSet image(const IntervalSet& s, const PLMap& f) {
    if (s.carrier() != Carrier::interval)
        throw std::invalid_argument("image: interval carrier expected");
    std::vector<OpenInterval> parts;
    parts.reserve(s.parts().size());
    for (const auto& p : s.parts())
        parts.push_back({f(p.lo), f(p.hi)});
    return IntervalSet::make(Carrier::interval, std::move(parts));
}

inline ClosedSet image(const ClosedSet& s, const PLMap& f) {
    if (s.carrier() != Carrier::interval)
        throw std::invalid_argument("image: interval carrier expected");
    std::vector<ClosedInterval> parts;
    parts.reserve(s.parts().size());
    for (const auto& p : s.parts())
        parts.push_back({f(p.lo), f(p.hi)});
    return ClosedSet::make(Carrier::interval, std::move(parts));
}

}  // namespace thompson
