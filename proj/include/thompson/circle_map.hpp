#pragma once

// Orientation-preserving PL homeomorphisms of the circle R/Z, stored via the
// lift pinned on [0,1]: lift(0) in [0,1), lift(1) = lift(0) + 1, extended to
// all of R by lift(x+1) = lift(x) + 1. This is the carrier of Thompson's
// group T.

#include "thompson/interval_set.hpp"
#include "thompson/plmap.hpp"
#include "thompson/rational.hpp"

#include <stdexcept>
#include <vector>

namespace thompson {

class CircleMap {
public:
    CircleMap() : lift_{{Rational(0), Rational(0)}, {Rational(1), Rational(1)}} {}

    explicit CircleMap(std::vector<BreakPoint> lift)
        : lift_(detail::canonical_table(std::move(lift))) {
        if (lift_.front().x != 0 || lift_.back().x != 1)
            throw std::invalid_argument("circle lift must be pinned on [0,1]");
        if (lift_.front().y < 0 || lift_.front().y >= 1)
            throw std::invalid_argument("circle lift base must lie in [0,1)");
        if (lift_.back().y != lift_.front().y + 1)
            throw std::invalid_argument("circle lift must have degree 1");
    }

    const std::vector<BreakPoint>& lift() const { return lift_; }
    std::size_t breakpoint_count() const { return lift_.size(); }

    // Image of 0.
    Rational base() const { return lift_.front().y; }

    // Periodic extension of the lift to all of R.
    Rational lift_at(const Rational& x) const {
        Int k = floor_int(x);
        Rational r = x - Rational(k);
        return detail::eval_table(lift_, r) + Rational(k);
    }

    CirclePoint operator()(const CirclePoint& p) const { return CirclePoint(lift_at(p.value)); }

    bool is_identity() const { return lift_.size() == 2 && lift_.front().y == 0; }

    bool operator==(const CircleMap&) const = default;

private:
    std::vector<BreakPoint> lift_;
};

inline CirclePoint evaluate(const CircleMap& f, const CirclePoint& p) { return f(p); }

// An interval homeomorphism is a circle homeomorphism fixing 0.
inline CircleMap embed(const PLMap& f) { return CircleMap(f.points()); }

namespace detail {

// Bring the base into [0,1) by an integer shift of the lift.
inline std::vector<BreakPoint> normalize_lift(std::vector<BreakPoint> pts) {
    Int shift = floor_int(pts.front().y);
    if (shift != 0) {
        Rational s(shift);
        for (auto& p : pts)
            p.y -= s;
    }
    return pts;
}

}  // namespace detail

inline CircleMap compose(const CircleMap& f, const CircleMap& g) {
    const auto& lf = f.lift();
    std::vector<Rational> xs;
    xs.reserve(lf.size() + g.lift().size());
    for (const auto& p : lf)
        xs.push_back(p.x);
    // Pull g's breakpoints (all integer translates meeting f's range) back
    // through f.
    const auto f_inv = detail::invert_table(lf);
    const Rational range_lo = lf.front().y;
    const Rational range_hi = lf.back().y;
    for (const auto& p : g.lift()) {
        for (Int m = floor_int(range_lo - p.x); Rational(m) + p.x <= range_hi; ++m) {
            Rational t = p.x + Rational(m);
            if (t > range_lo && t < range_hi)
                xs.push_back(detail::eval_table(f_inv, t));
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<BreakPoint> out;
    out.reserve(xs.size());
    for (const auto& x : xs)
        out.push_back({x, g.lift_at(detail::eval_table(lf, x))});
    return CircleMap(detail::normalize_lift(std::move(out)));
}

inline CircleMap invert(const CircleMap& f) {
    const auto swapped = detail::invert_table(f.lift());  // lift of f^{-1} on [c, c+1]
    const Rational c = f.base();
    auto eval_inv = [&](const Rational& t) {
        int k = (t >= c) ? 0 : 1;
        return detail::eval_table(swapped, t + k) - k;
    };
    std::vector<Rational> xs{Rational(0), Rational(1)};
    for (const auto& p : swapped) {
        for (int m = 0; m <= 1; ++m) {
            Rational x = p.x - m;
            if (x > 0 && x < 1)
                xs.push_back(x);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<BreakPoint> out;
    out.reserve(xs.size());
    for (const auto& x : xs)
        out.push_back({x, eval_inv(x)});
    return CircleMap(detail::normalize_lift(std::move(out)));
}

inline CircleMap conjugate(const CircleMap& g, const CircleMap& h) {
    return compose(compose(invert(h), g), h);
}

inline CircleMap power(const CircleMap& f, long n) {
    CircleMap base = n < 0 ? invert(f) : f;
    unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
    CircleMap acc;
    while (e > 0) {
        if (e & 1)
            acc = compose(acc, base);
        base = compose(base, base);
        e >>= 1;
    }
    return acc;
}

// Fixed points are the solutions of lift(x) = x + m; with the base in [0,1)
// only m = 0, 1 can occur.
inline ClosedSet fixed_set(const CircleMap& f) {
    std::vector<ClosedInterval> fixed;
    const auto& pts = f.lift();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const BreakPoint& a = pts[i];
        const BreakPoint& b = pts[i + 1];
        Rational slope = detail::segment_slope(a, b);
        Rational offset = a.y - slope * a.x;
        for (int m = 0; m <= 1; ++m) {
            if (slope == 1) {
                if (offset == m)
                    fixed.push_back({a.x, b.x});
            } else {
                Rational root = (Rational(m) - offset) / (slope - 1);
                if (a.x <= root && root <= b.x)
                    fixed.push_back({root, root});
            }
        }
    }
    return ClosedSet::make(Carrier::circle, std::move(fixed));
}

inline IntervalSet support(const CircleMap& f) { return complement(fixed_set(f)); }

// T-validity: dyadic breakpoints and images, power-of-2 slopes.
inline ValidationResult validate_t(const CircleMap& f) {
    const auto& pts = f.lift();
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

// Exact image of a closed circle set under a circle homeomorphism.
inline ClosedSet image(const ClosedSet& s, const CircleMap& f) {
    if (s.carrier() != Carrier::circle)
        throw std::invalid_argument("image: circle carrier expected");
    std::vector<ClosedInterval> parts;
    for (const auto& p : s.parts()) {
        Rational lo = f.lift_at(p.lo);
        Rational hi = f.lift_at(p.hi);
        if (hi <= 1) {
            parts.push_back({lo, hi});
        } else if (lo >= 1) {
            parts.push_back({lo - 1, hi - 1});
        } else {
            parts.push_back({lo, Rational(1)});
            parts.push_back({Rational(0), hi - 1});
        }
    }
    return ClosedSet::make(Carrier::circle, std::move(parts));
}

// Exact image of an open circle set under a circle homeomorphism.
inline IntervalSet image(const IntervalSet& s, const CircleMap& f) {
    if (s.carrier() != Carrier::circle)
        throw std::invalid_argument("image: circle carrier expected");
    std::vector<OpenInterval> parts;
    bool contains_zero = false;
    for (const auto& p : s.parts()) {
        Rational lo = f.lift_at(p.lo);
        Rational hi = f.lift_at(p.hi);
        if (hi <= 1) {
            parts.push_back({lo, hi});
        } else if (lo >= 1) {
            parts.push_back({lo - 1, hi - 1});
        } else {
            parts.push_back({lo, Rational(1)});
            parts.push_back({Rational(0), hi - 1});
            contains_zero = true;  // 1 is interior to (lo, hi)
        }
    }
    if (s.contains_zero()) {
        // The point 0 is in the set, so its image joins the adjacent pieces.
        Rational c = mod_one(f.lift_at(Rational(0)));
        if (c == 0) {
            contains_zero = true;
        } else {
            std::vector<OpenInterval> merged;
            OpenInterval left{0, 0}, right{0, 0};
            bool found_left = false, found_right = false;
            for (auto& q : parts) {
                if (q.hi == c && !found_left) {
                    left = q;
                    found_left = true;
                } else if (q.lo == c && !found_right) {
                    right = q;
                    found_right = true;
                } else {
                    merged.push_back(q);
                }
            }
            if (!found_left || !found_right)
                throw std::logic_error("image: inconsistent pieces around the image of 0");
            merged.push_back({left.lo, right.hi});
            parts = std::move(merged);
        }
    }
    return IntervalSet::make(Carrier::circle, std::move(parts), contains_zero);
}

}  // namespace thompson
