#pragma once

// The named elements used throughout: the generator x0 (pinned so that
// 1/4 * x0 = 1/2), x1 and b as transplanted copies of x0, dyadic rotations
// of the circle, and the interval-transplant construction that plants a copy
// of F on any dyadic subinterval.
//
// Note: this x0 table is the mirror of the convention common elsewhere in
// the literature; the value of x0 at 1/4 pins the choice.

#include "thompson/circle_map.hpp"
#include "thompson/plmap.hpp"
#include "thompson/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace thompson {

inline const PLMap& standard_x0() {
    static const PLMap x0({{Rational(0), Rational(0)},
                           {Rational(1, 4), Rational(1, 2)},
                           {Rational(1, 2), Rational(3, 4)},
                           {Rational(1), Rational(1)}});
    return x0;
}

// x ↦ x + d on the circle; d must be dyadic so the result lies in T.
inline CircleMap rotation(const Rational& d) {
    if (!is_dyadic(d))
        throw std::invalid_argument("rotation: amount must be dyadic");
    Rational base = mod_one(d);
    return CircleMap({{Rational(0), base}, {Rational(1), base + 1}});
}

namespace detail {

// Largest standard dyadic interval starting at `s`, of length at most `cap`.
inline Rational max_standard_length_at(const Rational& s, const Rational& cap) {
    auto d = dyadic_decompose(s);
    if (!d)
        throw std::invalid_argument("dyadic endpoint expected");
    Rational len = d->k == 0 ? Rational(1) : pow2(-static_cast<long>(d->k));
    while (len > cap)
        len /= 2;
    return len;
}

}  // namespace detail

// PL homeomorphism source -> target with dyadic breakpoints and power-of-2
// slopes: both intervals are greedily cut into matching lists of standard
// dyadic intervals, mapped affinely piece to piece.
inline PLFragment dyadic_rescale(const ClosedInterval& source, const ClosedInterval& target) {
    for (const auto* iv : {&source, &target}) {
        if (iv->lo >= iv->hi)
            throw std::invalid_argument("dyadic_rescale: empty interval");
        if (!is_dyadic(iv->lo) || !is_dyadic(iv->hi))
            throw std::invalid_argument("dyadic_rescale: endpoints must be dyadic");
    }
    std::vector<BreakPoint> pts{{source.lo, target.lo}};
    Rational s = source.lo, t = target.lo;
    while (s < source.hi || t < target.hi) {
        Rational ls = detail::max_standard_length_at(s, source.hi - s);
        Rational lt = detail::max_standard_length_at(t, target.hi - t);
        bool finish_s = s + ls == source.hi;
        bool finish_t = t + lt == target.hi;
        // keep the two sides in step: neither may finish alone
        if (finish_s && !finish_t)
            ls /= 2;
        else if (finish_t && !finish_s)
            lt /= 2;
        s += ls;
        t += lt;
        pts.push_back({s, t});
    }
    return PLFragment{detail::canonical_table(std::move(pts))};
}

// φ^{-1} g φ for φ = dyadic_rescale([0,1], target), extended by the identity
// outside target: a copy of g supported inside the target interval.
inline PLMap transplant(const PLMap& g, const ClosedInterval& target) {
    if (target.lo < 0 || target.hi > 1)
        throw std::invalid_argument("transplant: target must lie inside [0,1]");
    if (auto v = validate_f(g); !v.ok)
        throw std::invalid_argument("transplant: " + v.violation);
    PLFragment phi = dyadic_rescale({Rational(0), Rational(1)}, target);
    auto inner = detail::compose_tables(detail::compose_tables(detail::invert_table(phi.points), g.points()),
                                        phi.points);
    std::vector<BreakPoint> pts;
    if (target.lo > 0)
        pts.push_back({Rational(0), Rational(0)});
    pts.insert(pts.end(), inner.begin(), inner.end());
    if (target.hi < 1)
        pts.push_back({Rational(1), Rational(1)});
    return PLMap(std::move(pts));
}

inline const PLMap& standard_x1() {
    static const PLMap x1 = transplant(standard_x0(), {Rational(1, 2), Rational(1)});
    return x1;
}

// b: a copy of x0 supported exactly on (1/4, 1/2).
inline const PLMap& standard_b() {
    static const PLMap b = transplant(standard_x0(), {Rational(1, 4), Rational(1, 2)});
    return b;
}

// b^{x0^k}: the k-th generator of the wreath base group D; its support is
// the tile (1/4,1/2)·x0^k.
inline PLMap base_generator(long k) {
    return conjugate(standard_b(), power(standard_x0(), k));
}

// Generators of the copy of F supported in a dyadic interval.
inline std::pair<PLMap, PLMap> b_family(const ClosedInterval& target) {
    return {transplant(standard_x0(), target), transplant(standard_x1(), target)};
}

}  // namespace thompson
