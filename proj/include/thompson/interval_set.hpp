#pragma once

// Exact finite unions of intervals over the unit interval and the circle.
//
// Open sets (IntervalSet) are stored as their maximal open components inside
// [0,1]; on the circle the set is split at 0 and a wrap flag records whether
// the point 0 itself belongs to the set. Closed sets are stored as disjoint
// closed components, degenerate components being isolated points; circle
// closed sets keep the {0,1}-symmetric preimage (0 is in the set iff both a
// [0,..] and a [..,1] component are present).

#include "thompson/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace thompson {

enum class Carrier { interval, circle };

inline const char* carrier_name(Carrier c) {
    return c == Carrier::interval ? "interval" : "circle";
}

struct OpenInterval {
    Rational lo, hi;  // lo < hi, the set (lo, hi)

    bool operator==(const OpenInterval&) const = default;
};

struct ClosedInterval {
    Rational lo, hi;  // lo <= hi; lo == hi is an isolated point

    bool is_point() const { return lo == hi; }
    bool contains(const Rational& q) const { return lo <= q && q <= hi; }
    bool operator==(const ClosedInterval&) const = default;
};

// A maximal component of an open circle set, endpoints in [0,1). hi <= lo
// means the arc passes through the 0/1 seam; `full` marks the whole circle.
struct CircleArc {
    Rational lo, hi;
    bool full = false;

    bool passes_seam() const { return full || hi <= lo; }
    bool contains(const Rational& point_in_unit) const {
        if (full)
            return true;
        const Rational& x = point_in_unit;
        if (lo < hi)
            return lo < x && x < hi;
        return x > lo || x < hi;
    }
    bool operator==(const CircleArc&) const = default;
};

namespace detail {

inline void check_unit_range(const Rational& lo, const Rational& hi) {
    if (lo < 0 || hi > 1 || lo >= hi)
        throw std::invalid_argument("interval endpoints must satisfy 0 <= lo < hi <= 1");
}

// Merge overlapping open intervals; endpoint-touching components stay
// separate (the shared endpoint is not in the set).
inline std::vector<OpenInterval> normalize_open(std::vector<OpenInterval> parts) {
    for (const auto& p : parts)
        check_unit_range(p.lo, p.hi);
    std::sort(parts.begin(), parts.end(), [](const OpenInterval& a, const OpenInterval& b) {
        if (a.lo != b.lo)
            return a.lo < b.lo;
        return a.hi < b.hi;
    });
    std::vector<OpenInterval> out;
    for (auto& p : parts) {
        if (!out.empty() && p.lo < out.back().hi) {
            if (p.hi > out.back().hi)
                out.back().hi = p.hi;
        } else {
            out.push_back(std::move(p));
        }
    }
    return out;
}

// Merge touching or overlapping closed intervals.
inline std::vector<ClosedInterval> normalize_closed(std::vector<ClosedInterval> parts) {
    for (const auto& p : parts) {
        if (p.lo > p.hi || p.lo < 0 || p.hi > 1)
            throw std::invalid_argument("closed interval endpoints must satisfy 0 <= lo <= hi <= 1");
    }
    std::sort(parts.begin(), parts.end(), [](const ClosedInterval& a, const ClosedInterval& b) {
        if (a.lo != b.lo)
            return a.lo < b.lo;
        return a.hi < b.hi;
    });
    std::vector<ClosedInterval> out;
    for (auto& p : parts) {
        if (!out.empty() && p.lo <= out.back().hi) {
            if (p.hi > out.back().hi)
                out.back().hi = p.hi;
        } else {
            out.push_back(std::move(p));
        }
    }
    return out;
}

inline std::vector<OpenInterval> intersect_open(const std::vector<OpenInterval>& a,
                                                const std::vector<OpenInterval>& b) {
    std::vector<OpenInterval> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        Rational lo = std::max(a[i].lo, b[j].lo);
        Rational hi = std::min(a[i].hi, b[j].hi);
        if (lo < hi)
            out.push_back({lo, hi});
        if (a[i].hi < b[j].hi)
            ++i;
        else
            ++j;
    }
    return out;
}

}  // namespace detail

class ClosedSet;

class IntervalSet {
public:
    IntervalSet() : carrier_(Carrier::interval) {}
    explicit IntervalSet(Carrier c) : carrier_(c) {}

    // Builds the union of the given open intervals. `contains_zero` is only
    // meaningful on the circle and marks that the point 0 is in the set.
    static IntervalSet make(Carrier c, std::vector<OpenInterval> parts, bool contains_zero = false) {
        IntervalSet s(c);
        s.parts_ = detail::normalize_open(std::move(parts));
        if (contains_zero) {
            if (c != Carrier::circle)
                throw std::invalid_argument("only circle sets may contain the point 0");
            if (!s.touches_zero_both_sides())
                throw std::invalid_argument("circle set containing 0 must be open around 0");
            s.wraps_ = true;
        }
        return s;
    }

    Carrier carrier() const { return carrier_; }
    const std::vector<OpenInterval>& parts() const { return parts_; }
    bool contains_zero() const { return wraps_; }
    bool empty() const { return parts_.empty(); }

    bool contains(const Rational& q) const {
        if (carrier_ == Carrier::circle) {
            Rational r = mod_one(q);
            if (r == 0)
                return wraps_;
            return contains_line(r);
        }
        if (q < 0 || q > 1)
            return false;
        return contains_line(q);
    }
    bool contains(const CirclePoint& p) const { return contains(p.value); }

    // Maximal components on the line carrier.
    const std::vector<OpenInterval>& components() const {
        if (carrier_ != Carrier::interval)
            throw std::logic_error("components(): use circle_components() on the circle");
        return parts_;
    }

    // Maximal components on the circle, sorted by lo; the component passing
    // through 0 (if any) comes last.
    std::vector<CircleArc> circle_components() const {
        if (carrier_ != Carrier::circle)
            throw std::logic_error("circle_components(): interval carrier");
        std::vector<CircleArc> out;
        if (parts_.empty())
            return out;
        if (wraps_) {
            if (parts_.size() == 1)  // invariant forces (0,1): the whole circle
                return {CircleArc{Rational(0), Rational(0), true}};
            for (std::size_t i = 1; i + 1 < parts_.size(); ++i)
                out.push_back({parts_[i].lo, parts_[i].hi});
            out.push_back({parts_.back().lo, parts_.front().hi});  // arc through 0
            return out;
        }
        for (const auto& p : parts_)
            out.push_back({p.lo, p.hi == 1 ? Rational(0) : p.hi});
        return out;
    }

    bool operator==(const IntervalSet&) const = default;

private:
    bool contains_line(const Rational& q) const {
        auto it = std::upper_bound(parts_.begin(), parts_.end(), q,
                                   [](const Rational& v, const OpenInterval& p) { return v < p.hi; });
        return it != parts_.end() && it->lo < q && q < it->hi;
    }

    bool touches_zero_both_sides() const {
        return !parts_.empty() && parts_.front().lo == 0 && parts_.back().hi == 1;
    }

    friend IntervalSet unite(const IntervalSet&, const IntervalSet&);
    friend IntervalSet intersect(const IntervalSet&, const IntervalSet&);
    friend ClosedSet complement(const IntervalSet&);
    friend IntervalSet complement(const ClosedSet&);

    Carrier carrier_;
    std::vector<OpenInterval> parts_;
    bool wraps_ = false;  // circle only: point 0 is in the set
};

class ClosedSet {
public:
    ClosedSet() : carrier_(Carrier::interval) {}
    explicit ClosedSet(Carrier c) : carrier_(c) {}

    static ClosedSet make(Carrier c, std::vector<ClosedInterval> parts) {
        ClosedSet s(c);
        s.parts_ = detail::normalize_closed(std::move(parts));
        if (c == Carrier::circle)
            s.enforce_zero_symmetry();
        return s;
    }

    Carrier carrier() const { return carrier_; }
    const std::vector<ClosedInterval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }

    bool contains(const Rational& q) const {
        Rational r = q;
        if (carrier_ == Carrier::circle)
            r = mod_one(q);
        else if (q < 0 || q > 1)
            return false;
        auto it = std::upper_bound(parts_.begin(), parts_.end(), r,
                                   [](const Rational& v, const ClosedInterval& p) { return v < p.lo; });
        if (it != parts_.begin()) {
            --it;
            if (it->contains(r))
                return true;
        }
        // Circle: the representative of 0 also lives at 1.
        if (carrier_ == Carrier::circle && r == 0 && !parts_.empty())
            return parts_.back().hi == 1;
        return false;
    }
    bool contains(const CirclePoint& p) const { return contains(p.value); }

    std::vector<Rational> isolated_points() const {
        std::vector<Rational> out;
        for (const auto& p : parts_)
            if (p.is_point())
                out.push_back(p.lo);
        if (carrier_ == Carrier::circle) {
            // [0,0] and [1,1] are the same isolated point; report it once as 0.
            bool zero = !out.empty() && out.front() == 0;
            if (!out.empty() && out.back() == 1) {
                out.pop_back();
                if (!zero)
                    out.insert(out.begin(), Rational(0));
            }
        }
        return out;
    }

    std::vector<ClosedInterval> solid_components() const {
        std::vector<ClosedInterval> out;
        for (const auto& p : parts_)
            if (!p.is_point())
                out.push_back(p);
        return out;
    }

    bool operator==(const ClosedSet&) const = default;

private:
    void enforce_zero_symmetry() {
        bool at0 = !parts_.empty() && parts_.front().lo == 0;
        bool at1 = !parts_.empty() && parts_.back().hi == 1;
        if (at0 && !at1)
            parts_.push_back({Rational(1), Rational(1)});
        else if (at1 && !at0)
            parts_.insert(parts_.begin(), {Rational(0), Rational(0)});
    }

    friend ClosedSet intersect(const ClosedSet&, const ClosedSet&);
    friend ClosedSet complement(const IntervalSet&);
    friend IntervalSet complement(const ClosedSet&);

    Carrier carrier_;
    std::vector<ClosedInterval> parts_;
};

inline void require_same_carrier(Carrier a, Carrier b) {
    if (a != b)
        throw std::invalid_argument("carrier mismatch");
}

inline IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
    require_same_carrier(a.carrier(), b.carrier());
    std::vector<OpenInterval> parts = a.parts_;
    parts.insert(parts.end(), b.parts_.begin(), b.parts_.end());
    return IntervalSet::make(a.carrier_, std::move(parts), a.wraps_ || b.wraps_);
}

inline IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
    require_same_carrier(a.carrier(), b.carrier());
    return IntervalSet::make(a.carrier_, detail::intersect_open(a.parts_, b.parts_),
                             a.wraps_ && b.wraps_);
}

inline ClosedSet intersect(const ClosedSet& a, const ClosedSet& b) {
    require_same_carrier(a.carrier(), b.carrier());
    std::vector<ClosedInterval> out;
    std::size_t i = 0, j = 0;
    const auto& pa = a.parts();
    const auto& pb = b.parts();
    while (i < pa.size() && j < pb.size()) {
        Rational lo = std::max(pa[i].lo, pb[j].lo);
        Rational hi = std::min(pa[i].hi, pb[j].hi);
        if (lo <= hi)
            out.push_back({lo, hi});
        if (pa[i].hi < pb[j].hi)
            ++i;
        else
            ++j;
    }
    return ClosedSet::make(a.carrier(), std::move(out));
}

// Complement of an open set within its carrier.
inline ClosedSet complement(const IntervalSet& s) {
    std::vector<ClosedInterval> out;
    Rational cursor = 0;
    for (const auto& p : s.parts_) {
        if (cursor <= p.lo)
            out.push_back({cursor, p.lo});
        cursor = p.hi;
    }
    if (cursor <= 1)
        out.push_back({cursor, Rational(1)});
    if (s.carrier_ == Carrier::circle && s.wraps_) {
        // 0 belongs to the open set; drop its degenerate complement pieces.
        std::erase_if(out, [](const ClosedInterval& c) {
            return (c.lo == 0 && c.hi == 0) || (c.lo == 1 && c.hi == 1);
        });
    }
    return ClosedSet::make(s.carrier_, std::move(out));
}

// Complement of a closed set within its carrier. On the interval carrier the
// closed set must contain both endpoints (true for every fixed set there).
inline IntervalSet complement(const ClosedSet& s) {
    bool wraps = false;
    if (s.carrier_ == Carrier::circle) {
        wraps = !s.contains(Rational(0));
    } else {
        if (!s.contains(Rational(0)) || !s.contains(Rational(1)))
            throw std::logic_error("complement of a closed set missing an endpoint is not open in [0,1]");
    }
    std::vector<OpenInterval> out;
    Rational cursor = 0;
    for (const auto& p : s.parts_) {
        if (cursor < p.lo)
            out.push_back({cursor, p.lo});
        cursor = p.hi;
    }
    if (cursor < 1)
        out.push_back({cursor, Rational(1)});
    return IntervalSet::make(s.carrier_, std::move(out), wraps);
}

}  // namespace thompson
