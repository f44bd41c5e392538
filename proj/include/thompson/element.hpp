#pragma once

// A group element of either carrier. Interval elements promote to circle
// elements when mixed with circle-only operands (F sits inside T as the
// stabilizer of 0); the reverse direction is never implicit.

#include "thompson/circle_map.hpp"
#include "thompson/plmap.hpp"

#include <stdexcept>
#include <variant>

namespace thompson {

using Element = std::variant<PLMap, CircleMap>;

inline Carrier carrier_of(const Element& e) {
    return std::holds_alternative<PLMap>(e) ? Carrier::interval : Carrier::circle;
}

inline PLMap as_interval(const Element& e) {
    if (const auto* f = std::get_if<PLMap>(&e))
        return *f;
    const auto& c = std::get<CircleMap>(e);
    if (c.base() == 0)  // the stabilizer of 0 restricts to [0,1]
        return PLMap(c.lift());
    throw std::invalid_argument("circle element in an interval-only context");
}

inline CircleMap as_circle(const Element& e) {
    if (const auto* f = std::get_if<PLMap>(&e))
        return embed(*f);
    return std::get<CircleMap>(e);
}

inline bool is_identity(const Element& e) {
    return std::visit([](const auto& f) { return f.is_identity(); }, e);
}

// Equality as circle homeomorphisms (interval elements embed).
inline bool same_element(const Element& a, const Element& b) {
    if (a.index() == b.index())
        return a == b;
    return as_circle(a) == as_circle(b);
}

namespace detail {

template <typename Op>
Element binary_op(const Element& a, const Element& b, Op op) {
    if (carrier_of(a) == Carrier::interval && carrier_of(b) == Carrier::interval)
        return op(std::get<PLMap>(a), std::get<PLMap>(b));
    return op(as_circle(a), as_circle(b));
}

}  // namespace detail

inline Element compose(const Element& a, const Element& b) {
    return detail::binary_op(a, b, [](const auto& f, const auto& g) -> Element { return compose(f, g); });
}

inline Element invert(const Element& e) {
    return std::visit([](const auto& f) -> Element { return invert(f); }, e);
}

inline Element conjugate(const Element& g, const Element& h) {
    return detail::binary_op(g, h, [](const auto& f, const auto& k) -> Element { return conjugate(f, k); });
}

inline Element power(const Element& e, long n) {
    return std::visit([n](const auto& f) -> Element { return power(f, n); }, e);
}

inline IntervalSet support(const Element& e) {
    return std::visit([](const auto& f) { return support(f); }, e);
}

inline ClosedSet fixed_set(const Element& e) {
    return std::visit([](const auto& f) { return fixed_set(f); }, e);
}

enum class GroupKind { F, T };

// kind F: dyadic data, power-of-2 slopes, and the element stabilises 0.
// kind T: dyadic data and power-of-2 slopes on the circle.
inline ValidationResult validate(const Element& e, GroupKind kind) {
    if (const auto* f = std::get_if<PLMap>(&e))
        return validate_f(*f);  // an interval map is valid in T as well
    const auto& c = std::get<CircleMap>(e);
    auto result = validate_t(c);
    if (!result.ok)
        return result;
    if (kind == GroupKind::F && c.base() != 0)
        return validation_failure("does not stabilise 0");
    return result;
}

}  // namespace thompson
