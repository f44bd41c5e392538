#pragma once

// Constructive nontriviality of finite intersections of conjugates.
//
// D is the subgroup of F generated by the elements b^{x0^k} (k in Z), whose
// supports are the pairwise disjoint tiles I_k = (1/4,1/2)·x0^k, so D is a
// direct sum of copies of Z. witness_in_F finds a base generator lying in
// every D^{k_i}; witness_F_in_T plants a copy of x0 on a dyadic interval
// avoiding the orbit points 0·k_i, which makes every conjugate fix 0.
//
// A caution on shortcuts: a subgroup of T whose elements share a global
// fixed point need not be conjugate in T into the standard copy of F, so
// witness_F_in_T always exhibits the avoided interval and checks each
// conjugate directly instead of arguing through any such conjugation.

#include "thompson/catalog.hpp"
#include "thompson/element.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace thompson {

// I_k = (1/4,1/2)·x0^k, computed in closed form.
inline OpenInterval base_tile(long k) {
    if (k <= 0)
        return {pow2(k - 2), pow2(k - 1)};
    return {Rational(1) - pow2(-k), Rational(1) - pow2(-k - 1)};
}

inline std::optional<long> tile_index(const OpenInterval& iv) {
    if (iv.hi <= Rational(1, 2)) {
        auto d = dyadic_decompose(iv.lo);
        if (!d || d->a != 1)
            return std::nullopt;
        long k = 2 - static_cast<long>(d->k);
        if (k <= 0 && iv.hi == pow2(k - 1))
            return k;
        return std::nullopt;
    }
    auto d = dyadic_decompose(Rational(1) - iv.lo);
    if (!d || d->a != 1)
        return std::nullopt;
    long k = static_cast<long>(d->k);
    if (k >= 1 && iv.hi == Rational(1) - pow2(-k - 1))
        return k;
    return std::nullopt;
}

struct DTerm {
    long k;  // tile index
    long p;  // exponent of base_generator(k)

    bool operator==(const DTerm&) const = default;
};

// Π base_generator(k)^p over terms with distinct k; disjoint supports make
// the order irrelevant, terms are kept sorted by k.
struct DDecomposition {
    std::vector<DTerm> terms;

    bool operator==(const DDecomposition&) const = default;
};

inline PLMap recompose(const DDecomposition& d) {
    PLMap acc;
    for (const auto& t : d.terms)
        acc = compose(acc, power(base_generator(t.k), t.p));
    return acc;
}

struct DMembership {
    bool member = false;
    DDecomposition decomposition;  // meaningful when member
    std::string reason;            // failing clause when !member

    explicit operator bool() const { return member; }
};

// Structural membership test for D: every support component must be exactly
// a tile I_k, the exponent is read off the left germ slope, and the
// restriction must coincide with that power of the tile's generator.
inline DMembership d_membership(const PLMap& h) {
    if (auto v = validate_f(h); !v.ok)
        throw std::invalid_argument("d_membership: " + v.violation);
    DMembership result;
    const IntervalSet supp = support(h);
    for (const auto& component : supp.components()) {
        auto k = tile_index(component);
        if (!k) {
            result.reason = "support component (" + to_string(component.lo) + "," +
                            to_string(component.hi) + ") is not any I_k";
            return result;
        }
        // left germ slope of h at the tile is 2^p; take the piece whose
        // interior starts at component.lo (which need not be a breakpoint)
        const auto& pts = h.points();
        auto it = std::upper_bound(pts.begin(), pts.end(), component.lo,
                                   [](const Rational& v, const BreakPoint& p) { return v < p.x; });
        Rational slope = detail::segment_slope(*(it - 1), *it);
        auto p = detail::log2_slope(slope);
        if (!p)  // unreachable for F-valid input
            throw std::logic_error("d_membership: non power-of-2 slope survived validation");
        PLMap candidate = power(base_generator(*k), *p);
        if (!restriction_equals(h, candidate, {component.lo, component.hi})) {
            result.reason = "restriction to I_" + std::to_string(*k) +
                            " is not a power of its base generator";
            return result;
        }
        result.decomposition.terms.push_back({*k, *p});
    }
    std::sort(result.decomposition.terms.begin(), result.decomposition.terms.end(),
              [](const DTerm& a, const DTerm& b) { return a.k < b.k; });
    if (recompose(result.decomposition) != h) {
        result.reason = "recomposition does not reproduce the element";
        result.decomposition = {};
        return result;
    }
    result.member = true;
    return result;
}

enum class CertificateVariant { normalish_in_F, normalish_F_in_T };

struct TranscriptEntry {
    Element conjugator;
    Element conjugate;  // w^{conjugator^{-1}}: the element shown to lie in M
    std::optional<DDecomposition> decomposition;  // normalish_in_F evidence
    std::optional<CirclePoint> orbit_point;       // normalish_F_in_T: 0·conjugator
};

struct AvoidanceData {
    std::vector<CirclePoint> points;  // {0·k_i} ∪ {0}
    ClosedInterval interval;          // standard dyadic interval clear of them
};

struct Certificate {
    CertificateVariant variant;
    Element witness;
    std::vector<TranscriptEntry> transcript;
    std::optional<AvoidanceData> avoidance;  // normalish_F_in_T only
};

// Descending search j = 0, -1, -2, ... over single base generators. Each
// conjugator is affine with slope 2^{n_i} on a neighbourhood [0, δ_i] of 0,
// so once the tile I_j lies deep enough, conjugation acts on it as a pure
// dyadic dilation and sends base_generator(j) to base_generator(j - n_i);
// the search therefore terminates. The hard cap encodes that envelope:
// overrunning it means a bug, not a mathematical failure.
inline Certificate witness_in_F(const std::vector<PLMap>& conjugators) {
    long cap = 64;
    long max_abs_germ = 0;
    for (const auto& k : conjugators) {
        if (auto v = validate_f(k); !v.ok)
            throw std::invalid_argument("witness_in_F: conjugator invalid: " + v.violation);
        cap += static_cast<long>(k.breakpoint_count());
        max_abs_germ = std::max(max_abs_germ, std::labs(germ_at_zero(k).exponent));
    }
    cap += max_abs_germ;

    std::vector<PLMap> inverses;
    inverses.reserve(conjugators.size());
    for (const auto& k : conjugators)
        inverses.push_back(invert(k));

    const PLMap x0_inv = invert(standard_x0());
    PLMap candidate = standard_b();  // base_generator(0), then descend
    for (long j = 0; j >= -cap; --j) {
        std::vector<TranscriptEntry> transcript;
        transcript.reserve(conjugators.size());
        bool all_member = true;
        for (std::size_t i = 0; i < conjugators.size(); ++i) {
            PLMap moved = conjugate(candidate, inverses[i]);
            DMembership m = d_membership(moved);
            if (!m) {
                all_member = false;
                break;
            }
            transcript.push_back({Element(conjugators[i]), Element(std::move(moved)),
                                  std::move(m.decomposition), std::nullopt});
        }
        if (all_member)
            return Certificate{CertificateVariant::normalish_in_F, Element(std::move(candidate)),
                               std::move(transcript), std::nullopt};
        candidate = conjugate(candidate, x0_inv);  // base_generator(j-1)
    }
    throw std::logic_error("witness_in_F: search exceeded the hard cap; this contradicts the "
                           "termination argument and signals a bug");
}

// F = {g in T : 0·g = 0}.
inline bool f_membership_in_T(const CircleMap& g) {
    if (auto v = validate_t(g); !v.ok)
        throw std::invalid_argument("f_membership_in_T: " + v.violation);
    return g(CirclePoint()) == CirclePoint();
}

// Smallest-depth, then leftmost, standard dyadic interval whose closure
// avoids every given point (1 counts as 0 on the circle).
inline ClosedInterval avoiding_interval(const std::vector<CirclePoint>& points) {
    long depth_limit = 64 + static_cast<long>(points.size());
    for (long k = 1; k <= depth_limit; ++k) {
        Rational len = pow2(-k);
        Int cells = Int(1) << k;
        for (Int a = 0; a < cells; ++a) {
            ClosedInterval iv{Rational(a) * len, Rational(a + 1) * len};
            bool clear = true;
            for (const auto& s : points) {
                if (iv.contains(s.value) || (iv.hi == 1 && s.value == 0)) {
                    clear = false;
                    break;
                }
            }
            if (clear)
                return iv;
        }
    }
    throw std::logic_error("avoiding_interval: no clear interval within the depth limit");
}

// A copy of x0 planted on an interval avoiding {0·k_i} ∪ {0}: its support
// misses every orbit point, so every conjugate fixes 0.
inline Certificate witness_F_in_T(const std::vector<CircleMap>& conjugators) {
    for (const auto& k : conjugators) {
        if (auto v = validate_t(k); !v.ok)
            throw std::invalid_argument("witness_F_in_T: conjugator invalid: " + v.violation);
    }
    std::vector<CirclePoint> avoid{CirclePoint()};
    for (const auto& k : conjugators)
        avoid.push_back(k(CirclePoint()));
    std::sort(avoid.begin(), avoid.end());
    avoid.erase(std::unique(avoid.begin(), avoid.end()), avoid.end());

    ClosedInterval clear = avoiding_interval(avoid);
    CircleMap witness = embed(transplant(standard_x0(), clear));

    std::vector<TranscriptEntry> transcript;
    transcript.reserve(conjugators.size());
    for (const auto& k : conjugators) {
        CircleMap moved = conjugate(witness, invert(k));
        if (!f_membership_in_T(moved))
            throw std::logic_error("witness_F_in_T: conjugate does not fix 0");
        transcript.push_back({Element(k), Element(std::move(moved)), std::nullopt,
                              k(CirclePoint())});
    }
    return Certificate{CertificateVariant::normalish_F_in_T, Element(std::move(witness)),
                       std::move(transcript), AvoidanceData{std::move(avoid), std::move(clear)}};
}

enum class NormalishTag { D_in_F, F_in_T };

struct VerifyOutcome {
    bool ok = false;
    std::size_t failed_index = 0;  // conjugator position when !ok
    std::string reason;
    std::vector<TranscriptEntry> transcript;  // freshly recomputed

    explicit operator bool() const { return ok; }
};

// Independent replay: recomputes every conjugate and membership from scratch
// and never trusts an incoming certificate's transcript.
inline VerifyOutcome normalish_verify(NormalishTag tag, const std::vector<Element>& conjugators,
                                      const Element& witness) {
    VerifyOutcome out;
    if (is_identity(witness)) {
        out.reason = "witness is the identity";
        return out;
    }
    for (std::size_t i = 0; i < conjugators.size(); ++i) {
        out.failed_index = i;
        if (tag == NormalishTag::D_in_F) {
            PLMap moved = conjugate(as_interval(witness), invert(as_interval(conjugators[i])));
            DMembership m = d_membership(moved);
            if (!m) {
                out.reason = m.reason;
                return out;
            }
            out.transcript.push_back({conjugators[i], Element(std::move(moved)),
                                      std::move(m.decomposition), std::nullopt});
        } else {
            CircleMap k = as_circle(conjugators[i]);
            CircleMap moved = conjugate(as_circle(witness), invert(k));
            if (!f_membership_in_T(moved)) {
                out.reason = "witness does not fix 0·k";
                return out;
            }
            out.transcript.push_back({conjugators[i], Element(std::move(moved)), std::nullopt,
                                      k(CirclePoint())});
        }
    }
    out.ok = true;
    return out;
}

}  // namespace thompson
