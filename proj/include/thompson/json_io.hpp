#pragma once

// JSON wire formats. Rationals travel as "p/q" strings; elements as
// breakpoint tables; circle sets use [lo,hi] pairs with hi <= lo marking an
// arc through 0 and ["0","1"] the whole circle. Dumping nlohmann objects
// (sorted keys, no whitespace) keeps every output byte-deterministic.

#include "thompson/analysis.hpp"
#include "thompson/element.hpp"
#include "thompson/tree_pair.hpp"
#include "thompson/witness.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace thompson {

using Json = nlohmann::json;

inline Json rational_to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const Json& j) {
    if (!j.is_string())
        throw std::invalid_argument("expected a rational string");
    return parse_rational(j.get<std::string>());
}

inline Json pair_to_json(const Rational& lo, const Rational& hi) {
    return Json::array({to_string(lo), to_string(hi)});
}

inline Json element_to_json(const Element& e) {
    const bool circle = carrier_of(e) == Carrier::circle;
    const auto& pts = circle ? std::get<CircleMap>(e).lift() : std::get<PLMap>(e).points();
    Json breaks = Json::array();
    for (const auto& p : pts)
        breaks.push_back(pair_to_json(p.x, p.y));
    return Json{{"carrier", circle ? "circle" : "interval"}, {"breakpoints", breaks}};
}

inline Element element_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("carrier") || !j.contains("breakpoints"))
        throw std::invalid_argument("element JSON needs carrier and breakpoints");
    std::vector<BreakPoint> pts;
    for (const auto& entry : j.at("breakpoints")) {
        if (!entry.is_array() || entry.size() != 2)
            throw std::invalid_argument("breakpoint must be a [x, y] pair");
        pts.push_back({rational_from_json(entry[0]), rational_from_json(entry[1])});
    }
    std::string carrier = j.at("carrier").get<std::string>();
    if (carrier == "interval")
        return PLMap(std::move(pts));
    if (carrier == "circle")
        return CircleMap(std::move(pts));
    throw std::invalid_argument("unknown carrier '" + carrier + "'");
}

inline Json interval_set_to_json(const IntervalSet& s) {
    Json intervals = Json::array();
    if (s.carrier() == Carrier::interval) {
        for (const auto& p : s.components())
            intervals.push_back(pair_to_json(p.lo, p.hi));
    } else {
        for (const auto& arc : s.circle_components()) {
            if (arc.full)
                intervals.push_back(pair_to_json(Rational(0), Rational(1)));
            else
                intervals.push_back(pair_to_json(arc.lo, arc.hi));
        }
    }
    return Json{{"carrier", carrier_name(s.carrier())}, {"intervals", intervals}};
}

inline IntervalSet interval_set_from_json(const Json& j) {
    std::string carrier = j.at("carrier").get<std::string>();
    std::vector<OpenInterval> parts;
    bool contains_zero = false;
    for (const auto& entry : j.at("intervals")) {
        Rational lo = rational_from_json(entry.at(0));
        Rational hi = rational_from_json(entry.at(1));
        if (carrier == "interval") {
            parts.push_back({std::move(lo), std::move(hi)});
            continue;
        }
        if (lo == 0 && hi == 1) {  // whole circle
            parts.push_back({Rational(0), Rational(1)});
            contains_zero = true;
        } else if (lo < hi) {
            parts.push_back({std::move(lo), std::move(hi)});
        } else if (hi == 0) {
            parts.push_back({std::move(lo), Rational(1)});
        } else {  // arc through 0
            parts.push_back({std::move(lo), Rational(1)});
            parts.push_back({Rational(0), std::move(hi)});
            contains_zero = true;
        }
    }
    Carrier c = carrier == "circle" ? Carrier::circle : Carrier::interval;
    return IntervalSet::make(c, std::move(parts), contains_zero);
}

inline Json closed_set_to_json(const ClosedSet& s) {
    Json intervals = Json::array();
    std::vector<Rational> isolated;
    auto plain = [&](const ClosedInterval& p) {
        if (p.is_point())
            isolated.push_back(p.lo);
        else
            intervals.push_back(pair_to_json(p.lo, p.hi));
    };
    const auto& parts = s.parts();
    if (s.carrier() == Carrier::interval || parts.empty()) {
        for (const auto& p : parts)
            plain(p);
    } else {
        bool contains0 = parts.front().lo == 0 && parts.back().hi == 1;
        if (!contains0) {
            for (const auto& p : parts)
                plain(p);
        } else if (parts.size() == 1) {
            intervals.push_back(pair_to_json(Rational(0), Rational(1)));  // whole circle
        } else {
            for (std::size_t i = 1; i + 1 < parts.size(); ++i)
                plain(parts[i]);
            // first and last join across the seam
            const Rational& a = parts.back().lo;
            const Rational& b = parts.front().hi;
            if (a == 1 && b == 0)
                isolated.push_back(Rational(0));
            else if (a == 1)
                intervals.push_back(pair_to_json(Rational(0), b));
            else
                intervals.push_back(pair_to_json(a, b == 1 ? Rational(1) : b));
        }
    }
    std::sort(isolated.begin(), isolated.end());
    Json iso = Json::array();
    for (const auto& p : isolated)
        iso.push_back(to_string(p));
    return Json{{"carrier", carrier_name(s.carrier())}, {"intervals", intervals}, {"isolated", iso}};
}

inline ClosedSet closed_set_from_json(const Json& j) {
    std::string carrier = j.at("carrier").get<std::string>();
    Carrier c = carrier == "circle" ? Carrier::circle : Carrier::interval;
    std::vector<ClosedInterval> parts;
    for (const auto& entry : j.at("intervals")) {
        Rational lo = rational_from_json(entry.at(0));
        Rational hi = rational_from_json(entry.at(1));
        if (c == Carrier::interval || lo < hi) {
            parts.push_back({std::move(lo), std::move(hi)});
        } else if (hi == 0) {
            parts.push_back({std::move(lo), Rational(1)});
        } else {  // closed arc through the seam (lo >= hi, hi > 0)
            parts.push_back({std::move(lo), Rational(1)});
            parts.push_back({Rational(0), std::move(hi)});
        }
    }
    for (const auto& entry : j.at("isolated")) {
        Rational p = rational_from_json(entry);
        parts.push_back({p, p});
    }
    return ClosedSet::make(c, std::move(parts));
}

inline Json tree_pair_to_json(const TreePair& p) {
    return Json{{"domain", p.domain.to_parens()}, {"range", p.range.to_parens()}};
}

inline Json germ_to_json(const Germ& g) {
    return Json{{"slope_log2", g.exponent}, {"delta", to_string(g.delta)}};
}

inline Json decomposition_to_json(const DDecomposition& d) {
    Json terms = Json::array();
    for (const auto& t : d.terms)
        terms.push_back(Json::array({t.k, t.p}));
    return terms;
}

inline const char* variant_name(CertificateVariant v) {
    return v == CertificateVariant::normalish_in_F ? "normalish_in_F" : "normalish_F_in_T";
}

inline Json certificate_to_json(const Certificate& cert) {
    Json conjugators = Json::array();
    Json transcript = Json::array();
    for (const auto& entry : cert.transcript) {
        conjugators.push_back(element_to_json(entry.conjugator));
        Json record{{"conjugate", element_to_json(entry.conjugate)}};
        if (entry.decomposition)
            record["decomposition"] = decomposition_to_json(*entry.decomposition);
        if (entry.orbit_point)
            record["orbit_point"] = to_string(entry.orbit_point->value);
        transcript.push_back(std::move(record));
    }
    Json out{{"type", "normalish"},
             {"variant", variant_name(cert.variant)},
             {"witness", element_to_json(cert.witness)},
             {"conjugators", conjugators},
             {"transcript", transcript}};
    if (cert.avoidance) {
        Json pts = Json::array();
        for (const auto& p : cert.avoidance->points)
            pts.push_back(to_string(p.value));
        out["avoid"] = Json{{"points", pts},
                            {"interval", pair_to_json(cert.avoidance->interval.lo,
                                                      cert.avoidance->interval.hi)}};
    }
    return out;
}

inline Json ubiquity_to_json(const std::vector<PLMap>& gens, int maxlen,
                             const std::optional<UbiquityCertificate>& cert) {
    Json generators = Json::array();
    for (const auto& g : gens)
        generators.push_back(element_to_json(Element(g)));
    Json out{{"type", "ubiquity"}, {"generators", generators}, {"maxlen", maxlen}};
    if (cert) {
        out["word"] = cert->word;
        out["orbital"] = pair_to_json(cert->orbital.lo, cert->orbital.hi);
        out["end"] = approach_name(cert->end);
    } else {
        out["inconclusive"] = true;
    }
    return out;
}

inline Json free_precondition_to_json(const FreePrecondition& r) {
    Json out{{"type", "free_precondition"}};
    if (const auto* na = std::get_if<NotApplicable>(&r)) {
        out["not_applicable"] = na->reason;
        return out;
    }
    const auto& cert = std::get<FreeCertificate>(r);
    Json elements = Json::array();
    Json fixed = Json::array();
    for (const auto& g : cert.elements)
        elements.push_back(element_to_json(Element(g)));
    for (const auto& fs : cert.fixed_sets)
        fixed.push_back(closed_set_to_json(fs));
    out["elements"] = elements;
    out["fixed_sets"] = fixed;
    out["intersection_empty"] = true;
    return out;
}

// Canonical (byte-deterministic) rendering.
inline std::string dump_canonical(const Json& j) { return j.dump(); }

}  // namespace thompson
