#pragma once

// Dynamical analysis of subgroups of PL_o(I) and of the circle: orbitals,
// the one-end approach test, a bounded word search for its hypothesis, and
// the empty-common-fixed-set precondition for free subgroups.

#include "thompson/element.hpp"

#include <deque>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace thompson {

// Maximal components of the support.
inline std::vector<OpenInterval> orbitals(const PLMap& g) { return support(g).components(); }

inline std::vector<CircleArc> orbitals(const CircleMap& g) {
    return support(g).circle_components();
}

// Fix(<gens>) = ∩ Fix(gen); the group's orbitals are the components of its
// complement.
inline ClosedSet group_fixed_set(const std::vector<PLMap>& gens) {
    if (gens.empty())
        throw std::invalid_argument("group_fixed_set: no generators");
    ClosedSet acc = fixed_set(gens.front());
    for (std::size_t i = 1; i < gens.size(); ++i)
        acc = intersect(acc, fixed_set(gens[i]));
    return acc;
}

inline ClosedSet group_fixed_set(const std::vector<CircleMap>& gens) {
    if (gens.empty())
        throw std::invalid_argument("group_fixed_set: no generators");
    ClosedSet acc = fixed_set(gens.front());
    for (std::size_t i = 1; i < gens.size(); ++i)
        acc = intersect(acc, fixed_set(gens[i]));
    return acc;
}

inline std::vector<OpenInterval> group_orbitals(const std::vector<PLMap>& gens) {
    return complement(group_fixed_set(gens)).components();
}

inline std::vector<CircleArc> group_orbitals(const std::vector<CircleMap>& gens) {
    return complement(group_fixed_set(gens)).circle_components();
}

// How g meets a group orbital (a,b): sharing exactly the left endpoint
// (orbital (a,c), c strictly interior), exactly the right, both via distinct
// orbitals, the full orbital (a,b) itself, or none of these.
enum class Approach { left, right, both, full, none };

inline const char* approach_name(Approach a) {
    switch (a) {
        case Approach::left: return "left";
        case Approach::right: return "right";
        case Approach::both: return "both";
        case Approach::full: return "full";
        case Approach::none: return "none";
    }
    return "none";
}

inline Approach approaches(const PLMap& g, const OpenInterval& orbital) {
    bool left = false, right = false;
    for (const auto& o : orbitals(g)) {
        if (o == orbital)
            return Approach::full;
        if (o.lo == orbital.lo && o.hi < orbital.hi && o.hi > orbital.lo)
            left = true;
        if (o.hi == orbital.hi && o.lo > orbital.lo && o.lo < orbital.hi)
            right = true;
    }
    if (left && right)
        return Approach::both;
    if (left)
        return Approach::left;
    if (right)
        return Approach::right;
    return Approach::none;
}

struct UbiquityCertificate {
    std::vector<int> word;  // signed 1-based generator indices
    OpenInterval orbital;   // group orbital witnessing the hypothesis
    Approach end;           // left or right: the end approached exclusively
};

namespace detail {

struct PLMapLess {
    bool operator()(const PLMap& a, const PLMap& b) const {
        const auto& pa = a.points();
        const auto& pb = b.points();
        if (pa.size() != pb.size())
            return pa.size() < pb.size();
        for (std::size_t i = 0; i < pa.size(); ++i) {
            if (pa[i].x != pb[i].x)
                return pa[i].x < pb[i].x;
            if (pa[i].y != pb[i].y)
                return pa[i].y < pb[i].y;
        }
        return false;
    }
};

}  // namespace detail

// Breadth-first enumeration of freely reduced words over gens ∪ inverses,
// duplicates pruned by exact canonical-form equality. Returns the first
// word (smallest length, then lexicographic in the order g1, g1^-1, g2,
// g2^-1, ...) whose element approaches exactly one end of a group orbital.
// Inconclusive is not a refutation: the hypothesis is only semidecidable.
inline std::optional<UbiquityCertificate> ubiquity_search(const std::vector<PLMap>& gens,
                                                          int maxlen) {
    if (maxlen < 1)
        throw std::invalid_argument("ubiquity_search: maxlen must be >= 1");
    if (gens.empty())
        throw std::invalid_argument("ubiquity_search: no generators");
    const auto group_orbs = group_orbitals(gens);

    std::vector<int> letters;  // +i / -i, 1-based, in search order
    std::vector<PLMap> letter_maps;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        letters.push_back(static_cast<int>(i) + 1);
        letter_maps.push_back(gens[i]);
        letters.push_back(-(static_cast<int>(i) + 1));
        letter_maps.push_back(invert(gens[i]));
    }

    struct Node {
        PLMap element;
        std::vector<int> word;
    };
    std::set<PLMap, detail::PLMapLess> seen;
    seen.insert(PLMap());
    std::deque<Node> frontier;
    frontier.push_back({PLMap(), {}});

    auto inspect = [&](const Node& node) -> std::optional<UbiquityCertificate> {
        for (const auto& orb : group_orbs) {
            Approach a = approaches(node.element, orb);
            if (a == Approach::left || a == Approach::right)
                return UbiquityCertificate{node.word, orb, a};
        }
        return std::nullopt;
    };

    for (int length = 1; length <= maxlen; ++length) {
        std::deque<Node> next;
        for (const auto& node : frontier) {
            for (std::size_t li = 0; li < letters.size(); ++li) {
                int letter = letters[li];
                if (!node.word.empty() && node.word.back() == -letter)
                    continue;  // free reduction
                Node child{compose(node.element, letter_maps[li]), node.word};
                child.word.push_back(letter);
                if (!seen.insert(child.element).second)
                    continue;
                if (auto cert = inspect(child))
                    return cert;
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

struct FreeCertificate {
    std::vector<CircleMap> elements;
    std::vector<ClosedSet> fixed_sets;  // each nonempty; intersection empty
};

struct NotApplicable {
    std::string reason;
};

using FreePrecondition = std::variant<FreeCertificate, NotApplicable>;

// Every element fixes something, but nothing is fixed by all of them; the
// certificate licenses the existence of non-abelian free subgroups.
inline FreePrecondition free_precondition(const std::vector<CircleMap>& gens) {
    if (gens.size() < 2)
        throw std::invalid_argument("free_precondition: need at least 2 elements");
    FreeCertificate cert;
    cert.elements = gens;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        ClosedSet fs = fixed_set(gens[i]);
        if (fs.empty())
            return NotApplicable{"element " + std::to_string(i + 1) + " has empty fixed set"};
        cert.fixed_sets.push_back(std::move(fs));
    }
    ClosedSet meet = cert.fixed_sets.front();
    for (std::size_t i = 1; i < cert.fixed_sets.size(); ++i)
        meet = intersect(meet, cert.fixed_sets[i]);
    if (!meet.empty())
        return NotApplicable{"fixed sets intersect"};
    return cert;
}

}  // namespace thompson
