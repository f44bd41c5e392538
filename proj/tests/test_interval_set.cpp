#include "thompson/interval_set.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace thompson;

namespace {

IntervalSet iv(std::vector<OpenInterval> parts) {
    return IntervalSet::make(Carrier::interval, std::move(parts));
}

IntervalSet random_set(std::mt19937_64& rng) {
    std::vector<Rational> cuts;
    int n = 2 * (1 + static_cast<int>(rng() % 3));
    for (int i = 0; i < n; ++i) {
        unsigned k = 2 + static_cast<unsigned>(rng() % 6);
        cuts.push_back(make_rational(Int(rng() % ((1ull << k) + 1)), Int(1) << k));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<OpenInterval> parts;
    for (std::size_t i = 0; i + 1 < cuts.size(); i += 2)
        parts.push_back({cuts[i], cuts[i + 1]});
    return iv(std::move(parts));
}

}  // namespace

TEST_CASE("open intervals meeting only at an endpoint have empty intersection") {
    auto a = iv({{Rational(1, 4), Rational(1, 2)}});
    auto b = iv({{Rational(1, 2), Rational(3, 4)}});
    REQUIRE(intersect(a, b).empty());
}

TEST_CASE("complement of an open interval in [0,1]") {
    auto c = complement(iv({{Rational(1, 4), Rational(1, 2)}}));
    REQUIRE(c.parts() == std::vector<ClosedInterval>{{Rational(0), Rational(1, 4)},
                                                     {Rational(1, 2), Rational(1)}});
}

TEST_CASE("closed intersection keeps isolated points") {
    auto a = ClosedSet::make(Carrier::interval,
                             {{Rational(0), Rational(1, 4)}, {Rational(1, 2), Rational(1)}});
    auto b = ClosedSet::make(Carrier::interval,
                             {{Rational(0), Rational(1, 2)}, {Rational(3, 4), Rational(1)}});
    auto meet = intersect(a, b);
    REQUIRE(meet.parts() == std::vector<ClosedInterval>{{Rational(0), Rational(1, 4)},
                                                        {Rational(1, 2), Rational(1, 2)},
                                                        {Rational(3, 4), Rational(1)}});
    REQUIRE(meet.isolated_points() == std::vector<Rational>{Rational(1, 2)});

    // membership oracle at all multiples of 1/16
    for (int i = 0; i <= 16; ++i) {
        Rational q(i, 16);
        REQUIRE(meet.contains(q) == (a.contains(q) && b.contains(q)));
    }
}

TEST_CASE("union does not merge components across an excluded endpoint") {
    auto u = unite(iv({{Rational(0), Rational(1, 2)}}), iv({{Rational(1, 2), Rational(1)}}));
    REQUIRE(u.components().size() == 2);
    REQUIRE_FALSE(u.contains(Rational(1, 2)));
    auto v = unite(iv({{Rational(0), Rational(1, 2)}}), iv({{Rational(1, 4), Rational(3, 4)}}));
    REQUIRE(v.components() == std::vector<OpenInterval>{{Rational(0), Rational(3, 4)}});
}

TEST_CASE("random sets: double complement, disjointness, membership oracle") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        IntervalSet a = random_set(rng);
        REQUIRE(complement(complement(a)) == a);
        ClosedSet c = complement(a);
        for (int i = 0; i <= 64; ++i) {
            Rational q(i, 64);
            bool scan = false;
            for (const auto& p : a.parts())
                scan = scan || (p.lo < q && q < p.hi);
            REQUIRE(a.contains(q) == scan);
            REQUIRE(c.contains(q) == !scan);
        }
        IntervalSet b = random_set(rng);
        IntervalSet meet = intersect(a, b);
        IntervalSet join = unite(a, b);
        for (int i = 0; i <= 64; ++i) {
            Rational q(i, 64);
            REQUIRE(meet.contains(q) == (a.contains(q) && b.contains(q)));
            REQUIRE(join.contains(q) == (a.contains(q) || b.contains(q)));
        }
    }
}

TEST_CASE("carrier mismatch is rejected") {
    auto a = iv({{Rational(0), Rational(1, 2)}});
    auto b = IntervalSet::make(Carrier::circle, {{Rational(0), Rational(1, 2)}});
    REQUIRE_THROWS_AS(unite(a, b), std::invalid_argument);
}

TEST_CASE("circle sets: wrap through 0") {
    // the arc (3/4, 1/4) through 0
    auto arc = IntervalSet::make(Carrier::circle,
                                 {{Rational(3, 4), Rational(1)}, {Rational(0), Rational(1, 4)}}, true);
    REQUIRE(arc.contains(CirclePoint(Rational(0))));
    REQUIRE(arc.contains(Rational(7, 8)));
    REQUIRE_FALSE(arc.contains(Rational(1, 2)));

    auto comps = arc.circle_components();
    REQUIRE(comps.size() == 1);
    REQUIRE(comps[0] == CircleArc{Rational(3, 4), Rational(1, 4)});
    REQUIRE(comps[0].contains(Rational(0)));

    ClosedSet comp = complement(arc);
    REQUIRE(comp.parts() == std::vector<ClosedInterval>{{Rational(1, 4), Rational(3, 4)}});
    REQUIRE(complement(comp) == arc);
}

TEST_CASE("circle sets: full circle and isolated seam point") {
    auto full = IntervalSet::make(Carrier::circle, {{Rational(0), Rational(1)}}, true);
    REQUIRE(full.circle_components() == std::vector<CircleArc>{{Rational(0), Rational(0), true}});
    REQUIRE(complement(full).empty());

    // circle minus the single point 0
    auto punctured = IntervalSet::make(Carrier::circle, {{Rational(0), Rational(1)}});
    REQUIRE_FALSE(punctured.contains(CirclePoint()));
    ClosedSet zero_only = complement(punctured);
    REQUIRE(zero_only.isolated_points() == std::vector<Rational>{Rational(0)});
    REQUIRE(complement(zero_only) == punctured);
}
