#include "thompson/circle_map.hpp"

#include "thompson/catalog.hpp"
#include "thompson/tree_pair.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace thompson;

namespace {

CircleMap random_t(std::mt19937_64& rng) {
    int leaves = 2 + static_cast<int>(rng() % 12);
    PLMap f = to_plmap(random_element(leaves, rng()));
    unsigned k = 1 + static_cast<unsigned>(rng() % 6);
    Rational d = make_rational(Int(rng() % (1ull << k)), Int(1) << k);
    return compose(embed(f), rotation(d));
}

}  // namespace

TEST_CASE("rotations") {
    CircleMap half = rotation(Rational(1, 2));
    REQUIRE(half(CirclePoint(Rational(3, 4))) == CirclePoint(Rational(1, 4)));
    REQUIRE(compose(half, half) == CircleMap());
    REQUIRE(rotation(Rational(0)) == CircleMap());
    REQUIRE(fixed_set(half).empty());
    REQUIRE(support(half).circle_components() ==
            std::vector<CircleArc>{{Rational(0), Rational(0), true}});
    REQUIRE_THROWS_AS(rotation(Rational(1, 3)), std::invalid_argument);
}

TEST_CASE("embedding F into the circle") {
    CircleMap b = embed(standard_b());
    REQUIRE(b(CirclePoint()) == CirclePoint());
    REQUIRE(b(CirclePoint(Rational(5, 16))) == CirclePoint(Rational(3, 8)));
    REQUIRE(validate_t(b).ok);
    // fixed set keeps the {0,1}-symmetric preimage
    REQUIRE(fixed_set(b).parts() == std::vector<ClosedInterval>{{Rational(0), Rational(1, 4)},
                                                                {Rational(1, 2), Rational(1)}});
    REQUIRE(fixed_set(b).contains(CirclePoint()));
}

TEST_CASE("lift normalization keeps the base in [0,1)") {
    CircleMap r34 = rotation(Rational(3, 4));
    CircleMap r12 = rotation(Rational(1, 2));
    CircleMap sum = compose(r34, r12);
    REQUIRE(sum == rotation(Rational(1, 4)));
    REQUIRE(sum.base() == Rational(1, 4));
    REQUIRE(invert(r34) == rotation(Rational(1, 4)));
}

TEST_CASE("group axioms and support images on random circle elements") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 40; ++trial) {
        CircleMap f = random_t(rng);
        CircleMap g = random_t(rng);
        CircleMap h = random_t(rng);
        REQUIRE(validate_t(f).ok);
        REQUIRE(compose(f, invert(f)) == CircleMap());
        REQUIRE(invert(invert(f)) == f);
        REQUIRE(compose(compose(f, g), h) == compose(f, compose(g, h)));
        REQUIRE(validate_t(compose(f, g)).ok);

        REQUIRE(support(conjugate(g, h)) == image(support(g), h));
        REQUIRE(fixed_set(conjugate(g, h)) == image(fixed_set(g), h));

        // evaluation matches the composed lift at sample points
        CircleMap fg = compose(f, g);
        for (int i = 0; i < 32; ++i) {
            CirclePoint q(Rational(i, 32));
            REQUIRE(fg(q) == g(f(q)));
        }
    }
}

TEST_CASE("fixed points of a conjugated interval map on the circle") {
    CircleMap g1 = embed(transplant(standard_x0(), {Rational(0), Rational(3, 4)}));
    REQUIRE(fixed_set(g1).parts() == std::vector<ClosedInterval>{{Rational(0), Rational(0)},
                                                                 {Rational(3, 4), Rational(1)}});
    CircleMap g2 = conjugate(g1, rotation(Rational(1, 2)));
    REQUIRE(fixed_set(g2).parts() ==
            std::vector<ClosedInterval>{{Rational(1, 4), Rational(1, 2)}});
    REQUIRE(intersect(fixed_set(g1), fixed_set(g2)).empty());
}
