#include "thompson/plmap.hpp"

#include "thompson/catalog.hpp"
#include "thompson/element.hpp"
#include "thompson/tree_pair.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace thompson;

namespace {

PLMap random_f(std::mt19937_64& rng, int max_leaves = 16) {
    int leaves = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_leaves - 1));
    return to_plmap(random_element(leaves, rng()));
}

// Independent fixed-point oracle: solve slope*x + offset = x piece by piece
// straight from the table, then double-check by evaluation.
std::vector<Rational> fixed_points_oracle(const PLMap& f) {
    std::vector<Rational> found;
    const auto& pts = f.points();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Rational dx = pts[i + 1].x - pts[i].x;
        Rational dy = pts[i + 1].y - pts[i].y;
        if (dy == dx)
            continue;  // identity pieces contribute intervals, handled separately
        // x (dy - dx) = x1*dy - y1*dx
        Rational root = (pts[i].x * dy - pts[i].y * dx) / (dy - dx);
        if (pts[i].x <= root && root <= pts[i + 1].x)
            found.push_back(root);
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    for (const auto& r : found)
        REQUIRE(f(r) == r);
    return found;
}

}  // namespace

TEST_CASE("evaluation and composition agree with the pinned constants") {
    const PLMap& x0 = standard_x0();
    REQUIRE(evaluate(x0, Rational(1, 4)) == Rational(1, 2));
    REQUIRE(evaluate(PLMap(), Rational(3, 7)) == Rational(3, 7));
    REQUIRE(evaluate(compose(x0, x0), Rational(1, 4)) == evaluate(x0, Rational(1, 2)));
    REQUIRE(compose(x0, invert(x0)) == PLMap());
    REQUIRE(evaluate(invert(x0), Rational(1, 2)) == Rational(1, 4));
    REQUIRE(invert(PLMap()) == PLMap());
}

TEST_CASE("conjugation moves supports") {
    const PLMap& x0 = standard_x0();
    const PLMap& b = standard_b();
    REQUIRE(conjugate(b, PLMap()) == b);
    REQUIRE(conjugate(PLMap(), b) == PLMap());
    auto moved = support(conjugate(b, x0));
    // oracle: the endpoints of supp(b) under x0
    REQUIRE(moved.components() ==
            std::vector<OpenInterval>{{evaluate(x0, Rational(1, 4)), evaluate(x0, Rational(1, 2))}});
    REQUIRE(moved.components() == std::vector<OpenInterval>{{Rational(1, 2), Rational(3, 4)}});
}

TEST_CASE("supports and fixed sets") {
    const PLMap& x0 = standard_x0();
    const PLMap& b = standard_b();
    REQUIRE(support(b).components() == std::vector<OpenInterval>{{Rational(1, 4), Rational(1, 2)}});
    REQUIRE(support(PLMap()).empty());
    REQUIRE(support(x0).components() == std::vector<OpenInterval>{{Rational(0), Rational(1)}});
    REQUIRE(fixed_set(b).parts() == std::vector<ClosedInterval>{{Rational(0), Rational(1, 4)},
                                                                {Rational(1, 2), Rational(1)}});
}

TEST_CASE("the four-piece element has the non-dyadic fixed point 7/48") {
    PLMap f4({{Rational(0), Rational(0)},
              {Rational(1, 8), Rational(1, 16)},
              {Rational(3, 16), Rational(5, 16)},
              {Rational(1, 2), Rational(15, 16)},
              {Rational(1), Rational(1)}});
    REQUIRE(validate_f(f4).ok);  // slope 4 is a power of 2; the fixed point is still non-dyadic
    auto oracle = fixed_points_oracle(f4);
    REQUIRE(oracle == std::vector<Rational>{Rational(0), Rational(7, 48), Rational(1)});
    REQUIRE(fixed_set(f4).parts() == std::vector<ClosedInterval>{{Rational(0), Rational(0)},
                                                                 {Rational(7, 48), Rational(7, 48)},
                                                                 {Rational(1), Rational(1)}});
    REQUIRE(fixed_set(f4).isolated_points() ==
            std::vector<Rational>{Rational(0), Rational(7, 48), Rational(1)});
}

TEST_CASE("germ at zero") {
    REQUIRE(germ_at_zero(PLMap()) == Germ{0, Rational(1)});
    REQUIRE(germ_at_zero(standard_x0()) == Germ{1, Rational(1, 4)});
    REQUIRE(germ_at_zero(standard_b()) == Germ{0, Rational(1, 4)});
    PLMap slope3({{Rational(0), Rational(0)}, {Rational(1, 3), Rational(1, 2)}, {Rational(1), Rational(1)}});
    REQUIRE_THROWS_AS(germ_at_zero(slope3), std::domain_error);
}

TEST_CASE("restriction equality") {
    const PLMap& x0 = standard_x0();
    const PLMap& b = standard_b();
    REQUIRE(restriction_equals(b, PLMap(), {Rational(0), Rational(1, 4)}));
    REQUIRE_FALSE(restriction_equals(x0, PLMap(), {Rational(0), Rational(1, 4)}));
    REQUIRE(restriction_equals(b, b, {Rational(0), Rational(1)}));
}

TEST_CASE("validation reports the first violated clause") {
    REQUIRE(validate_f(standard_x0()).ok);
    PLMap slope3({{Rational(0), Rational(0)}, {Rational(1, 4), Rational(3, 4)}, {Rational(1), Rational(1)}});
    auto v = validate_f(slope3);
    REQUIRE_FALSE(v.ok);
    REQUIRE(v.violation.find("power of 2") != std::string::npos);

    PLMap odd({{Rational(0), Rational(0)}, {Rational(1, 3), Rational(1, 6)}, {Rational(1), Rational(1)}});
    auto w = validate_f(odd);
    REQUIRE_FALSE(w.ok);
    REQUIRE(w.violation.find("not dyadic") != std::string::npos);

    REQUIRE(validate(Element(rotation(Rational(1, 2))), GroupKind::T).ok);
    auto f_check = validate(Element(rotation(Rational(1, 2))), GroupKind::F);
    REQUIRE_FALSE(f_check.ok);
    REQUIRE(f_check.violation == "does not stabilise 0");
}

TEST_CASE("group axioms, closure, and support images on random elements") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        PLMap f = random_f(rng);
        PLMap g = random_f(rng);
        PLMap h = random_f(rng);
        REQUIRE(compose(f, invert(f)) == PLMap());
        REQUIRE(compose(compose(f, g), h) == compose(f, compose(g, h)));
        REQUIRE(invert(invert(f)) == f);
        REQUIRE(validate_f(compose(f, g)).ok);
        REQUIRE(validate_f(invert(f)).ok);

        REQUIRE(support(conjugate(g, h)) == image(support(g), h));

        IntervalSet supp = support(f);
        ClosedSet fix = fixed_set(f);
        for (int i = 0; i <= 32; ++i) {
            Rational q(i, 32);
            REQUIRE(supp.contains(q) != fix.contains(q));
        }

        PLMap fg = compose(f, g);
        for (int i = 0; i < 256; ++i) {
            Rational q(i, 256);
            REQUIRE(evaluate(fg, q) == evaluate(g, evaluate(f, q)));
        }
    }
}
