#include "thompson/json_io.hpp"

#include "thompson/catalog.hpp"
#include "thompson/tree_pair.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace thompson;

TEST_CASE("element wire format") {
    Json j = element_to_json(Element(standard_x0()));
    REQUIRE(j.at("carrier") == "interval");
    REQUIRE(j.at("breakpoints")[1] == Json::array({"1/4", "1/2"}));
    REQUIRE(std::get<PLMap>(element_from_json(j)) == standard_x0());

    Json r = element_to_json(Element(rotation(Rational(3, 4))));
    REQUIRE(r.at("carrier") == "circle");
    REQUIRE(r.at("breakpoints") == Json::array({Json::array({"0", "3/4"}),
                                                Json::array({"1", "7/4"})}));
    REQUIRE(std::get<CircleMap>(element_from_json(r)) == rotation(Rational(3, 4)));

    REQUIRE_THROWS_AS(element_from_json(Json{{"carrier", "sphere"}, {"breakpoints", Json::array()}}),
                      std::invalid_argument);
}

TEST_CASE("interval set wire format round-trips") {
    auto supp = support(standard_b());
    Json j = interval_set_to_json(supp);
    REQUIRE(j.at("intervals") == Json::array({Json::array({"1/4", "1/2"})}));
    REQUIRE(interval_set_from_json(j) == supp);

    // wrapping arc on the circle
    auto arc = IntervalSet::make(Carrier::circle,
                                 {{Rational(3, 4), Rational(1)}, {Rational(0), Rational(1, 4)}}, true);
    Json ja = interval_set_to_json(arc);
    REQUIRE(ja.at("intervals") == Json::array({Json::array({"3/4", "1/4"})}));
    REQUIRE(interval_set_from_json(ja) == arc);

    auto full = IntervalSet::make(Carrier::circle, {{Rational(0), Rational(1)}}, true);
    REQUIRE(interval_set_from_json(interval_set_to_json(full)) == full);
    auto punctured = IntervalSet::make(Carrier::circle, {{Rational(0), Rational(1)}});
    REQUIRE(interval_set_from_json(interval_set_to_json(punctured)) == punctured);

    std::mt19937_64 rng(81);
    for (int i = 0; i < 100; ++i) {
        CircleMap g = compose(embed(to_plmap(random_element(2 + static_cast<int>(rng() % 10), rng()))),
                              rotation(make_rational(Int(rng() % 16), Int(16))));
        IntervalSet s = support(g);
        REQUIRE(interval_set_from_json(interval_set_to_json(s)) == s);
        ClosedSet c = fixed_set(g);
        REQUIRE(closed_set_from_json(closed_set_to_json(c)) == c);
    }
}

TEST_CASE("closed set wire format keeps isolated points") {
    PLMap f4({{Rational(0), Rational(0)},
              {Rational(1, 8), Rational(1, 16)},
              {Rational(3, 16), Rational(5, 16)},
              {Rational(1, 2), Rational(15, 16)},
              {Rational(1), Rational(1)}});
    Json j = closed_set_to_json(fixed_set(f4));
    REQUIRE(j.at("isolated") == Json::array({"0", "7/48", "1"}));
    REQUIRE(j.at("intervals").empty());
    REQUIRE(closed_set_from_json(j) == fixed_set(f4));

    // circle seam: an arc through 0 plus an isolated point
    auto seam = ClosedSet::make(Carrier::circle, {{Rational(0), Rational(1, 8)},
                                                  {Rational(1, 2), Rational(1, 2)},
                                                  {Rational(7, 8), Rational(1)}});
    Json js = closed_set_to_json(seam);
    REQUIRE(js.at("intervals") == Json::array({Json::array({"7/8", "1/8"})}));
    REQUIRE(js.at("isolated") == Json::array({"1/2"}));
    REQUIRE(closed_set_from_json(js) == seam);

    // the single point 0 on the circle
    auto origin = ClosedSet::make(Carrier::circle, {{Rational(0), Rational(0)}});
    Json jo = closed_set_to_json(origin);
    REQUIRE(jo.at("isolated") == Json::array({"0"}));
    REQUIRE(closed_set_from_json(jo) == origin);
}

TEST_CASE("certificates serialize with complete transcripts") {
    Certificate cert = witness_in_F({standard_x0()});
    Json j = certificate_to_json(cert);
    REQUIRE(j.at("type") == "normalish");
    REQUIRE(j.at("variant") == "normalish_in_F");
    REQUIRE(j.at("conjugators").size() == 1);
    REQUIRE(j.at("transcript")[0].at("decomposition") == Json::array({Json::array({-1, 1})}));
    REQUIRE(std::get<PLMap>(element_from_json(j.at("witness"))) == standard_b());

    Certificate certT = witness_F_in_T({rotation(Rational(1, 2))});
    Json jt = certificate_to_json(certT);
    REQUIRE(jt.at("variant") == "normalish_F_in_T");
    REQUIRE(jt.at("avoid").at("interval") == Json::array({"1/8", "1/4"}));
    REQUIRE(jt.at("avoid").at("points") == Json::array({"0", "1/2"}));
    REQUIRE(jt.at("transcript")[0].at("orbit_point") == "1/2");
}

TEST_CASE("canonical dumps are byte-stable") {
    Certificate cert = witness_in_F({standard_x0()});
    REQUIRE(dump_canonical(certificate_to_json(cert)) ==
            dump_canonical(certificate_to_json(witness_in_F({standard_x0()}))));
}
