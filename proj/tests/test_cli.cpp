#include "thompson/cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace thompson;

namespace {

struct RunOutput {
    int code;
    std::string out;
    std::string err;
};

RunOutput run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Json payload(const RunOutput& r) { return Json::parse(r.out); }

}  // namespace

TEST_CASE("eval") {
    auto r = run({"eval", "x0", "--at", "1/4"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "{\"value\":\"1/2\"}\n");

    auto elem = run({"eval", "transplant(x0,[1/4,1/2])"});
    REQUIRE(elem.code == 0);
    REQUIRE(payload(elem).at("carrier") == "interval");

    auto circle = run({"eval", "rot(1/2)", "--at", "3/4"});
    REQUIRE(payload(circle).at("value") == "1/4");
}

TEST_CASE("support, fix, orbitals, germ") {
    auto supp = run({"support", "b"});
    REQUIRE(payload(supp).at("intervals") == Json::array({Json::array({"1/4", "1/2"})}));

    auto fix = run({"fix", "b"});
    REQUIRE(payload(fix).at("intervals") == Json::array({Json::array({"0", "1/4"}),
                                                         Json::array({"1/2", "1"})}));

    auto orbs = run({"orbitals", "b", "b^(x0)"});
    REQUIRE(payload(orbs).at("orbitals") == Json::array({Json::array({"1/4", "1/2"}),
                                                         Json::array({"1/2", "3/4"})}));

    auto circle_orbs = run({"orbitals", "rot(1/2)"});
    REQUIRE(payload(circle_orbs).at("carrier") == "circle");
    REQUIRE(payload(circle_orbs).at("orbitals") == Json::array({Json::array({"0", "1"})}));

    auto germ = run({"germ", "x0"});
    REQUIRE(payload(germ) == Json{{"slope_log2", 1}, {"delta", "1/4"}});
    REQUIRE(run({"germ", "rot(1/2)"}).code == 2);
}

TEST_CASE("word problem") {
    auto id = run({"wp", "x0 * x0^-1"});
    REQUIRE(id.code == 0);
    REQUIRE(id.out == "{\"identity\":true}\n");
    auto non = run({"wp", "x0 * x1"});
    REQUIRE(payload(non).at("identity") == false);
    REQUIRE(run({"wp", "rot(1/2)"}).code == 2);
}

TEST_CASE("witness subcommands re-verify before exiting") {
    auto wf = run({"witness-f", "--conjugator", "x0"});
    REQUIRE(wf.code == 0);
    REQUIRE(payload(wf).at("variant") == "normalish_in_F");

    auto wt = run({"witness-t", "--conjugator", "rot(1/2)"});
    REQUIRE(wt.code == 0);
    Json jt = payload(wt);
    REQUIRE(jt.at("avoid").at("interval") == Json::array({"1/8", "1/4"}));
}

TEST_CASE("verify replays and rejects tampered certificates") {
    auto wt = run({"witness-t", "--conjugator", "rot(1/2)", "--conjugator", "rot(1/4)"});
    REQUIRE(wt.code == 0);

    std::string path = "cert_test_tmp.json";
    {
        std::ofstream f(path);
        f << wt.out;
    }
    auto ok = run({"verify", "@" + path});
    REQUIRE(ok.code == 0);
    REQUIRE(payload(ok).at("verified") == true);

    Json tampered = payload(wt);
    tampered["witness"] = element_to_json(Element(rotation(Rational(1, 8))));
    {
        std::ofstream f(path);
        f << tampered.dump();
    }
    auto bad = run({"verify", path});
    REQUIRE(bad.code == 1);
    REQUIRE(payload(bad).at("verified") == false);
    std::remove(path.c_str());
}

TEST_CASE("ubiquity and free-cert") {
    auto cert = run({"ubiquity", "--depth", "1", "x0", "transplant(x0,[0,1/2])"});
    REQUIRE(cert.code == 0);
    REQUIRE(payload(cert).at("word") == Json::array({2}));
    REQUIRE(payload(cert).at("end") == "left");

    auto inc = run({"ubiquity", "--depth", "6", "x0"});
    REQUIRE(inc.code == 0);
    REQUIRE(payload(inc).at("inconclusive") == true);

    auto fc = run({"free-cert", "transplant(x0,[0,3/4])", "transplant(x0,[0,3/4])^rot(1/2)"});
    REQUIRE(fc.code == 0);
    REQUIRE(payload(fc).at("intersection_empty") == true);

    auto na = run({"free-cert", "b", "b^(x0)"});
    REQUIRE(na.code == 0);
    REQUIRE(payload(na).at("not_applicable") == "fixed sets intersect");
}

TEST_CASE("random elements and element files") {
    auto one = run({"random", "--leaves", "1", "--seed", "0"});
    REQUIRE(payload(one).at("domain") == "()");
    REQUIRE(run({"random", "--leaves", "0", "--seed", "1"}).code == 2);

    auto r = run({"random", "--leaves", "12", "--seed", "99"});
    REQUIRE(r.code == 0);
    std::string path = "elem_test_tmp.json";
    {
        std::ofstream f(path);
        f << payload(r).at("element").dump();
    }
    auto supp = run({"support", "@" + path});
    REQUIRE(supp.code == 0);
    std::remove(path.c_str());
}

TEST_CASE("let bindings and human output") {
    auto r = run({"--let", "g=b^(x0)", "support", "g"});
    REQUIRE(payload(r).at("intervals") == Json::array({Json::array({"1/2", "3/4"})}));

    auto human = run({"--human", "eval", "x0", "--at", "1/4"});
    REQUIRE(human.out.find('\n') != std::string::npos);
    REQUIRE(human.out.find("\"value\"") != std::string::npos);
}

TEST_CASE("germ accepts circle elements that stabilise 0") {
    auto r = run({"germ", "b * rot(1/2) * rot(1/2)"});
    REQUIRE(r.code == 0);
    REQUIRE(payload(r) == Json{{"slope_log2", 0}, {"delta", "1/4"}});
}

TEST_CASE("output directory override") {
    setenv("THOMPSON_OUT", ".", 1);
    auto r = run({"eval", "x0", "--at", "1/4"});
    unsetenv("THOMPSON_OUT");
    REQUIRE(r.code == 0);
    std::ifstream f("eval.json");
    REQUIRE(f.good());
    std::string line;
    std::getline(f, line);
    REQUIRE(line == "{\"value\":\"1/2\"}");
    std::remove("eval.json");
}

TEST_CASE("errors map to exit code 2") {
    REQUIRE(run({"eval", "x0 * * x1"}).code == 2);
    REQUIRE(run({"eval", "unknown_name"}).code == 2);
    REQUIRE(run({"support", "@missing_file.json"}).code == 2);
    REQUIRE(run({"nonsense"}).code == 2);
}

TEST_CASE("outputs are byte-identical across runs") {
    for (auto args : {std::vector<std::string>{"witness-f", "--conjugator", "x0"},
                      std::vector<std::string>{"witness-t", "--conjugator", "rot(1/2)"},
                      std::vector<std::string>{"random", "--leaves", "20", "--seed", "7"},
                      std::vector<std::string>{"ubiquity", "--depth", "3", "x0", "b"}}) {
        auto a = run(args);
        auto b = run(args);
        REQUIRE(a.code == b.code);
        REQUIRE(a.out == b.out);
    }
}
