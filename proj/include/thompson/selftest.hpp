#pragma once

// The acceptance suite. Every check is exact (zero tolerance); seeds are
// fixed so repeated runs produce identical results byte for byte. The CLI's
// `selftest` subcommand prints these results; the acceptance test binary
// additionally enforces the per-criterion time budgets.

#include "thompson/analysis.hpp"
#include "thompson/catalog.hpp"
#include "thompson/json_io.hpp"
#include "thompson/witness.hpp"
#include "thompson/word.hpp"

#include <random>
#include <string>
#include <vector>

namespace thompson::selftest {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;  // first failure, empty when pass
};

namespace detail_st {

inline CriterionResult fail(int id, std::string name, std::string why) {
    return {id, std::move(name), false, std::move(why)};
}

inline CriterionResult ok(int id, std::string name) { return {id, std::move(name), true, {}}; }

inline PLMap random_f_element(std::mt19937_64& rng, int max_leaves) {
    int leaves = 2 + static_cast<int>(rng() % static_cast<unsigned long long>(max_leaves - 1));
    return to_plmap(random_element(leaves, rng()));
}

inline Rational random_dyadic(std::mt19937_64& rng) {
    unsigned k = 1 + static_cast<unsigned>(rng() % 7);
    unsigned long long a = rng() % (1ull << k);
    return make_rational(Int(a), Int(1) << k);
}

}  // namespace detail_st

// 1. Pinned constants: 1/4·x0 = 1/2 and Supp(b) = (1/4, 1/2).
inline CriterionResult pinned_constants() {
    const std::string name = "pinned-constants";
    if (evaluate(standard_x0(), Rational(1, 4)) != Rational(1, 2))
        return detail_st::fail(1, name, "evaluate(x0, 1/4) != 1/2");
    auto supp = support(standard_b());
    if (supp.components() != std::vector<OpenInterval>{{Rational(1, 4), Rational(1, 2)}})
        return detail_st::fail(1, name, "support(b) != (1/4,1/2)");
    return detail_st::ok(1, name);
}

// 2. Group axioms on 500 random tree-pair elements (<= 20 leaves).
inline CriterionResult group_axioms() {
    const std::string name = "group-axioms";
    std::mt19937_64 rng(0x5eed0002);
    const PLMap id;
    std::vector<PLMap> elems;
    elems.reserve(500);
    for (int i = 0; i < 500; ++i)
        elems.push_back(detail_st::random_f_element(rng, 20));
    for (std::size_t i = 0; i < elems.size(); ++i) {
        const PLMap& f = elems[i];
        PLMap inv = invert(f);
        if (compose(f, inv) != id)
            return detail_st::fail(2, name, "f * f^-1 != id at index " + std::to_string(i));
        if (!validate_f(inv).ok)
            return detail_st::fail(2, name, "inverse leaves F at index " + std::to_string(i));
        const PLMap& g = elems[(i + 1) % elems.size()];
        const PLMap& h = elems[(i + 2) % elems.size()];
        PLMap fg = compose(f, g);
        if (!validate_f(fg).ok)
            return detail_st::fail(2, name, "product leaves F at index " + std::to_string(i));
        if (compose(fg, h) != compose(f, compose(g, h)))
            return detail_st::fail(2, name, "associativity fails at index " + std::to_string(i));
    }
    return detail_st::ok(2, name);
}

// 3. Base generators for |i|,|j| <= 20: nontrivial, disjoint supports,
//    commuting exactly.
inline CriterionResult wreath_base_shadow() {
    const std::string name = "wreath-base-shadow";
    std::vector<PLMap> gens;
    for (long k = -20; k <= 20; ++k)
        gens.push_back(base_generator(k));
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].is_identity())
            return detail_st::fail(3, name, "base generator is trivial at k=" +
                                                std::to_string(static_cast<long>(i) - 20));
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            if (!intersect(support(gens[i]), support(gens[j])).empty())
                return detail_st::fail(3, name, "supports overlap");
            PLMap comm = compose(compose(invert(gens[i]), invert(gens[j])),
                                 compose(gens[i], gens[j]));
            if (!comm.is_identity())
                return detail_st::fail(3, name, "commutator is not the identity");
        }
    }
    return detail_st::ok(3, name);
}

// 4. Theorem-1 mechanization on 50 random conjugator sets.
inline CriterionResult theorem1_witnesses() {
    const std::string name = "normalish-witness-in-F";
    std::mt19937_64 rng(0x5eed0004);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t size = 1 + static_cast<std::size_t>(trial % 4);
        std::vector<PLMap> conjugators;
        for (std::size_t i = 0; i < size; ++i)
            conjugators.push_back(detail_st::random_f_element(rng, 25));
        Certificate cert = witness_in_F(conjugators);
        if (is_identity(cert.witness))
            return detail_st::fail(4, name, "trivial witness at trial " + std::to_string(trial));
        std::vector<Element> ks(conjugators.begin(), conjugators.end());
        VerifyOutcome replay = normalish_verify(NormalishTag::D_in_F, ks, cert.witness);
        if (!replay.ok)
            return detail_st::fail(4, name, "replay failed at trial " + std::to_string(trial) +
                                                ": " + replay.reason);
        if (replay.transcript.size() != cert.transcript.size())
            return detail_st::fail(4, name, "transcript length mismatch at trial " +
                                                std::to_string(trial));
    }
    return detail_st::ok(4, name);
}

// 5. Remark-2 mechanization on 50 random subsets of T.
inline CriterionResult remark2_witnesses() {
    const std::string name = "normalish-witness-F-in-T";
    std::mt19937_64 rng(0x5eed0005);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t size = 1 + static_cast<std::size_t>(trial % 5);
        std::vector<CircleMap> conjugators;
        for (std::size_t i = 0; i < size; ++i) {
            CircleMap t = compose(embed(detail_st::random_f_element(rng, 20)),
                                  rotation(detail_st::random_dyadic(rng)));
            conjugators.push_back(std::move(t));
        }
        Certificate cert = witness_F_in_T(conjugators);
        if (is_identity(cert.witness))
            return detail_st::fail(5, name, "trivial witness at trial " + std::to_string(trial));
        const auto& avoid = *cert.avoidance;
        for (const auto& s : avoid.points) {
            if (avoid.interval.contains(s.value) || (avoid.interval.hi == 1 && s.value == 0))
                return detail_st::fail(5, name, "avoidance interval closure touches an orbit point");
        }
        IntervalSet wsupp = support(as_circle(cert.witness));
        for (const auto& s : avoid.points) {
            if (wsupp.contains(s))
                return detail_st::fail(5, name, "witness support meets an orbit point");
        }
        std::vector<Element> ks;
        for (const auto& k : conjugators)
            ks.push_back(k);
        VerifyOutcome replay = normalish_verify(NormalishTag::F_in_T, ks, cert.witness);
        if (!replay.ok)
            return detail_st::fail(5, name, "replay failed at trial " + std::to_string(trial) +
                                                ": " + replay.reason);
    }
    return detail_st::ok(5, name);
}

// 6. Word-problem cross-oracle: tree-pair reduction vs PL composition.
inline CriterionResult word_problem_oracle() {
    const std::string name = "word-problem-cross-oracle";
    std::mt19937_64 rng(0x5eed0006);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t len = 1 + static_cast<std::size_t>(rng() % 30);
        std::vector<int> letters;
        letters.reserve(len);
        for (std::size_t i = 0; i < len; ++i) {
            int v = static_cast<int>(rng() % 4);
            letters.push_back(v == 0 ? 1 : v == 1 ? -1 : v == 2 ? 2 : -2);
        }
        WordVerdict verdict = word_problem(letters);
        if (!verdict.agree())
            return detail_st::fail(6, name, "backends disagree at trial " + std::to_string(trial));
    }
    // a known relator must be the identity through both routes
    Expr relator = parse("((x0*x1^-1)^-1) * ((x1^(x0))^-1) * (x0*x1^-1) * (x1^(x0))");
    auto letters = word_letters(relator);
    if (!letters)
        return detail_st::fail(6, name, "relator did not flatten to a word");
    WordVerdict verdict = word_problem(*letters);
    if (!verdict.tree_identity || !verdict.pl_identity)
        return detail_st::fail(6, name, "relator is not the identity");
    return detail_st::ok(6, name);
}

// 7. Fixed-set exactness on the pinned four-piece element.
inline CriterionResult fixed_set_exactness() {
    const std::string name = "fixed-set-exactness";
    PLMap f4({{Rational(0), Rational(0)},
              {Rational(1, 8), Rational(1, 16)},
              {Rational(3, 16), Rational(5, 16)},
              {Rational(1, 2), Rational(15, 16)},
              {Rational(1), Rational(1)}});
    ClosedSet expected = ClosedSet::make(Carrier::interval, {{Rational(0), Rational(0)},
                                                             {Rational(7, 48), Rational(7, 48)},
                                                             {Rational(1), Rational(1)}});
    if (fixed_set(f4) != expected)
        return detail_st::fail(7, name, "Fix(f4) != {0, 7/48, 1}");
    if (evaluate(f4, Rational(7, 48)) != Rational(7, 48))
        return detail_st::fail(7, name, "7/48 is not fixed");
    return detail_st::ok(7, name);
}

// 8. The two §-style checkers: bounded ubiquity search and the
//    empty-common-fixed-set certifier.
inline CriterionResult dynamics_checkers() {
    const std::string name = "dynamics-checkers";
    const PLMap half_copy = transplant(standard_x0(), {Rational(0), Rational(1, 2)});
    auto cert = ubiquity_search({standard_x0(), half_copy}, 1);
    if (!cert)
        return detail_st::fail(8, name, "no ubiquity certificate at depth 1");
    if (cert->word != std::vector<int>{2} ||
        cert->orbital != OpenInterval{Rational(0), Rational(1)} || cert->end != Approach::left)
        return detail_st::fail(8, name, "unexpected ubiquity certificate");
    if (ubiquity_search({standard_x0()}, 6))
        return detail_st::fail(8, name, "{x0} must be inconclusive");
    if (ubiquity_search({standard_b()}, 6))
        return detail_st::fail(8, name, "{b} must be inconclusive");

    CircleMap g1 = embed(transplant(standard_x0(), {Rational(0), Rational(3, 4)}));
    CircleMap g2 = conjugate(g1, rotation(Rational(1, 2)));
    if (!std::holds_alternative<FreeCertificate>(free_precondition({g1, g2})))
        return detail_st::fail(8, name, "rotated-support pair must certify");
    auto rejected = free_precondition({embed(standard_b()), embed(base_generator(1))});
    if (!std::holds_alternative<NotApplicable>(rejected))
        return detail_st::fail(8, name, "{b, b^x0} must be rejected");
    auto rotation_case = free_precondition({rotation(Rational(1, 2)), embed(standard_x0())});
    const auto* na = std::get_if<NotApplicable>(&rotation_case);
    if (!na || na->reason.find("empty fixed set") == std::string::npos)
        return detail_st::fail(8, name, "fixed-point-free rotation must be rejected");
    return detail_st::ok(8, name);
}

// 9. Determinism: certificate-producing pipelines serialize byte-identically
//    across independent runs (the acceptance binary re-checks this through
//    the CLI process as well).
inline CriterionResult determinism() {
    const std::string name = "determinism";
    auto produce = [] {
        std::vector<std::string> outputs;
        outputs.push_back(dump_canonical(certificate_to_json(witness_in_F({standard_x0()}))));
        outputs.push_back(dump_canonical(
            certificate_to_json(witness_F_in_T({rotation(Rational(1, 2))}))));
        const PLMap half_copy = transplant(standard_x0(), {Rational(0), Rational(1, 2)});
        std::vector<PLMap> gens{standard_x0(), half_copy};
        outputs.push_back(dump_canonical(ubiquity_to_json(gens, 3, ubiquity_search(gens, 3))));
        outputs.push_back(dump_canonical(tree_pair_to_json(random_element(20, 7))));
        std::mt19937_64 rng(0x5eed0009);
        std::vector<int> letters;
        for (int i = 0; i < 30; ++i) {
            int v = static_cast<int>(rng() % 4);
            letters.push_back(v == 0 ? 1 : v == 1 ? -1 : v == 2 ? 2 : -2);
        }
        outputs.push_back(dump_canonical(element_to_json(Element(word_to_plmap(letters)))));
        return outputs;
    };
    if (produce() != produce())
        return detail_st::fail(9, name, "repeated runs differ");
    return detail_st::ok(9, name);
}

inline std::vector<CriterionResult> run_acceptance() {
    return {pinned_constants(), group_axioms(),      wreath_base_shadow(),
            theorem1_witnesses(), remark2_witnesses(), word_problem_oracle(),
            fixed_set_exactness(), dynamics_checkers(), determinism()};
}

inline Json acceptance_to_json(const std::vector<CriterionResult>& results) {
    Json criteria = Json::array();
    bool all = true;
    for (const auto& r : results) {
        Json entry{{"id", r.id}, {"name", r.name}, {"pass", r.pass}};
        if (!r.pass)
            entry["detail"] = r.detail;
        criteria.push_back(std::move(entry));
        all = all && r.pass;
    }
    return Json{{"criteria", criteria}, {"pass", all}};
}

}  // namespace thompson::selftest
