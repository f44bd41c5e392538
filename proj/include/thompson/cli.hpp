#pragma once

// The command-line surface. All machine output is canonical JSON on stdout;
// exit codes: 0 ok, 1 verification failed, 2 input error. Element arguments
// are expressions, or @path references to files holding element JSON.

#include "thompson/json_io.hpp"
#include "thompson/selftest.hpp"
#include "thompson/word.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace thompson::cli {

enum class Status { ok = 0, verification_failed = 1, input_error = 2 };

struct CommandResult {
    Status status = Status::ok;
    Json payload;
    std::string subcommand;
};

struct HelpRequested {
    std::string text;
};

namespace detail_cli {

inline Element parse_element_arg(const std::string& arg, const Env& env) {
    if (!arg.empty() && arg.front() == '@') {
        std::ifstream in(arg.substr(1));
        if (!in)
            throw std::invalid_argument("cannot open element file '" + arg.substr(1) + "'");
        Json j = Json::parse(in);
        return element_from_json(j);
    }
    return eval(parse(arg), env);
}

inline Env build_env(const std::vector<std::string>& lets) {
    Env env;
    for (const auto& binding : lets) {
        auto eq = binding.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--let expects name=expr");
        std::string name = binding.substr(0, eq);
        env.insert_or_assign(name, eval(parse(binding.substr(eq + 1)), env));
    }
    return env;
}

inline std::vector<PLMap> interval_elements(const std::vector<std::string>& args, const Env& env,
                                            const char* what) {
    std::vector<PLMap> out;
    for (const auto& a : args) {
        Element e = parse_element_arg(a, env);
        if (carrier_of(e) != Carrier::interval)
            throw std::invalid_argument(std::string(what) + " expects interval elements");
        out.push_back(std::get<PLMap>(std::move(e)));
    }
    return out;
}

inline std::vector<CircleMap> circle_elements(const std::vector<std::string>& args, const Env& env) {
    std::vector<CircleMap> out;
    for (const auto& a : args)
        out.push_back(as_circle(parse_element_arg(a, env)));
    return out;
}

inline CommandResult verify_payload(const Json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "normalish") {
        std::string variant = j.at("variant").get<std::string>();
        NormalishTag tag = variant == "normalish_in_F" ? NormalishTag::D_in_F : NormalishTag::F_in_T;
        Element witness = element_from_json(j.at("witness"));
        std::vector<Element> conjugators;
        for (const auto& entry : j.at("conjugators"))
            conjugators.push_back(element_from_json(entry));
        VerifyOutcome outcome = normalish_verify(tag, conjugators, witness);
        if (outcome.ok)
            return {Status::ok, Json{{"verified", true}}};
        return {Status::verification_failed,
                Json{{"verified", false},
                     {"failed_conjugator", outcome.failed_index},
                     {"reason", outcome.reason}}};
    }
    if (type == "ubiquity") {
        if (j.contains("inconclusive"))
            return {Status::verification_failed,
                    Json{{"verified", false}, {"reason", "inconclusive result carries no certificate"}}};
        std::vector<PLMap> gens;
        for (const auto& entry : j.at("generators"))
            gens.push_back(std::get<PLMap>(element_from_json(entry)));
        PLMap element;
        for (const auto& w : j.at("word")) {
            int letter = w.get<int>();
            std::size_t idx = static_cast<std::size_t>(std::abs(letter)) - 1;
            if (idx >= gens.size())
                throw std::invalid_argument("word letter out of range");
            element = compose(element, letter > 0 ? gens[idx] : invert(gens[idx]));
        }
        OpenInterval orbital{rational_from_json(j.at("orbital").at(0)),
                             rational_from_json(j.at("orbital").at(1))};
        auto orbs = group_orbitals(gens);
        bool listed = std::find(orbs.begin(), orbs.end(), orbital) != orbs.end();
        Approach end = approaches(element, orbital);
        std::string claimed = j.at("end").get<std::string>();
        bool one_sided = (end == Approach::left && claimed == "left") ||
                         (end == Approach::right && claimed == "right");
        if (listed && one_sided)
            return {Status::ok, Json{{"verified", true}}};
        return {Status::verification_failed,
                Json{{"verified", false},
                     {"reason", listed ? "word does not approach the claimed end exclusively"
                                       : "orbital is not a group orbital"}}};
    }
    if (type == "free_precondition") {
        if (j.contains("not_applicable"))
            return {Status::verification_failed,
                    Json{{"verified", false}, {"reason", "not_applicable carries no certificate"}}};
        std::vector<CircleMap> elements;
        for (const auto& entry : j.at("elements"))
            elements.push_back(as_circle(element_from_json(entry)));
        auto outcome = free_precondition(elements);
        if (std::holds_alternative<FreeCertificate>(outcome))
            return {Status::ok, Json{{"verified", true}}};
        return {Status::verification_failed,
                Json{{"verified", false}, {"reason", std::get<NotApplicable>(outcome).reason}}};
    }
    throw std::invalid_argument("unknown certificate type '" + type + "'");
}

}  // namespace detail_cli

inline CommandResult dispatch(const std::vector<std::string>& args) {
    CLI::App app{"exact computations in the Thompson groups F and T"};
    app.require_subcommand(1);

    bool human = false;
    std::vector<std::string> lets;
    app.add_flag("--human", human, "indent output for reading");
    app.add_option("--let", lets, "bind name=expr for later expressions")->take_all();

    std::string expr_arg, at_arg, word_arg, cert_path;
    std::vector<std::string> expr_args, conjugator_args;
    int depth = 4;
    int leaves = 0;
    unsigned long long seed = 0;

    auto* cmd_eval = app.add_subcommand("eval", "evaluate an element expression");
    cmd_eval->add_option("expr", expr_arg)->required();
    cmd_eval->add_option("--at", at_arg, "apply the element to the given rational");

    auto* cmd_support = app.add_subcommand("support", "open set of moved points");
    cmd_support->add_option("expr", expr_arg)->required();

    auto* cmd_fix = app.add_subcommand("fix", "closed set of fixed points");
    cmd_fix->add_option("expr", expr_arg)->required();

    auto* cmd_orbitals = app.add_subcommand("orbitals", "orbitals of the group the elements generate");
    cmd_orbitals->add_option("exprs", expr_args)->required();

    auto* cmd_germ = app.add_subcommand("germ", "affine behavior near 0");
    cmd_germ->add_option("expr", expr_arg)->required();

    auto* cmd_wp = app.add_subcommand("wp", "word problem through both backends");
    cmd_wp->add_option("word", word_arg)->required();

    auto* cmd_wf = app.add_subcommand("witness-f", "normalish witness for D in F");
    cmd_wf->add_option("--conjugator", conjugator_args)->required()->take_all();

    auto* cmd_wt = app.add_subcommand("witness-t", "normalish witness for F in T");
    cmd_wt->add_option("--conjugator", conjugator_args)->required()->take_all();

    auto* cmd_ubiquity = app.add_subcommand("ubiquity", "bounded search for the one-end hypothesis");
    cmd_ubiquity->add_option("--depth", depth, "maximal word length");
    cmd_ubiquity->add_option("exprs", expr_args)->required();

    auto* cmd_free = app.add_subcommand("free-cert", "empty-common-fixed-set certificate");
    cmd_free->add_option("exprs", expr_args)->required();

    auto* cmd_random = app.add_subcommand("random", "pseudo-random tree-pair element");
    cmd_random->add_option("--leaves", leaves)->required();
    cmd_random->add_option("--seed", seed)->required();

    auto* cmd_verify = app.add_subcommand("verify", "replay a certificate file");
    cmd_verify->add_option("certificate", cert_path)->required();

    auto* cmd_selftest = app.add_subcommand("selftest", "run the acceptance suite");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(e.what());
    }

    Env env = detail_cli::build_env(lets);
    CommandResult result;
    result.subcommand = app.get_subcommands().front()->get_name();

    if (*cmd_eval) {
        Element e = detail_cli::parse_element_arg(expr_arg, env);
        if (!at_arg.empty()) {
            Rational q = parse_rational(at_arg);
            if (carrier_of(e) == Carrier::interval)
                result.payload = Json{{"value", to_string(evaluate(std::get<PLMap>(e), q))}};
            else
                result.payload =
                    Json{{"value", to_string(std::get<CircleMap>(e)(CirclePoint(q)).value)}};
        } else {
            result.payload = element_to_json(e);
        }
    } else if (*cmd_support) {
        result.payload = interval_set_to_json(support(detail_cli::parse_element_arg(expr_arg, env)));
    } else if (*cmd_fix) {
        result.payload = closed_set_to_json(fixed_set(detail_cli::parse_element_arg(expr_arg, env)));
    } else if (*cmd_orbitals) {
        Json orbitals_json = Json::array();
        bool circle = false;
        for (const auto& a : expr_args)
            circle = circle || carrier_of(detail_cli::parse_element_arg(a, env)) == Carrier::circle;
        if (circle) {
            for (const auto& arc : group_orbitals(detail_cli::circle_elements(expr_args, env))) {
                if (arc.full)
                    orbitals_json.push_back(pair_to_json(Rational(0), Rational(1)));
                else
                    orbitals_json.push_back(pair_to_json(arc.lo, arc.hi));
            }
        } else {
            for (const auto& o :
                 group_orbitals(detail_cli::interval_elements(expr_args, env, "orbitals")))
                orbitals_json.push_back(pair_to_json(o.lo, o.hi));
        }
        result.payload = Json{{"carrier", circle ? "circle" : "interval"}, {"orbitals", orbitals_json}};
    } else if (*cmd_germ) {
        Element e = detail_cli::parse_element_arg(expr_arg, env);
        if (auto v = validate(e, GroupKind::F); !v.ok)
            throw std::invalid_argument("germ: " + v.violation);
        result.payload = germ_to_json(germ_at_zero(as_interval(e)));
    } else if (*cmd_wp) {
        auto letters = word_letters(parse(word_arg));
        if (!letters)
            throw std::invalid_argument("wp expects a word over x0 and x1");
        WordVerdict verdict = word_problem(*letters);
        if (!verdict.agree()) {
            result.status = Status::verification_failed;
            result.payload = Json{{"error", "word-problem backends disagree"},
                                  {"tree_pair", verdict.tree_identity},
                                  {"pl", verdict.pl_identity}};
        } else {
            result.payload = Json{{"identity", verdict.pl_identity}};
        }
    } else if (*cmd_wf) {
        auto conjugators = detail_cli::interval_elements(conjugator_args, env, "witness-f");
        Certificate cert = witness_in_F(conjugators);
        std::vector<Element> ks(conjugators.begin(), conjugators.end());
        if (!normalish_verify(NormalishTag::D_in_F, ks, cert.witness).ok) {
            result.status = Status::verification_failed;
            result.payload = Json{{"error", "certificate failed independent replay"}};
        } else {
            result.payload = certificate_to_json(cert);
        }
    } else if (*cmd_wt) {
        auto conjugators = detail_cli::circle_elements(conjugator_args, env);
        Certificate cert = witness_F_in_T(conjugators);
        std::vector<Element> ks(conjugators.begin(), conjugators.end());
        if (!normalish_verify(NormalishTag::F_in_T, ks, cert.witness).ok) {
            result.status = Status::verification_failed;
            result.payload = Json{{"error", "certificate failed independent replay"}};
        } else {
            result.payload = certificate_to_json(cert);
        }
    } else if (*cmd_ubiquity) {
        auto gens = detail_cli::interval_elements(expr_args, env, "ubiquity");
        auto cert = ubiquity_search(gens, depth);
        result.payload = ubiquity_to_json(gens, depth, cert);
        if (cert) {
            CommandResult check = detail_cli::verify_payload(result.payload);
            if (check.status != Status::ok)
                return check;
        }
    } else if (*cmd_free) {
        auto gens = detail_cli::circle_elements(expr_args, env);
        auto outcome = free_precondition(gens);
        result.payload = free_precondition_to_json(outcome);
        if (std::holds_alternative<FreeCertificate>(outcome)) {
            CommandResult check = detail_cli::verify_payload(result.payload);
            if (check.status != Status::ok)
                return check;
        }
    } else if (*cmd_random) {
        TreePair p = random_element(leaves, seed);
        Json j = tree_pair_to_json(p);
        j["element"] = element_to_json(Element(to_plmap(p)));
        result.payload = std::move(j);
    } else if (*cmd_verify) {
        std::string path = cert_path;
        if (!path.empty() && path.front() == '@')
            path.erase(0, 1);
        std::ifstream in(path);
        if (!in)
            throw std::invalid_argument("cannot open certificate file '" + path + "'");
        return detail_cli::verify_payload(Json::parse(in));
    } else if (*cmd_selftest) {
        auto results = selftest::run_acceptance();
        result.payload = selftest::acceptance_to_json(results);
        if (!result.payload.at("pass").get<bool>())
            result.status = Status::verification_failed;
    }

    return result;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    bool human = std::find(args.begin(), args.end(), "--human") != args.end();
    try {
        CommandResult result = dispatch(args);
        std::string text = human ? result.payload.dump(2) : dump_canonical(result.payload);
        out << text << "\n";
        if (const char* dir = std::getenv("THOMPSON_OUT"); dir && !result.subcommand.empty()) {
            std::ofstream f(std::filesystem::path(dir) / (result.subcommand + ".json"));
            f << text << "\n";
        }
        return static_cast<int>(result.status);
    } catch (const HelpRequested& h) {
        out << h.text;
        return 0;
    } catch (const std::exception& e) {
        out << Json{{"error", e.what()}}.dump() << "\n";
        err << "error: " << e.what() << "\n";
        return static_cast<int>(Status::input_error);
    }
}

}  // namespace thompson::cli
