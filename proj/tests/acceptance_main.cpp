// Acceptance suite runner: one pass/fail line per criterion, wall-clock
// budgets enforced, plus byte-determinism checks through the real CLI when
// its path is given as argv[1].

#include "thompson/selftest.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

struct CliRun {
    int exit_code = -1;
    std::string output;
};

CliRun run_cli(const std::string& binary, const std::string& args) {
    std::string command = binary + " " + args + " 2>/dev/null";
    CliRun result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe)
        return result;
    std::array<char, 4096> buffer{};
    std::size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace

int main(int argc, char** argv) {
    using Clock = std::chrono::steady_clock;
    // per-criterion budgets in seconds (0 = no budget)
    const double budgets[] = {0, 1, 10, 5, 30, 20, 30, 1, 10, 0};

    bool all_pass = true;
    using thompson::selftest::CriterionResult;
    const std::vector<CriterionResult (*)()> criteria = {
        thompson::selftest::pinned_constants,    thompson::selftest::group_axioms,
        thompson::selftest::wreath_base_shadow,  thompson::selftest::theorem1_witnesses,
        thompson::selftest::remark2_witnesses,   thompson::selftest::word_problem_oracle,
        thompson::selftest::fixed_set_exactness, thompson::selftest::dynamics_checkers,
        thompson::selftest::determinism};

    for (const auto& criterion : criteria) {
        auto start = Clock::now();
        CriterionResult r = criterion();
        double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        bool in_budget = budgets[r.id] == 0 || seconds <= budgets[r.id];
        bool pass = r.pass && in_budget;
        all_pass = all_pass && pass;
        std::printf("%s  %d %-28s (%.3f s)%s%s\n", pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    seconds, r.pass ? "" : (" — " + r.detail).c_str(),
                    in_budget ? "" : " — over time budget");
    }

    if (argc > 1) {
        const std::string cli = argv[1];
        const std::vector<std::pair<std::string, std::string>> commands = {
            {"selftest", "selftest"},
            {"witness-f", "witness-f --conjugator x0"},
            {"witness-t", "witness-t --conjugator 'rot(1/2)'"},
            {"random", "random --leaves 20 --seed 7"},
            {"ubiquity", "ubiquity --depth 1 x0 'transplant(x0,[0,1/2])'"},
            {"free-cert", "free-cert 'transplant(x0,[0,3/4])' 'transplant(x0,[0,3/4])^rot(1/2)'"},
        };
        for (const auto& [name, args] : commands) {
            CliRun first = run_cli(cli, args);
            CliRun second = run_cli(cli, args);
            bool pass = first.exit_code == 0 && second.exit_code == 0 && !first.output.empty() &&
                        first.output == second.output;
            all_pass = all_pass && pass;
            std::printf("%s  9 cli-determinism %-12s (exit %d)\n", pass ? "PASS" : "FAIL",
                        name.c_str(), first.exit_code);
        }
    }

    return all_pass ? 0 : 1;
}
