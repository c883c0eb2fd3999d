// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <cstdlib>
#include <iostream>
#include <string>

#include "udn/cli/acceptance.hpp"

int main(int argc, char** argv) {
    udn::acceptance::Options opts;
    for (int i = 1; i < argc; ++i) opts.only.push_back(std::atoi(argv[i]));
    opts.on_result = [](const udn::acceptance::CriterionResult& r) {
        std::cout << udn::acceptance::format(r) << std::endl;
    };
    const auto results = udn::acceptance::run_all(opts);
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
