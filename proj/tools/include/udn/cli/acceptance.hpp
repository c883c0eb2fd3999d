#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace udn::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::vector<int> only;  // empty: all criteria
    std::function<void(const CriterionResult&)> on_result;  // called as each finishes
};

inline constexpr int kCriteria = 10;

CriterionResult run_criterion(int id, const Options& options);
std::vector<CriterionResult> run_all(const Options& options);

/// "[PASS] 3 title: detail (1.2 s)"
std::string format(const CriterionResult& r);

}  // namespace udn::acceptance
