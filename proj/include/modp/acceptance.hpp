#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace modp {

// one line of the acceptance gate: A1..A10
struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CriterionResult> run_acceptance(uint64_t seed = 1);

}
