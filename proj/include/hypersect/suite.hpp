#pragma once

#include "hypersect/report.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hypersect {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    Json metrics;
};

struct Criterion {
    int id;
    std::string name;
    std::function<CriterionResult(const QuadratureConfig&)> run;
};

/// The acceptance battery. Every tolerance is fixed inside the criterion.
const std::vector<Criterion>& acceptance_criteria();

std::vector<CriterionResult> run_acceptance_battery(const QuadratureConfig& cfg = {});

Json to_json(const CriterionResult& r);

}  // namespace hypersect
