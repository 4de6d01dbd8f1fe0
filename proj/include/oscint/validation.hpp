#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oscint/quadrature.hpp"

namespace oscint {

// One verified property: lhs is the measured quantity (residual, deviation,
// magnitude), rhs the allowance it must stay under. margin is relative
// headroom, (rhs - lhs) / max(rhs, tiny).
struct ValidationCase {
    std::string suite;
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = false;
};

struct ValidationSummary {
    std::uint64_t seed = 0;
    std::vector<ValidationCase> cases;
    bool all_pass = false;

    // {"schema":1,"seed":..,"all_pass":..,"cases":[{suite,name,lhs,rhs,margin,pass}..]}
    std::string to_json() const;
};

// suites: coefficients (recursion identities, float-vs-exact), spaces (the
// seeded inequality battery), ibp (randomized single-step identities),
// independence (y0, column depth, split radius), bounds (a-priori constant
// over the damping ladder plus its large-|a| asymptote)
const std::vector<std::string>& validation_suite_names();

// Runs the named suites (all when empty) with randomized cases drawn from the
// seed; identical seeds give identical cases and byte-identical JSON.
ValidationSummary run_validation(const std::vector<std::string>& suites, std::uint64_t seed,
                                 const QuadratureConfig& cfg = {});

}  // namespace oscint
