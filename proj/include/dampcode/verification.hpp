#pragma once

#include <string>
#include <vector>

// Runtime invariant battery behind the `verify` CLI subcommand: one named
// check per module-level property, independent of the unit-test framework.
namespace dampcode {

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    // Test hook: added to U1(0,0) before the closed-form/synthesized
    // agreement check, so a deliberate sign error is caught by the harness.
    double u1_perturbation = 0.0;
};

std::vector<PropertyResult> run_all_properties(const VerifyOptions& options = {});

} // namespace dampcode
