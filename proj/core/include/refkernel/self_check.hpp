#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace refkernel {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail; // worst measured value, or the failure message
};

// Seeded end-to-end property checks over randomized instances: feature-map
// Gram vs kernel-route equality, positive semidefiniteness, training-feature
// identity, centering sums, case-1 reconstruction of the centered base
// kernel, and solver KKT conditions. eigen_tol is the truncation cutoff used
// throughout; the production value is 1e-6 and the case-1 reconstruction
// check fails for loose cutoffs by design.
std::vector<CheckResult> run_self_check(std::uint64_t seed = 1, double eigen_tol = 1e-6);

} // namespace refkernel
