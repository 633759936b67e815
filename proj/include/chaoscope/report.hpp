#pragma once

#include <string>
#include <vector>

#include "space.hpp"

namespace chaoscope {

struct LadderEntry {
    long long k = 0;   // burn-in prefix length or iteration index
    double dh = 0.0;   // Hausdorff distance to the reference at that k

    bool operator==(const LadderEntry&) const = default;
};

/// Result of comparing a family of tail sets (or successive iterates)
/// against a reference set.
struct ConvergenceReport {
    std::string reference;          // human-readable description of the reference set
    double tol = 0.0;
    std::vector<LadderEntry> ladder;
    bool converged = false;

    bool operator==(const ConvergenceReport&) const = default;
};

enum class BasinOutcome { attracted, not_attracted_within_budget, diverged };

inline const char* basin_outcome_name(BasinOutcome o) {
    switch (o) {
        case BasinOutcome::attracted: return "ATTRACTED";
        case BasinOutcome::not_attracted_within_budget: return "NOT_ATTRACTED_WITHIN_BUDGET";
        case BasinOutcome::diverged: return "DIVERGED";
    }
    return "?";
}

struct BasinVerdict {
    SpacePoint probe;
    BasinOutcome outcome = BasinOutcome::not_attracted_within_budget;
    long long k_reached = 0;  // iterations actually performed
    double final_dh = 0.0;    // last Hausdorff distance measured (inf if none)

    bool operator==(const BasinVerdict&) const = default;
};

}  // namespace chaoscope
