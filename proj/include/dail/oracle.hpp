#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dail/analysis.hpp"
#include "dail/latin.hpp"

namespace dail::oracle {

struct OracleConfig {
    long long trials = 1'000'000;
    std::uint64_t seed = 1;
    AnalyticalParams params;
};

struct Violation {
    int rect_a;
    int symbol_a;
    int rect_b;
    int symbol_b;
    int overlap;
    std::vector<std::pair<int, int>> cells;  // coinciding (channel, slot)s
    std::string describe() const;
};

struct TheoremCheckReport {
    long long pairs_checked = 0;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Enumerates every symbol pair across every rectangle pair cut from the
// family: same-rectangle overlaps must be 0, cross-rectangle at most 1.
TheoremCheckReport exhaustive_theorem_check(const OrthogonalFamily& family,
                                            int rows, int cols);

// Same check over an explicit rectangle list.
TheoremCheckReport exhaustive_theorem_check(
    const std::vector<LatinRectangle>& rects);

// Raw-grid variant that skips Latin validation, so deliberately corrupted
// grids can be fed through the detector.
TheoremCheckReport exhaustive_theorem_check_raw(
    const std::vector<std::vector<int>>& grids, int rows, int cols, int q);

struct MonteCarloResult {
    double estimate = 0.0;
    double std_error = 0.0;
    long long trials = 0;
    bool low_precision = false;  // too few trials for a stable error bar
};

// Closed-form evaluation of the generative model the Monte Carlo oracle
// samples: x ~ Binomial(Q, omega) active neighbors draw distinct patterns
// from the Z-1 non-tagged ones; success iff none contains the tagged cell.
// Averaged over all tagged patterns and hops.
double exact_lambda(const AnalyticalParams& params);

// Simulates the generative model behind the success-probability formula:
// the tagged sensor holds a fixed pattern; each of Q neighbors is active
// with probability omega and active neighbors draw distinct patterns
// uniformly from the Z-1 others; a trial succeeds iff no active neighbor
// shares the tagged cell in the observed slot.
MonteCarloResult monte_carlo_lambda(const OracleConfig& cfg);

}  // namespace dail::oracle
