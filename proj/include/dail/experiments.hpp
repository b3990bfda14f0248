#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dail/sim.hpp"

namespace dail::exp {

// Table-driven sweep: exp1/exp3 vary the WBAN count, exp2 varies the
// slots-per-superframe with 30 WBANs.
struct ExperimentPreset {
    std::string id;
    std::string sweep_var;
    std::vector<int> sweep_values;
    sim::NetworkConfig base;
};

ExperimentPreset make_preset(const std::string& id);

struct SummaryRow {
    std::string scheme;
    std::string sweep_var;
    int value = 0;
    double mcp = 0.0;
    double pc = 0.0;
    double ci95 = 0.0;  // over seeds, on mcp
};

struct ExperimentResult {
    std::vector<SummaryRow> rows;
    bool bounds_ok = true;  // per-frame collision caps held in every run
    std::vector<std::string> bound_violations;
};

// Runs both schemes over the sweep, averaging over seeds. Sweep points are
// dispatched to a thread pool; output order is deterministic.
ExperimentResult run_experiment(const ExperimentPreset& preset,
                                const std::vector<std::uint64_t>& seeds);

// scheme,sweep_var,value,mcp,pc,ci95
void write_summary_csv(std::ostream& out, const ExperimentResult& result);

// Single configured run of one scheme, exposed for the CLI and tests.
sim::CollisionReport run_single(const sim::NetworkConfig& cfg,
                                sim::Scheme scheme);

// Per-sensor cap on per-frame collision events implied by the pairwise
// overlap structure of the assigned patterns (0 for same-rectangle pairs,
// at most 1 otherwise). Returns violation descriptions, empty when clean.
std::vector<std::string> check_collision_bounds(const sim::Network& net,
                                                const sim::Schedule& schedule,
                                                const sim::CollisionReport& rep);

}  // namespace dail::exp
