#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "uds.hpp"

namespace uds {

struct SimConfig {
    double slot_seconds = 1.0;
    double billing_cycle = 3600.0;
    double bandwidth_mbps = 20.0;
    double provisioning_seconds = 96.9;
    VariationParams variation;
    std::uint64_t seed = 1;
    double max_sim_seconds = 5e7;

    PlanParams plan_params() const {
        return PlanParams{bandwidth_mbps, provisioning_seconds, slot_seconds, billing_cycle};
    }
};

struct RevocationEvent {
    int vm_id = -1;
    int lease = 0;
    double time = 0.0;
    std::vector<TaskId> affected;
};

struct SimResult {
    SchedulePlan plan;  // completed attempts only
    double m_final = 0.0;
    double c_final = 0.0;
    Bounds bounds;  // zeroed for replay runs
    std::vector<DispatchDecision> decisions;
    std::vector<BillingRecord> billing;
    std::vector<RevocationEvent> revocations;
    std::unordered_map<TaskId, int> attempts;  // completed attempt per task
};

struct ReplayPolicy {
    SchedulePlan plan;
};

/// Runs the uncertainty-driven policy through the event engine: per-slot
/// interruption draws on unreliable leases, forced revocation after one
/// active hour, retries, provisioning delays, performance variation.
SimResult run_simulation(const WorkflowGraph& g, const VmCatalog& catalog,
                         const UdsPolicy& policy, const SimConfig& config);

/// Executes a previously computed plan as-is.  Requires a deterministic
/// configuration (no variation, no interruption hazards).
SimResult run_simulation(const WorkflowGraph& g, const VmCatalog& catalog,
                         const ReplayPolicy& policy, const SimConfig& config);

/// Walks up to n_slots per-slot Bernoulli draws; returns the 1-based index
/// of the first interrupted slot or 0 if the lease survives all of them.
/// The engine uses this at lease start; tests use it for the survival stats.
int first_interrupted_slot(RngStream& stream, double hazard, int n_slots);

/// One full hour of active unreliable time, forced revocation excluded.
constexpr double kLeaseLimitSeconds = 3600.0;

}  // namespace uds
