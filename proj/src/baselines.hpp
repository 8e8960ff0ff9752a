#pragma once

#include <unordered_map>
#include <vector>

#include "schedcore.hpp"

namespace uds {

struct Bounds {
    double m_lower = 0.0;
    double c_lower = 0.0;
    double m_upper = 0.0;
    double c_upper = 0.0;
    double a = 0.0;
    double b = 0.0;
};

/// Upward ranks plus topological positions; rank ties fall back to the
/// topological order so zero-demand pseudo tasks never jump their successors.
struct Ranker {
    std::vector<double> rank;    // by task index
    std::vector<int> topo_pos;   // by task index
    std::vector<TaskId> topo;    // topological order of all tasks

    std::vector<TaskId> order(const WorkflowGraph& g, std::vector<TaskId> tasks) const;
};

Ranker build_ranker(const WorkflowGraph& g, const VmCatalog& catalog,
                    double bandwidth_mbps);

/// Classic HEFT over the whole mixed pool: rank order, min-EFT placement,
/// ties prefer reliable then lower vm id.  No interruptions, no variation.
SchedulePlan heft_static(const WorkflowGraph& g, const VmCatalog& catalog,
                         const PlanParams& params = PlanParams{});

/// Topological-order greedy: cheapest marginal billing cost, ties by EFT,
/// then hourly price, then vm id.
SchedulePlan gc_static(const WorkflowGraph& g, const VmCatalog& catalog,
                       const PlanParams& params = PlanParams{});

Bounds compute_bounds(const WorkflowGraph& g, const VmCatalog& catalog, double a, double b,
                      const PlanParams& params = PlanParams{});

struct ReferenceAssignments {
    // task -> (lambda1: HEFT placed it reliable, lambda2: GC placed it unreliable)
    std::unordered_map<TaskId, std::pair<bool, bool>> refs;

    bool lambda1(TaskId t) const;
    bool lambda2(TaskId t) const;
};

ReferenceAssignments reference_assignments(const SchedulePlan& heft_plan,
                                           const SchedulePlan& gc_plan,
                                           const WorkflowGraph& g);

/// Plans every waiting task with the HEFT policy on a copy of the snapshot
/// and returns the predicted final makespan.
double heft_dynamic_estimate(const PlanningState& snapshot, std::vector<TaskId> waiting,
                             const Ranker& ranker);

/// Same idea with the greedy-cost policy; returns sunk plus predicted cost.
double gc_dynamic_estimate(const PlanningState& snapshot, std::vector<TaskId> waiting,
                           const Ranker& ranker);

}  // namespace uds
