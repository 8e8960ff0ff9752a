#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "resources.hpp"
#include "workflow.hpp"

namespace uds {

struct Placement {
    TaskId task = 0;
    int vm_id = -1;  // -1 for pseudo tasks
    Pricing pricing = Pricing::Reliable;
    double est = 0.0;  // planned, slot-aligned
    double eft = 0.0;
    double ast = -1.0;  // actual; negative = not realized
    double aft = -1.0;
    int attempt = 1;

    bool realized() const { return aft >= 0.0; }
    double start() const { return realized() ? ast : est; }
    double finish() const { return realized() ? aft : eft; }
};

struct SchedulePlan {
    std::vector<Placement> placements;
    double slot_seconds = 1.0;
    double billing_cycle = 3600.0;

    const Placement* find(TaskId task) const;
};

struct BillingRecord {
    int vm_id = -1;
    int lease = 0;
    Pricing pricing = Pricing::Reliable;
    double first_start = -1.0;  // negative: no task ever started on the lease
    double last_finish = -1.0;
    int cycles = 0;
    double cost = 0.0;
};

/// Rounds a time up to the next slot boundary (tolerant of fp noise).
double ceil_to_slot(double t, double slot_seconds);

int billing_cycles(double first_start, double last_finish, double cycle_seconds);
double vm_cost(double first_start, double last_finish, double hourly_price,
               double cycle_seconds);

double plan_makespan(const SchedulePlan& plan);
double plan_cost(const SchedulePlan& plan, const VmCatalog& catalog);

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks c1 (no concurrent tasks on one VM) and c2 (no task on two VMs at
/// once).  Touching intervals are fine.
ValidationReport validate_plan(const SchedulePlan& plan);

struct PlanParams {
    double bandwidth_mbps = 20.0;
    double provisioning_seconds = 96.9;
    double slot_seconds = 1.0;
    double billing_cycle = 3600.0;
};

/// Partial-schedule snapshot shared by the static schedulers, the dynamic
/// estimators and the engine's dispatch path.  finish[] holds known (actual
/// or projected) finish times per task index, NaN when undecided.
struct PlanningState {
    const WorkflowGraph* graph = nullptr;
    const VmCatalog* catalog = nullptr;
    PlanParams params;
    double now = 0.0;

    std::vector<double> finish;
    std::vector<int> task_vm;

    struct VmSlot {
        bool provisioned = false;
        double ready = 0.0;
        bool used = false;  // billing interval open on the current lease
        double first = 0.0;
        double last = 0.0;
    };
    std::vector<VmSlot> vms;
    double sunk_cost = 0.0;

    static PlanningState fresh(const WorkflowGraph& g, const VmCatalog& c,
                               const PlanParams& params);

    bool has_finish(TaskId t) const { return !std::isnan(finish[graph->index_of(t)]); }
    double finish_of(TaskId t) const { return finish[graph->index_of(t)]; }
    double vm_available(int vm_id) const;
};

/// Earliest start: max of VM availability and predecessor finish plus
/// transfer time (zero when the predecessor ran on the same VM).
double est(TaskId task, int vm_id, const PlanningState& st);
double eft(TaskId task, int vm_id, const PlanningState& st);

struct CommitTimes {
    double ast = 0.0;
    double aft = 0.0;
};

CommitTimes commit_times(double est_raw, double duration, double slot_seconds);

/// Commits the task to the VM (slot-aligned), updates ready time, billing
/// interval and finish table, and returns the resulting placement.
Placement plan_commit(TaskId task, int vm_id, PlanningState& st);

/// Pseudo tasks run nowhere and take no time.
Placement plan_commit_pseudo(TaskId task, PlanningState& st);

/// Sunk cost plus the cost of every open planned lease.
double planning_cost_total(const PlanningState& st);

/// Max known finish time (0 when nothing has one).
double planning_makespan(const PlanningState& st);

}  // namespace uds
