#include "schedcore.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "errors.hpp"

namespace uds {

namespace {
constexpr double kTimeEps = 1e-9;
}

const Placement* SchedulePlan::find(TaskId task) const {
    for (const Placement& p : placements)
        if (p.task == task) return &p;
    return nullptr;
}

double ceil_to_slot(double t, double slot_seconds) {
    if (slot_seconds <= 0) throw ValidationError("slot length must be positive");
    double k = std::ceil((t - kTimeEps) / slot_seconds);
    if (k < 0) k = 0;
    return k * slot_seconds;
}

int billing_cycles(double first_start, double last_finish, double cycle_seconds) {
    if (cycle_seconds <= 0) throw ValidationError("billing cycle must be positive");
    double d = last_finish - first_start;
    if (d < -kTimeEps) throw ValidationError("billing interval ends before it starts");
    int cycles = static_cast<int>(std::ceil(d / cycle_seconds - kTimeEps));
    return std::max(1, cycles);
}

double vm_cost(double first_start, double last_finish, double hourly_price,
               double cycle_seconds) {
    return hourly_price * billing_cycles(first_start, last_finish, cycle_seconds);
}

double plan_makespan(const SchedulePlan& plan) {
    if (plan.placements.empty()) throw ValidationError("plan has no placements");
    double m = 0.0;
    for (const Placement& p : plan.placements) m = std::max(m, p.finish());
    return m;
}

double plan_cost(const SchedulePlan& plan, const VmCatalog& catalog) {
    std::map<int, std::pair<double, double>> spans;  // vm -> (first, last)
    for (const Placement& p : plan.placements) {
        if (p.vm_id < 0) continue;
        auto [it, fresh] = spans.emplace(p.vm_id, std::make_pair(p.start(), p.finish()));
        if (!fresh) {
            it->second.first = std::min(it->second.first, p.start());
            it->second.second = std::max(it->second.second, p.finish());
        }
    }
    double total = 0.0;
    for (const auto& [vm, span] : spans)
        total += vm_cost(span.first, span.second, catalog.hourly_price(vm),
                         plan.billing_cycle);
    return total;
}

ValidationReport validate_plan(const SchedulePlan& plan) {
    ValidationReport report;

    std::map<int, std::vector<const Placement*>> by_vm;
    std::map<TaskId, std::vector<const Placement*>> by_task;
    for (const Placement& p : plan.placements) {
        if (p.vm_id >= 0) by_vm[p.vm_id].push_back(&p);
        by_task[p.task].push_back(&p);
    }

    auto overlap = [](const Placement* a, const Placement* b) {
        return a->start() < b->finish() - kTimeEps && b->start() < a->finish() - kTimeEps;
    };

    for (auto& [vm, ps] : by_vm) {
        std::sort(ps.begin(), ps.end(), [](const Placement* a, const Placement* b) {
            return a->start() < b->start();
        });
        for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
            if (overlap(ps[i], ps[i + 1]))
                report.violations.push_back(
                    "c1: tasks " + std::to_string(ps[i]->task) + " and " +
                    std::to_string(ps[i + 1]->task) + " overlap on vm " + std::to_string(vm));
        }
    }
    for (auto& [task, ps] : by_task) {
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j)
                if (ps[i]->vm_id != ps[j]->vm_id && overlap(ps[i], ps[j]))
                    report.violations.push_back("c2: task " + std::to_string(task) +
                                                " runs on two VMs at once");
    }
    return report;
}

PlanningState PlanningState::fresh(const WorkflowGraph& g, const VmCatalog& c,
                                   const PlanParams& params) {
    PlanningState st;
    st.graph = &g;
    st.catalog = &c;
    st.params = params;
    st.finish.assign(g.size(), std::numeric_limits<double>::quiet_NaN());
    st.task_vm.assign(g.size(), -1);
    st.vms.resize(c.pool.size());
    return st;
}

double PlanningState::vm_available(int vm_id) const {
    const VmSlot& v = vms[vm_id];
    if (!v.provisioned) return now + params.provisioning_seconds;
    return std::max(v.ready, now);
}

double est(TaskId task, int vm_id, const PlanningState& st) {
    double best = std::max(st.vm_available(vm_id), 0.0);
    for (TaskId p : st.graph->preds(task)) {
        std::size_t pi = st.graph->index_of(p);
        double fp = st.finish[pi];
        if (std::isnan(fp))
            throw ValidationError("predecessor " + std::to_string(p) +
                                  " has no known finish time");
        bool same = st.task_vm[pi] == vm_id;
        best = std::max(best, fp + transfer_time(st.graph->edge_data(p, task), same,
                                                 st.params.bandwidth_mbps));
    }
    return best;
}

double eft(TaskId task, int vm_id, const PlanningState& st) {
    return est(task, vm_id, st) +
           exec_time(st.graph->task(task).demand_mi, st.catalog->speed_of(vm_id));
}

CommitTimes commit_times(double est_raw, double duration, double slot_seconds) {
    CommitTimes t;
    t.ast = ceil_to_slot(est_raw, slot_seconds);
    t.aft = ceil_to_slot(t.ast + duration, slot_seconds);
    return t;
}

Placement plan_commit(TaskId task, int vm_id, PlanningState& st) {
    double est_raw = est(task, vm_id, st);
    double duration = exec_time(st.graph->task(task).demand_mi, st.catalog->speed_of(vm_id));
    CommitTimes t = commit_times(est_raw, duration, st.params.slot_seconds);

    auto& vm = st.vms[vm_id];
    vm.provisioned = true;
    vm.ready = t.aft;
    if (!vm.used) {
        vm.used = true;
        vm.first = t.ast;
        vm.last = t.aft;
    } else {
        vm.first = std::min(vm.first, t.ast);
        vm.last = std::max(vm.last, t.aft);
    }
    std::size_t ti = st.graph->index_of(task);
    st.finish[ti] = t.aft;
    st.task_vm[ti] = vm_id;

    Placement p;
    p.task = task;
    p.vm_id = vm_id;
    p.pricing = st.catalog->pricing_of(vm_id);
    p.est = t.ast;
    p.eft = t.aft;
    p.ast = t.ast;
    p.aft = t.aft;
    return p;
}

Placement plan_commit_pseudo(TaskId task, PlanningState& st) {
    double when = std::max(st.now, 0.0);
    for (TaskId p : st.graph->preds(task)) {
        std::size_t pi = st.graph->index_of(p);
        if (std::isnan(st.finish[pi]))
            throw ValidationError("predecessor " + std::to_string(p) +
                                  " has no known finish time");
        when = std::max(when, st.finish[pi] +
                                  transfer_time(st.graph->edge_data(p, task), false,
                                                st.params.bandwidth_mbps));
    }
    std::size_t ti = st.graph->index_of(task);
    st.finish[ti] = when;
    st.task_vm[ti] = -1;

    Placement p;
    p.task = task;
    p.vm_id = -1;
    p.est = when;
    p.eft = when;
    p.ast = when;
    p.aft = when;
    return p;
}

double planning_cost_total(const PlanningState& st) {
    double total = st.sunk_cost;
    for (std::size_t vm = 0; vm < st.vms.size(); ++vm) {
        const auto& v = st.vms[vm];
        if (!v.used) continue;
        total += vm_cost(v.first, v.last, st.catalog->hourly_price(static_cast<int>(vm)),
                         st.params.billing_cycle);
    }
    return total;
}

double planning_makespan(const PlanningState& st) {
    double m = 0.0;
    for (double f : st.finish)
        if (!std::isnan(f)) m = std::max(m, f);
    return m;
}

}  // namespace uds
