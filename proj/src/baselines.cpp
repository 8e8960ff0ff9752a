#include "baselines.hpp"

#include <algorithm>

#include "errors.hpp"

namespace uds {

namespace {

void check_pool(const VmCatalog& catalog) {
    if (catalog.pool.empty()) throw ValidationError("VM pool is empty");
}

// Chooses the EFT-minimizing VM; ties prefer reliable instances, then the
// lower vm id.
int heft_pick(TaskId task, const PlanningState& st) {
    int best_vm = -1;
    double best_eft = 0.0;
    int best_class = 0;
    for (std::size_t vm = 0; vm < st.catalog->pool.size(); ++vm) {
        double e = eft(task, static_cast<int>(vm), st);
        int cls = st.catalog->pricing_of(static_cast<int>(vm)) == Pricing::Reliable ? 0 : 1;
        if (best_vm < 0 || e < best_eft || (e == best_eft && cls < best_class)) {
            best_vm = static_cast<int>(vm);
            best_eft = e;
            best_class = cls;
        }
    }
    return best_vm;
}

// Cheapest marginal billing cost; ties by EFT, then hourly price, then vm id.
int gc_pick(TaskId task, const PlanningState& st) {
    int best_vm = -1;
    double best_cost = 0.0, best_eft = 0.0, best_price = 0.0;
    double demand = st.graph->task(task).demand_mi;
    for (std::size_t i = 0; i < st.catalog->pool.size(); ++i) {
        int vm = static_cast<int>(i);
        double est_raw = est(task, vm, st);
        double dur = exec_time(demand, st.catalog->speed_of(vm));
        CommitTimes t = commit_times(est_raw, dur, st.params.slot_seconds);

        const auto& slot = st.vms[vm];
        int old_cycles =
            slot.used ? billing_cycles(slot.first, slot.last, st.params.billing_cycle) : 0;
        double first = slot.used ? std::min(slot.first, t.ast) : t.ast;
        double last = slot.used ? std::max(slot.last, t.aft) : t.aft;
        int new_cycles = billing_cycles(first, last, st.params.billing_cycle);
        double price = st.catalog->hourly_price(vm);
        double marginal = price * (new_cycles - old_cycles);
        double e = est_raw + dur;

        bool better = best_vm < 0 || marginal < best_cost ||
                      (marginal == best_cost &&
                       (e < best_eft || (e == best_eft && price < best_price)));
        if (better) {
            best_vm = vm;
            best_cost = marginal;
            best_eft = e;
            best_price = price;
        }
    }
    return best_vm;
}

enum class PickPolicy { Heft, GreedyCost };

SchedulePlan plan_tasks(PickPolicy policy, PlanningState& st,
                        const std::vector<TaskId>& ordered) {
    SchedulePlan plan;
    plan.slot_seconds = st.params.slot_seconds;
    plan.billing_cycle = st.params.billing_cycle;
    for (TaskId t : ordered) {
        if (st.graph->task(t).is_pseudo) {
            plan.placements.push_back(plan_commit_pseudo(t, st));
            continue;
        }
        int vm = policy == PickPolicy::Heft ? heft_pick(t, st) : gc_pick(t, st);
        plan.placements.push_back(plan_commit(t, vm, st));
    }
    return plan;
}

}  // namespace

std::vector<TaskId> Ranker::order(const WorkflowGraph& g, std::vector<TaskId> tasks) const {
    std::sort(tasks.begin(), tasks.end(), [&](TaskId a, TaskId b) {
        std::size_t ia = g.index_of(a), ib = g.index_of(b);
        if (rank[ia] != rank[ib]) return rank[ia] > rank[ib];
        return topo_pos[ia] < topo_pos[ib];
    });
    return tasks;
}

Ranker build_ranker(const WorkflowGraph& g, const VmCatalog& catalog,
                    double bandwidth_mbps) {
    check_pool(catalog);
    double inv_speed_sum = 0.0;
    for (const VmInstance& v : catalog.pool) inv_speed_sum += 1.0 / catalog.speed_of(v.vm_id);
    double mean_inv_speed = inv_speed_sum / catalog.pool.size();

    Ranker r;
    r.topo = topological_order(g);
    r.topo_pos.assign(g.size(), 0);
    for (std::size_t i = 0; i < r.topo.size(); ++i)
        r.topo_pos[g.index_of(r.topo[i])] = static_cast<int>(i);

    r.rank.assign(g.size(), 0.0);
    for (auto it = r.topo.rbegin(); it != r.topo.rend(); ++it) {
        TaskId t = *it;
        std::size_t ti = g.index_of(t);
        double w = g.task(t).demand_mi * mean_inv_speed;
        double best_succ = 0.0;
        for (TaskId s : g.succs(t)) {
            double c = g.edge_data(t, s) / bandwidth_mbps;
            best_succ = std::max(best_succ, c + r.rank[g.index_of(s)]);
        }
        r.rank[ti] = w + best_succ;
    }
    return r;
}

SchedulePlan heft_static(const WorkflowGraph& g, const VmCatalog& catalog,
                         const PlanParams& params) {
    check_pool(catalog);
    Ranker ranker = build_ranker(g, catalog, params.bandwidth_mbps);
    std::vector<TaskId> all;
    for (const Task& t : g.tasks()) all.push_back(t.id);
    PlanningState st = PlanningState::fresh(g, catalog, params);
    return plan_tasks(PickPolicy::Heft, st, ranker.order(g, std::move(all)));
}

SchedulePlan gc_static(const WorkflowGraph& g, const VmCatalog& catalog,
                       const PlanParams& params) {
    check_pool(catalog);
    PlanningState st = PlanningState::fresh(g, catalog, params);
    return plan_tasks(PickPolicy::GreedyCost, st, topological_order(g));
}

Bounds compute_bounds(const WorkflowGraph& g, const VmCatalog& catalog, double a, double b,
                      const PlanParams& params) {
    if (a <= 0 || b <= 0) throw ValidationError("bound scalars a and b must be positive");
    Bounds bounds;
    bounds.a = a;
    bounds.b = b;
    bounds.m_lower = plan_makespan(heft_static(g, catalog, params));
    bounds.c_lower = plan_cost(gc_static(g, catalog, params), catalog);
    bounds.m_upper = bounds.m_lower * (1.0 + a);
    bounds.c_upper = bounds.c_lower * (1.0 + b);
    return bounds;
}

bool ReferenceAssignments::lambda1(TaskId t) const {
    auto it = refs.find(t);
    if (it == refs.end()) throw ReferenceError("no reference assignment for task " +
                                               std::to_string(t));
    return it->second.first;
}

bool ReferenceAssignments::lambda2(TaskId t) const {
    auto it = refs.find(t);
    if (it == refs.end()) throw ReferenceError("no reference assignment for task " +
                                               std::to_string(t));
    return it->second.second;
}

ReferenceAssignments reference_assignments(const SchedulePlan& heft_plan,
                                           const SchedulePlan& gc_plan,
                                           const WorkflowGraph& g) {
    ReferenceAssignments out;
    for (const Task& t : g.tasks()) {
        if (t.is_pseudo) continue;
        const Placement* h = heft_plan.find(t.id);
        const Placement* c = gc_plan.find(t.id);
        if (!h || !c)
            throw ReferenceError("task " + std::to_string(t.id) +
                                 " missing from a reference plan");
        bool l1 = h->vm_id >= 0 && h->pricing == Pricing::Reliable;
        bool l2 = c->vm_id >= 0 && c->pricing == Pricing::Unreliable;
        out.refs.emplace(t.id, std::make_pair(l1, l2));
    }
    return out;
}

double heft_dynamic_estimate(const PlanningState& snapshot, std::vector<TaskId> waiting,
                             const Ranker& ranker) {
    PlanningState st = snapshot;
    plan_tasks(PickPolicy::Heft, st, ranker.order(*st.graph, std::move(waiting)));
    return planning_makespan(st);
}

double gc_dynamic_estimate(const PlanningState& snapshot, std::vector<TaskId> waiting,
                           const Ranker& ranker) {
    PlanningState st = snapshot;
    std::sort(waiting.begin(), waiting.end(), [&](TaskId a, TaskId b) {
        return ranker.topo_pos[st.graph->index_of(a)] < ranker.topo_pos[st.graph->index_of(b)];
    });
    plan_tasks(PickPolicy::GreedyCost, st, waiting);
    return planning_cost_total(st);
}

}  // namespace uds
