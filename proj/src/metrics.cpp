#include "metrics.hpp"

#include <unordered_map>

#include "errors.hpp"

namespace uds {

double accuracy(const std::vector<DispatchDecision>& decisions,
                const ReferenceAssignments& refs, const WorkflowGraph& g, int* delta_out) {
    std::unordered_map<TaskId, Pricing> first_choice;
    for (const DispatchDecision& d : decisions)
        if (d.attempt == 1) first_choice.emplace(d.task, d.pricing);

    int total = 0;
    int delta = 0;
    for (const Task& t : g.tasks()) {
        if (t.is_pseudo) continue;
        ++total;
        auto it = first_choice.find(t.id);
        if (it == first_choice.end())
            throw ReferenceError("no first-attempt decision recorded for task " +
                                 std::to_string(t.id));
        bool correct = (refs.lambda1(t.id) && it->second == Pricing::Reliable) ||
                       (refs.lambda2(t.id) && it->second == Pricing::Unreliable);
        if (correct) ++delta;
    }
    if (total == 0) throw ValidationError("workflow has no scored tasks");
    if (delta_out) *delta_out = delta;
    return 100.0 * delta / total;
}

std::pair<double, double> normalized_finals(double m_final, double c_final,
                                            const Bounds& bounds) {
    if (bounds.m_lower <= 0 || bounds.c_lower <= 0)
        throw ValidationError("normalized finals need positive lower bounds");
    return {m_final / bounds.m_lower, c_final / bounds.c_lower};
}

double success_rate(const SimResult& result, const WorkflowGraph& g) {
    int total = 0;
    int first_try = 0;
    for (const Task& t : g.tasks()) {
        if (t.is_pseudo) continue;
        ++total;
        auto it = result.attempts.find(t.id);
        if (it == result.attempts.end())
            throw ValidationError("task " + std::to_string(t.id) + " never completed");
        if (it->second == 1) ++first_try;
    }
    if (total == 0) throw ValidationError("workflow has no scored tasks");
    return 100.0 * first_try / total;
}

MetricsReport compute_metrics(const SimResult& result, const WorkflowGraph& g,
                              const ReferenceAssignments& refs, const Bounds& bounds) {
    MetricsReport r;
    r.acc = accuracy(result.decisions, refs, g, &r.delta);
    auto [nm, nc] = normalized_finals(result.m_final, result.c_final, bounds);
    r.norm_m_final = nm;
    r.norm_c_final = nc;
    r.succ_r = success_rate(result, g);
    return r;
}

}  // namespace uds
