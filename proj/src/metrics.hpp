#pragma once

#include "simulator.hpp"

namespace uds {

struct MetricsReport {
    double acc = 0.0;           // percent
    double norm_m_final = 0.0;  // m_final / m_lower
    double norm_c_final = 0.0;  // c_final / c_lower
    double succ_r = 0.0;        // percent
    int delta = 0;              // correct first-attempt decisions
};

/// Percentage of tasks whose first-attempt pricing choice agrees with one of
/// the reference assignments: reliable when HEFT placed the task reliable, or
/// unreliable when GC placed it unreliable.  Pseudo tasks are excluded.
double accuracy(const std::vector<DispatchDecision>& decisions,
                const ReferenceAssignments& refs, const WorkflowGraph& g,
                int* delta_out = nullptr);

std::pair<double, double> normalized_finals(double m_final, double c_final,
                                            const Bounds& bounds);

/// Percentage of tasks that completed on their first attempt.
double success_rate(const SimResult& result, const WorkflowGraph& g);

MetricsReport compute_metrics(const SimResult& result, const WorkflowGraph& g,
                              const ReferenceAssignments& refs, const Bounds& bounds);

}  // namespace uds
