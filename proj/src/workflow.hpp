#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace uds {

using TaskId = int;

struct Task {
    TaskId id = 0;
    std::string name;
    double demand_mi = 0.0;
    bool is_pseudo = false;
};

struct Edge {
    TaskId src = 0;
    TaskId dst = 0;
    double data_mbit = 0.0;
};

/// Immutable task DAG.  Construction validates ids, edge references and
/// acyclicity; entry()/exit() are only meaningful after normalization.
class WorkflowGraph {
public:
    WorkflowGraph() = default;
    static WorkflowGraph build(std::vector<Task> tasks, std::vector<Edge> edges);

    const std::vector<Task>& tasks() const { return tasks_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t size() const { return tasks_.size(); }

    bool has_task(TaskId id) const { return index_.count(id) != 0; }
    std::size_t index_of(TaskId id) const;
    const Task& task(TaskId id) const { return tasks_[index_of(id)]; }

    const std::vector<TaskId>& preds(TaskId id) const { return preds_[index_of(id)]; }
    const std::vector<TaskId>& succs(TaskId id) const { return succs_[index_of(id)]; }
    double edge_data(TaskId src, TaskId dst) const;

    std::vector<TaskId> entry_tasks() const;
    std::vector<TaskId> exit_tasks() const;
    TaskId entry() const;
    TaskId exit() const;

    std::size_t pseudo_count() const;

private:
    std::vector<Task> tasks_;
    std::vector<Edge> edges_;
    std::unordered_map<TaskId, std::size_t> index_;
    std::vector<std::vector<TaskId>> preds_;
    std::vector<std::vector<TaskId>> succs_;
    std::unordered_map<std::uint64_t, double> edge_data_;
};

/// Ensures a single entry and a single exit by inserting zero-demand pseudo
/// tasks connected with zero-data edges.  Idempotent.
WorkflowGraph normalize_entries_exits(const WorkflowGraph& g);

/// Deterministic topological order, ties broken by ascending task id.
std::vector<TaskId> topological_order(const WorkflowGraph& g);

enum class Pattern { Pipeline, FanoutFanin, Aggregation, Distribution, Redistribution };

const char* pattern_name(Pattern p);
bool pattern_from_string(const std::string& s, Pattern& out);

struct SynthRanges {
    double demand_lo = 1000.0;
    double demand_hi = 100000.0;
    double data_lo = 8.0;
    double data_hi = 800.0;
};

WorkflowGraph generate_synthetic(Pattern pattern, int n_tasks, std::uint64_t seed,
                                 const SynthRanges& ranges = SynthRanges{});

}  // namespace uds
