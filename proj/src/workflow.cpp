#include "workflow.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "errors.hpp"
#include "rng.hpp"

namespace uds {

namespace {

std::uint64_t edge_key(TaskId src, TaskId dst) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(src)) << 32) |
           static_cast<std::uint32_t>(dst);
}

}  // namespace

WorkflowGraph WorkflowGraph::build(std::vector<Task> tasks, std::vector<Edge> edges) {
    if (tasks.empty()) throw ValidationError("workflow has no tasks");

    WorkflowGraph g;
    g.tasks_ = std::move(tasks);
    g.edges_ = std::move(edges);
    for (std::size_t i = 0; i < g.tasks_.size(); ++i) {
        const Task& t = g.tasks_[i];
        if (t.demand_mi < 0)
            throw ValidationError("task " + t.name + " has negative demand");
        if (!g.index_.emplace(t.id, i).second)
            throw ValidationError("duplicate task id " + std::to_string(t.id));
    }
    g.preds_.resize(g.tasks_.size());
    g.succs_.resize(g.tasks_.size());
    for (const Edge& e : g.edges_) {
        if (e.src == e.dst)
            throw CycleError("self-dependency on task " + std::to_string(e.src));
        if (!g.has_task(e.src) || !g.has_task(e.dst))
            throw ReferenceError("edge " + std::to_string(e.src) + "->" +
                                 std::to_string(e.dst) + " references unknown task");
        if (e.data_mbit < 0)
            throw ValidationError("edge with negative data volume");
        if (!g.edge_data_.emplace(edge_key(e.src, e.dst), e.data_mbit).second)
            throw ValidationError("duplicate edge " + std::to_string(e.src) + "->" +
                                  std::to_string(e.dst));
        g.succs_[g.index_of(e.src)].push_back(e.dst);
        g.preds_[g.index_of(e.dst)].push_back(e.src);
    }
    for (auto& v : g.preds_) std::sort(v.begin(), v.end());
    for (auto& v : g.succs_) std::sort(v.begin(), v.end());

    topological_order(g);  // throws CycleError on cycles
    return g;
}

std::size_t WorkflowGraph::index_of(TaskId id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw ReferenceError("unknown task id " + std::to_string(id));
    return it->second;
}

double WorkflowGraph::edge_data(TaskId src, TaskId dst) const {
    auto it = edge_data_.find(edge_key(src, dst));
    if (it == edge_data_.end())
        throw ReferenceError("no edge " + std::to_string(src) + "->" + std::to_string(dst));
    return it->second;
}

std::vector<TaskId> WorkflowGraph::entry_tasks() const {
    std::vector<TaskId> out;
    for (std::size_t i = 0; i < tasks_.size(); ++i)
        if (preds_[i].empty()) out.push_back(tasks_[i].id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TaskId> WorkflowGraph::exit_tasks() const {
    std::vector<TaskId> out;
    for (std::size_t i = 0; i < tasks_.size(); ++i)
        if (succs_[i].empty()) out.push_back(tasks_[i].id);
    std::sort(out.begin(), out.end());
    return out;
}

TaskId WorkflowGraph::entry() const {
    auto e = entry_tasks();
    if (e.size() != 1)
        throw ValidationError("graph has " + std::to_string(e.size()) +
                              " entry tasks; normalize first");
    return e[0];
}

TaskId WorkflowGraph::exit() const {
    auto e = exit_tasks();
    if (e.size() != 1)
        throw ValidationError("graph has " + std::to_string(e.size()) +
                              " exit tasks; normalize first");
    return e[0];
}

std::size_t WorkflowGraph::pseudo_count() const {
    std::size_t n = 0;
    for (const Task& t : tasks_)
        if (t.is_pseudo) ++n;
    return n;
}

WorkflowGraph normalize_entries_exits(const WorkflowGraph& g) {
    if (g.size() == 0) throw ValidationError("cannot normalize an empty graph");
    auto entries = g.entry_tasks();
    auto exits = g.exit_tasks();
    if (entries.size() == 1 && exits.size() == 1) return g;

    std::vector<Task> tasks = g.tasks();
    std::vector<Edge> edges = g.edges();
    TaskId next_id = 0;
    for (const Task& t : tasks) next_id = std::max(next_id, t.id + 1);

    if (entries.size() > 1) {
        Task p{next_id++, "pseudo_entry", 0.0, true};
        for (TaskId e : entries) edges.push_back({p.id, e, 0.0});
        tasks.push_back(p);
    }
    if (exits.size() > 1) {
        Task p{next_id++, "pseudo_exit", 0.0, true};
        for (TaskId e : exits) edges.push_back({e, p.id, 0.0});
        tasks.push_back(p);
    }
    return WorkflowGraph::build(std::move(tasks), std::move(edges));
}

std::vector<TaskId> topological_order(const WorkflowGraph& g) {
    std::unordered_map<TaskId, int> in_degree;
    for (const Task& t : g.tasks()) in_degree[t.id] = 0;
    for (const Edge& e : g.edges()) ++in_degree[e.dst];

    std::priority_queue<TaskId, std::vector<TaskId>, std::greater<TaskId>> q;
    for (const Task& t : g.tasks())
        if (in_degree[t.id] == 0) q.push(t.id);

    std::vector<TaskId> order;
    order.reserve(g.size());
    while (!q.empty()) {
        TaskId id = q.top();
        q.pop();
        order.push_back(id);
        for (TaskId s : g.succs(id))
            if (--in_degree[s] == 0) q.push(s);
    }
    if (order.size() != g.size()) {
        for (const auto& [id, deg] : in_degree)
            if (deg > 0)
                throw CycleError("dependency cycle involving task " + std::to_string(id));
        throw CycleError("dependency cycle detected");
    }
    return order;
}

const char* pattern_name(Pattern p) {
    switch (p) {
        case Pattern::Pipeline: return "pipeline";
        case Pattern::FanoutFanin: return "fanout_fanin";
        case Pattern::Aggregation: return "aggregation";
        case Pattern::Distribution: return "distribution";
        case Pattern::Redistribution: return "redistribution";
    }
    return "?";
}

bool pattern_from_string(const std::string& s, Pattern& out) {
    for (Pattern p : {Pattern::Pipeline, Pattern::FanoutFanin, Pattern::Aggregation,
                      Pattern::Distribution, Pattern::Redistribution}) {
        if (s == pattern_name(p)) {
            out = p;
            return true;
        }
    }
    return false;
}

namespace {

std::vector<std::pair<int, int>> pattern_edges(Pattern pattern, int n) {
    std::vector<std::pair<int, int>> e;
    switch (pattern) {
        case Pattern::Pipeline:
            for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
            break;
        case Pattern::FanoutFanin:
            if (n == 2) {
                e.emplace_back(0, 1);
            } else if (n > 2) {
                for (int i = 1; i + 1 < n; ++i) {
                    e.emplace_back(0, i);
                    e.emplace_back(i, n - 1);
                }
            }
            break;
        case Pattern::Aggregation:
            // Binary in-tree: every non-root node feeds its parent; node 0 is
            // the single sink, leaves are the (multiple) entries.
            for (int i = 1; i < n; ++i) e.emplace_back(i, (i - 1) / 2);
            break;
        case Pattern::Distribution:
            for (int i = 1; i < n; ++i) e.emplace_back((i - 1) / 2, i);
            break;
        case Pattern::Redistribution: {
            // Levels of alternating widths, complete bipartite between
            // consecutive levels (shuffle-style stages).
            if (n <= 3) {
                for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
                break;
            }
            int wide = std::max(2, n / 10);
            int narrow = std::max(1, wide / 2);
            std::vector<std::vector<int>> levels;
            int next = 0;
            bool use_wide = true;
            while (next < n) {
                int w = std::min(use_wide ? wide : narrow, n - next);
                std::vector<int> level;
                for (int k = 0; k < w; ++k) level.push_back(next++);
                levels.push_back(std::move(level));
                use_wide = !use_wide;
            }
            for (std::size_t l = 0; l + 1 < levels.size(); ++l)
                for (int a : levels[l])
                    for (int b : levels[l + 1]) e.emplace_back(a, b);
            break;
        }
    }
    return e;
}

}  // namespace

WorkflowGraph generate_synthetic(Pattern pattern, int n_tasks, std::uint64_t seed,
                                 const SynthRanges& ranges) {
    if (n_tasks < 1) throw ValidationError("synthetic workflow needs at least one task");
    if (ranges.demand_lo > ranges.demand_hi || ranges.data_lo > ranges.data_hi)
        throw ValidationError("synthetic range lower bound exceeds upper bound");

    RngStream rng = RngStream::root(seed).derive("synthetic").derive(pattern_name(pattern)).derive(
        static_cast<std::uint64_t>(n_tasks));

    std::vector<Task> tasks;
    tasks.reserve(n_tasks);
    for (int i = 0; i < n_tasks; ++i) {
        double demand =
            ranges.demand_lo + rng.next_double() * (ranges.demand_hi - ranges.demand_lo);
        tasks.push_back({i, "t" + std::to_string(i), demand, false});
    }
    std::vector<Edge> edges;
    for (auto [src, dst] : pattern_edges(pattern, n_tasks)) {
        double data = ranges.data_lo + rng.next_double() * (ranges.data_hi - ranges.data_lo);
        edges.push_back({src, dst, data});
    }
    return WorkflowGraph::build(std::move(tasks), std::move(edges));
}

}  // namespace uds
