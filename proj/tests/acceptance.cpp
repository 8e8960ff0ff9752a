// Acceptance gate: nine end-to-end criteria, one verdict line each.
// Scheduling outcomes are checked against independent from-scratch oracles
// implemented in this file, not against the library's own plumbing.
// Usage: acceptance <path-to-udsim-binary>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "metrics.hpp"

using namespace uds;

namespace {

int g_failed = 0;

void verdict(int n, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failed;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

std::vector<double> average_ranks(const std::vector<double>& v) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
    std::vector<double> r(v.size(), 0.0);
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        double avg = (double(i) + double(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> rx = average_ranks(x), ry = average_ranks(y);
    double mx = mean_of(rx), my = mean_of(ry);
    double num = 0, dx = 0, dy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        num += (rx[i] - mx) * (ry[i] - my);
        dx += (rx[i] - mx) * (rx[i] - mx);
        dy += (ry[i] - my) * (ry[i] - my);
    }
    if (dx == 0 || dy == 0) return 0.0;
    return num / std::sqrt(dx * dy);
}

/* ---- independent list-scheduling oracle ------------------------------ */

struct MiniParams {
    double bw = 20.0, prov = 96.9, slot = 1.0, cycle = 3600.0;
    PlanParams lib() const { return PlanParams{bw, prov, slot, cycle}; }
};

std::vector<TaskId> naive_topo(const WorkflowGraph& g) {
    std::unordered_map<TaskId, int> indeg;
    for (const Task& t : g.tasks()) indeg[t.id] = 0;
    for (const Edge& e : g.edges()) ++indeg[e.dst];
    std::priority_queue<TaskId, std::vector<TaskId>, std::greater<TaskId>> q;
    for (const Task& t : g.tasks())
        if (indeg[t.id] == 0) q.push(t.id);
    std::vector<TaskId> order;
    while (!q.empty()) {
        TaskId id = q.top();
        q.pop();
        order.push_back(id);
        for (TaskId s : g.succs(id))
            if (--indeg[s] == 0) q.push(s);
    }
    return order;
}

std::vector<TaskId> naive_rank_order(const WorkflowGraph& g, const VmCatalog& cat,
                                     double bw) {
    std::vector<TaskId> topo = naive_topo(g);
    std::unordered_map<TaskId, int> pos;
    for (std::size_t i = 0; i < topo.size(); ++i) pos[topo[i]] = int(i);

    double inv = 0.0;
    for (const VmInstance& v : cat.pool) inv += 1.0 / cat.speed_of(v.vm_id);
    double mean_inv = inv / double(cat.pool.size());

    std::unordered_map<TaskId, double> rank;
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        double w = g.task(*it).demand_mi * mean_inv;
        double best = 0.0;
        for (TaskId s : g.succs(*it))
            best = std::max(best, g.edge_data(*it, s) / bw + rank[s]);
        rank[*it] = w + best;
    }
    std::vector<TaskId> order;
    for (const Task& t : g.tasks()) order.push_back(t.id);
    std::sort(order.begin(), order.end(), [&](TaskId a, TaskId b) {
        if (rank[a] != rank[b]) return rank[a] > rank[b];
        return pos[a] < pos[b];
    });
    return order;
}

struct NaiveSched {
    const WorkflowGraph* g;
    const VmCatalog* cat;
    MiniParams pp;
    std::unordered_map<TaskId, double> fin;
    std::unordered_map<TaskId, int> on;
    struct VmS {
        bool used = false;
        double ready = 0, first = 0, last = 0;
    };
    std::vector<VmS> vms;

    NaiveSched(const WorkflowGraph& gg, const VmCatalog& cc, MiniParams p)
        : g(&gg), cat(&cc), pp(p), vms(cc.pool.size()) {}

    double ceil_slot(double t) const {
        double k = std::ceil((t - 1e-9) / pp.slot);
        if (k < 0) k = 0;
        return k * pp.slot;
    }
    static int cycles_of(double first, double last, double cycle) {
        int c = int(std::ceil((last - first) / cycle - 1e-9));
        return std::max(1, c);
    }
    double est_of(TaskId t, int vm) const {
        const VmS& v = vms[vm];
        double best = std::max(v.used ? std::max(v.ready, 0.0) : pp.prov, 0.0);
        for (TaskId p : g->preds(t)) {
            double tr = on.at(p) == vm ? 0.0 : g->edge_data(p, t) / pp.bw;
            best = std::max(best, fin.at(p) + tr);
        }
        return best;
    }
    double dur_of(TaskId t, int vm) const {
        return g->task(t).demand_mi / cat->speed_of(vm);
    }
    void place(TaskId t, int vm) {
        if (g->task(t).is_pseudo) {
            double when = 0.0;
            for (TaskId p : g->preds(t))
                when = std::max(when, fin.at(p) + g->edge_data(p, t) / pp.bw);
            fin[t] = when;
            on[t] = -1;
            return;
        }
        double ast = ceil_slot(est_of(t, vm));
        double aft = ceil_slot(ast + dur_of(t, vm));
        VmS& v = vms[vm];
        if (!v.used) {
            v.used = true;
            v.first = ast;
            v.last = aft;
        } else {
            v.first = std::min(v.first, ast);
            v.last = std::max(v.last, aft);
        }
        v.ready = aft;
        fin[t] = aft;
        on[t] = vm;
    }
    double makespan() const {
        double m = 0;
        for (const auto& [id, f] : fin) m = std::max(m, f);
        return m;
    }
    double cost() const {
        double total = 0;
        for (std::size_t vm = 0; vm < vms.size(); ++vm)
            if (vms[vm].used)
                total += cat->hourly_price(int(vm)) *
                         cycles_of(vms[vm].first, vms[vm].last, pp.cycle);
        return total;
    }
};

struct NaivePlan {
    double makespan = 0, cost = 0;
    std::unordered_map<TaskId, int> assign;
};

NaivePlan naive_heft(const WorkflowGraph& g, const VmCatalog& cat, MiniParams pp) {
    NaiveSched s(g, cat, pp);
    NaivePlan out;
    for (TaskId t : naive_rank_order(g, cat, pp.bw)) {
        if (g.task(t).is_pseudo) {
            s.place(t, -1);
            continue;
        }
        int best = -1, best_cls = 0;
        double best_e = 0;
        for (std::size_t vm = 0; vm < cat.pool.size(); ++vm) {
            double e = s.est_of(t, int(vm)) + s.dur_of(t, int(vm));
            int cls = cat.pricing_of(int(vm)) == Pricing::Reliable ? 0 : 1;
            if (best < 0 || e < best_e || (e == best_e && cls < best_cls)) {
                best = int(vm);
                best_e = e;
                best_cls = cls;
            }
        }
        s.place(t, best);
        out.assign[t] = best;
    }
    out.makespan = s.makespan();
    out.cost = s.cost();
    return out;
}

NaivePlan naive_greedy(const WorkflowGraph& g, const VmCatalog& cat, MiniParams pp,
                       const std::vector<int>& candidates) {
    NaiveSched s(g, cat, pp);
    NaivePlan out;
    for (TaskId t : naive_topo(g)) {
        if (g.task(t).is_pseudo) {
            s.place(t, -1);
            continue;
        }
        int best = -1;
        double best_cost = 0, best_e = 0, best_price = 0;
        for (int vm : candidates) {
            double est = s.est_of(t, vm);
            double dur = s.dur_of(t, vm);
            double ast = s.ceil_slot(est);
            double aft = s.ceil_slot(ast + dur);
            const auto& v = s.vms[vm];
            int old_c = v.used ? NaiveSched::cycles_of(v.first, v.last, pp.cycle) : 0;
            double first = v.used ? std::min(v.first, ast) : ast;
            double last = v.used ? std::max(v.last, aft) : aft;
            double price = cat.hourly_price(vm);
            double marginal = price * (NaiveSched::cycles_of(first, last, pp.cycle) - old_c);
            double e = est + dur;
            bool better = best < 0 || marginal < best_cost ||
                          (marginal == best_cost &&
                           (e < best_e || (e == best_e && price < best_price)));
            if (better) {
                best = vm;
                best_cost = marginal;
                best_e = e;
                best_price = price;
            }
        }
        s.place(t, best);
        out.assign[t] = best;
    }
    out.makespan = s.makespan();
    out.cost = s.cost();
    return out;
}

double enum_makespan(const WorkflowGraph& g, const VmCatalog& cat, MiniParams pp,
                     const std::vector<TaskId>& order,
                     const std::unordered_map<TaskId, int>& assign) {
    NaiveSched s(g, cat, pp);
    for (TaskId t : order) s.place(t, g.task(t).is_pseudo ? -1 : assign.at(t));
    return s.makespan();
}

/* ---- criterion 1 ----------------------------------------------------- */

void criterion1() {
    std::mt19937_64 rng(0x5EED01);
    auto unif = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    auto pick_int = [&](int lo, int hi) {
        return int(std::uniform_int_distribution<int>(lo, hi)(rng));
    };

    const int trials = 250;
    int heft_mismatch = 0, member_miss = 0, below_min = 0;
    int gc_mismatch = 0, gc_above_class = 0;

    for (int trial = 0; trial < trials; ++trial) {
        int n = pick_int(1, 6);
        std::vector<Task> specs;
        for (int i = 0; i < n; ++i)
            specs.push_back({TaskId(i), "t" + std::to_string(i), unif(50, 20000), false});
        std::vector<Edge> edges;
        double p_edge = unif(0.2, 0.6);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (unif(0, 1) < p_edge) {
                    double data = unif(0, 1) < 0.3 ? 0.0 : unif(1, 400);
                    edges.push_back({TaskId(i), TaskId(j), data});
                }
        WorkflowGraph g =
            normalize_entries_exits(WorkflowGraph::build(specs, edges));

        int m = pick_int(1, 3);
        VmCatalog cat;
        for (int k = 0; k < m; ++k) {
            double pr = unif(0.05, 0.5);
            cat.types.push_back({"x" + std::to_string(k), 1,
                                 double(pick_int(2, 50)) * 100.0, pr,
                                 pr * unif(0.1, 0.6), 0.0});
            cat.pool.push_back(
                {k, k, unif(0, 1) < 0.5 ? Pricing::Reliable : Pricing::Unreliable});
        }
        MiniParams pp;
        pp.bw = std::vector<double>{5, 20, 100}[pick_int(0, 2)];
        pp.prov = std::vector<double>{0, 10, 96.9}[pick_int(0, 2)];
        pp.cycle = std::vector<double>{30, 60, 300, 3600}[pick_int(0, 3)];

        SchedulePlan lib_heft = heft_static(g, cat, pp.lib());
        SchedulePlan lib_gc = gc_static(g, cat, pp.lib());
        double lib_m = plan_makespan(lib_heft);
        double lib_c = plan_cost(lib_gc, cat);

        NaivePlan oracle_h = naive_heft(g, cat, pp);
        if (lib_m != oracle_h.makespan) ++heft_mismatch;

        // full enumeration of assignment vectors, scheduled in rank order
        std::vector<TaskId> real;
        for (const Task& t : g.tasks())
            if (!t.is_pseudo) real.push_back(t.id);
        std::vector<TaskId> order = naive_rank_order(g, cat, pp.bw);
        double min_enum = std::numeric_limits<double>::infinity();
        bool member = real.empty();
        long combos = 1;
        for (std::size_t i = 0; i < real.size(); ++i) combos *= m;
        for (long c = 0; c < combos; ++c) {
            long v = c;
            std::unordered_map<TaskId, int> assign;
            for (TaskId t : real) {
                assign[t] = int(v % m);
                v /= m;
            }
            double mk = enum_makespan(g, cat, pp, order, assign);
            min_enum = std::min(min_enum, mk);
            if (std::abs(mk - lib_m) <= 1e-9) member = true;
        }
        if (!member) ++member_miss;
        if (!real.empty() && lib_m < min_enum - 1e-9) ++below_min;

        // greedy-cost vs class-restricted and single-vm oracles
        std::vector<int> all_vms, rel, unrel;
        for (int k = 0; k < m; ++k) {
            all_vms.push_back(k);
            (cat.pricing_of(k) == Pricing::Reliable ? rel : unrel).push_back(k);
        }
        NaivePlan oracle_g = naive_greedy(g, cat, pp, all_vms);
        if (lib_c != oracle_g.cost) ++gc_mismatch;
        double class_min = std::numeric_limits<double>::infinity();
        if (!rel.empty()) class_min = std::min(class_min, naive_greedy(g, cat, pp, rel).cost);
        if (!unrel.empty())
            class_min = std::min(class_min, naive_greedy(g, cat, pp, unrel).cost);
        if (lib_c > class_min + 1e-9) ++gc_above_class;
    }

    bool ok = heft_mismatch == 0 && member_miss == 0 && below_min == 0 &&
              gc_mismatch == 0 && gc_above_class == 0;
    verdict(1, ok,
            "oracle equivalence on " + std::to_string(trials) +
                " random dags: heft mismatches " + std::to_string(heft_mismatch) +
                ", enumeration misses " + std::to_string(member_miss) +
                ", below-minimum " + std::to_string(below_min) +
                ", gc mismatches " + std::to_string(gc_mismatch) +
                ", gc above class oracle " + std::to_string(gc_above_class));
}

/* ---- criterion 2 ----------------------------------------------------- */

double oracle_centroid(const AggregatedMf& agg) {
    const int n = 400000;
    double num = 0, den = 0;
    for (int i = 0; i <= n; ++i) {
        double x = double(i) / n;
        double w = (i == 0 || i == n) ? 0.5 : 1.0;
        double mu = agg(x);
        num += w * mu * x;
        den += w * mu;
    }
    return num / den;
}

void criterion2() {
    std::mt19937_64 rng(0x5EED02);
    auto unif = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    int bad = 0;
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        AggregatedMf agg;
        int clips = 1 + int(rng() % 3);
        for (int c = 0; c < clips; ++c) {
            double l = unif(0.0, 0.7);
            double p = unif(l, 1.0);
            double r = unif(p, 1.0);
            if (r - l < 0.05) r = std::min(1.0, l + 0.05 + unif(0, 0.2));
            if (p > r) p = r;
            agg.clips.push_back({unif(0.05, 1.0), TriangularMf(l, p, r)});
        }
        double got = defuzzify_centroid(agg, 1001);
        double want = oracle_centroid(agg);
        worst = std::max(worst, std::abs(got - want));
        if (std::abs(got - want) >= 1e-3) ++bad;
    }
    double lo = flc_pmi(0.0, 0.5), mid = flc_pmi(0.5, 0.5), hi = flc_pmi(1.0, 0.5);
    bool anchors = std::abs(lo - 0.1667) < 1e-3 && std::abs(mid - 0.5) < 1e-3 &&
                   std::abs(hi - 0.8333) < 1e-3;
    verdict(2, bad == 0 && anchors,
            "centroid vs high-res oracle: worst |err| " + fmt(worst) +
                " over 1000 aggregates, anchors " + fmt(lo) + "/" + fmt(mid) + "/" +
                fmt(hi));
}

/* ---- criteria 3-7 share the synthetic suite --------------------------- */

struct Suite {
    std::vector<std::pair<std::string, WorkflowGraph>> workflows;
};

Suite make_suite() {
    // Heavier tasks than the generator defaults (the ranges are configuration):
    // lease spans must approach the one-hour boundary or the interruption model
    // never influences 30-seed means.  5.5e6 MI still completes on the slowest
    // VM within a fresh lease even at the worst-case execution variation.
    SynthRanges ranges;
    ranges.demand_lo = 2.5e6;
    ranges.demand_hi = 5.5e6;
    Suite s;
    s.workflows.emplace_back(
        "pipeline:100",
        normalize_entries_exits(generate_synthetic(Pattern::Pipeline, 100, 101, ranges)));
    s.workflows.emplace_back(
        "fanout_fanin:100",
        normalize_entries_exits(generate_synthetic(Pattern::FanoutFanin, 100, 202, ranges)));
    return s;
}

void criterion3(const Suite& suite) {
    bool all_reliable = true, replay_exact = true, succ_100 = true;
    VmCatalog cat = default_catalog().without_hazards();
    SimConfig cfg;
    cfg.variation.enabled = false;
    for (const auto& [name, g] : suite.workflows) {
        UdsPolicy policy;
        policy.config.theta = 0.0;
        SimResult r = run_simulation(g, cat, policy, cfg);
        for (const DispatchDecision& d : r.decisions)
            if (d.pricing != Pricing::Reliable) all_reliable = false;
        if (success_rate(r, g) != 100.0) succ_100 = false;

        SchedulePlan plan = heft_static(g, cat, cfg.plan_params());
        SimResult rep = run_simulation(g, cat, ReplayPolicy{plan}, cfg);
        double norm = rep.m_final / plan_makespan(plan);
        if (norm != 1.0) replay_exact = false;
        if (success_rate(rep, g) != 100.0) succ_100 = false;
    }
    verdict(3, all_reliable && replay_exact && succ_100,
            std::string("degenerate regimes: theta=0 all-reliable ") +
                (all_reliable ? "yes" : "no") + ", replay norm_m==1.0 " +
                (replay_exact ? "yes" : "no") + ", success 100% " +
                (succ_100 ? "yes" : "no"));
}

struct SweepCell {
    std::vector<double> c_final, m_final, norm_m, norm_c, acc;
};

SweepCell run_cell(const Suite& suite, double theta, double a, double b, int reps,
                   std::uint64_t salt) {
    SweepCell cell;
    VmCatalog cat = default_catalog();
    for (std::size_t w = 0; w < suite.workflows.size(); ++w) {
        const WorkflowGraph& g = suite.workflows[w].second;
        SchedulePlan h = heft_static(g, cat, SimConfig{}.plan_params());
        SchedulePlan c = gc_static(g, cat, SimConfig{}.plan_params());
        ReferenceAssignments refs = reference_assignments(h, c, g);
        for (int rep = 0; rep < reps; ++rep) {
            UdsPolicy policy;
            policy.config.theta = theta;
            policy.config.a = a;
            policy.config.b = b;
            SimConfig cfg;
            // common random numbers: the seed depends on (workflow, rep) only,
            // so sweep points are compared on paired draws
            cfg.seed = mix64(mix64(salt, w), rep);
            SimResult r = run_simulation(g, cat, policy, cfg);
            MetricsReport m = compute_metrics(r, g, refs, r.bounds);
            cell.c_final.push_back(r.c_final);
            cell.m_final.push_back(r.m_final);
            cell.norm_m.push_back(m.norm_m_final);
            cell.norm_c.push_back(m.norm_c_final);
            cell.acc.push_back(m.acc);
        }
    }
    return cell;
}

void criteria4and5(const Suite& suite) {
    const int reps = 30;
    std::vector<double> thetas, mean_c, mean_m;
    double norm_m_at_09 = 0;
    for (int i = 1; i <= 9; ++i) {
        double theta = i / 10.0;
        SweepCell cell = run_cell(suite, theta, 2.0, 2.0, reps, 0xACC4);
        thetas.push_back(theta);
        mean_c.push_back(mean_of(cell.c_final));
        mean_m.push_back(mean_of(cell.m_final));
        if (i == 9) norm_m_at_09 = mean_of(cell.norm_m);
    }
    double rho_c = spearman(thetas, mean_c);
    double rho_m = spearman(thetas, mean_m);
    bool ok4 = rho_c <= -0.8 && rho_m >= 0.8;
    verdict(4, ok4,
            "theta trend over {0.1..0.9}, " + std::to_string(reps) +
                " seeds: spearman(theta, mean cost) " + fmt(rho_c) +
                " (need <= -0.8), spearman(theta, mean makespan) " + fmt(rho_m) +
                " (need >= 0.8)");
    if (!ok4) {
        std::string mc = "    mean cost by theta:", mm = "    mean makespan by theta:";
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            mc += " " + fmt(mean_c[i]);
            mm += " " + fmt(mean_m[i]);
        }
        std::printf("%s\n%s\n", mc.c_str(), mm.c_str());
    }
    verdict(5, norm_m_at_09 < 2.0,
            "theta=0.9 mean normalized makespan " + fmt(norm_m_at_09) + " (need < 2)");
}

void criterion6(const Suite& suite) {
    // no replication count is pinned here; 60 paired seeds sharpen a
    // direction-only comparison (both cells share the same seed salt)
    const int reps = 60;
    SweepCell loose_m = run_cell(suite, 0.5, 3.0, 0.5, reps, 0xACC6);
    SweepCell loose_c = run_cell(suite, 0.5, 0.5, 3.0, reps, 0xACC6);
    double nc_a = mean_of(loose_m.norm_c), nc_b = mean_of(loose_c.norm_c);
    double nm_a = mean_of(loose_m.norm_m), nm_b = mean_of(loose_c.norm_m);
    verdict(6, nc_a < nc_b && nm_b < nm_a,
            "corner bias: mean norm_c " + fmt(nc_a) + " (a=3,b=0.5) vs " + fmt(nc_b) +
                " (a=0.5,b=3); mean norm_m " + fmt(nm_a) + " vs " + fmt(nm_b));
}

void criterion7(const Suite& suite) {
    const int reps = 30;
    SweepCell cell = run_cell(suite, 0.5, 3.0, 3.0, reps, 0xACC8);
    double acc = mean_of(cell.acc);

    // oracle substitution: force the class the cost reference always picks
    bool oracle_ok = true;
    VmCatalog calm = default_catalog().without_hazards();
    for (const auto& [name, g] : suite.workflows) {
        UdsPolicy policy;
        policy.config.a = 3.0;
        policy.config.b = 3.0;
        policy.pricing_override = [](TaskId, int) { return Pricing::Unreliable; };
        SimConfig cfg;
        cfg.variation.enabled = false;
        SimResult r = run_simulation(g, calm, policy, cfg);
        ReferenceAssignments refs = reference_assignments(
            heft_static(g, calm, cfg.plan_params()), gc_static(g, calm, cfg.plan_params()), g);
        if (accuracy(r.decisions, refs, g) != 100.0) oracle_ok = false;
    }
    verdict(7, acc >= 85.0 && oracle_ok,
            "decision accuracy at a=b=3: mean " + fmt(acc) +
                "% (need >= 85), oracle substitution 100% " + (oracle_ok ? "yes" : "no"));
}

/* ---- criterion 8 ----------------------------------------------------- */

void criterion8() {
    const double p = 0.30;
    double h = per_slot_hazard(p, 1.0);
    RngStream root = RngStream::root(0xACC9).derive("hazard");
    int interrupted = 0;
    long slots = 0;
    const int reps = 1000;
    for (int i = 0; i < reps; ++i) {
        RngStream s = root.derive(std::uint64_t(i), 1);
        int k = first_interrupted_slot(s, h, 3600);
        if (k > 0) {
            ++interrupted;
            slots += k;
        } else {
            slots += 3600;
        }
    }
    double survival = 1.0 - double(interrupted) / reps;
    double freq = double(interrupted) / double(slots);
    double sigma = std::sqrt(h * (1 - h) / double(slots));
    bool ok = std::abs(survival - 0.70) <= 0.05 && std::abs(freq - h) <= 4 * sigma;
    verdict(8, ok,
            "interruption model: hour survival " + fmt(survival) +
                " (need 0.70 +/- 0.05), per-slot freq " + fmt(freq) + " vs hazard " +
                fmt(h) + " within 4 sigma (" + fmt(4 * sigma) + ")");
}

/* ---- criterion 9 ----------------------------------------------------- */

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion9(const std::string& udsim) {
    namespace fs = std::filesystem;
    fs::path dir_a = fs::temp_directory_path() / "udsched_accept_run_a";
    fs::path dir_b = fs::temp_directory_path() / "udsched_accept_run_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    std::string base = "\"" + udsim +
                       "\" run --workflow pipeline:40 --workflow fanout_fanin:40"
                       " --theta 0.3,0.7 --reps 3 --seed 12345 --out ";
    int rc1 = std::system((base + dir_a.string() + " > /dev/null 2>&1").c_str());
    int rc2 = std::system((base + dir_b.string() + " > /dev/null 2>&1").c_str());
    std::string a = slurp((dir_a / "summary.csv").string());
    std::string b = slurp((dir_b / "summary.csv").string());
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    long rows = std::count(a.begin(), a.end(), '\n');
    bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b && rows == 13;
    verdict(9, ok,
            "determinism: two identical cli sweeps, summary.csv " +
                std::to_string(a.size()) + " bytes, " + std::to_string(rows) +
                " lines, byte-identical " + (a == b ? "yes" : "no"));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-udsim>\n");
        return 2;
    }
    try {
        criterion1();
        criterion2();
        Suite suite = make_suite();
        criterion3(suite);
        criteria4and5(suite);
        criterion6(suite);
        criterion7(suite);
        criterion8();
        criterion9(argv[1]);
    } catch (const std::exception& e) {
        std::printf("[FAIL] unexpected exception: %s\n", e.what());
        return 1;
    }
    std::printf("acceptance: %d/9 criteria passed\n", 9 - g_failed);
    return g_failed == 0 ? 0 : 1;
}
