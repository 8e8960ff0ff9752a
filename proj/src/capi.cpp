#include "udsched.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "baselines.hpp"
#include "dax.hpp"
#include "errors.hpp"
#include "flc.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "simulator.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

uds_status status_of(const std::exception& e) {
    if (dynamic_cast<const uds::ParseError*>(&e)) return UDS_ERR_PARSE;
    if (dynamic_cast<const uds::CycleError*>(&e)) return UDS_ERR_CYCLE;
    if (dynamic_cast<const uds::ReferenceError*>(&e)) return UDS_ERR_REFERENCE;
    if (dynamic_cast<const uds::ValidationError*>(&e)) return UDS_ERR_VALIDATION;
    if (dynamic_cast<const uds::ConstraintError*>(&e)) return UDS_ERR_CONSTRAINT;
    if (dynamic_cast<const uds::WatchdogError*>(&e)) return UDS_ERR_WATCHDOG;
    return UDS_ERR_INTERNAL;
}

template <typename Fn>
uds_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return UDS_OK;
    } catch (const std::exception& e) {
        set_error(e.what());
        return status_of(e);
    } catch (...) {
        set_error("unknown error");
        return UDS_ERR_INTERNAL;
    }
}

uds_status require(bool cond, const char* msg) {
    if (cond) return UDS_OK;
    set_error(msg);
    return UDS_ERR_VALIDATION;
}

}  // namespace

struct uds_catalog {
    uds::VmCatalog impl;
};

struct uds_workflow {
    uds::WorkflowGraph graph;
};

struct uds_result {
    uds::SimResult sim;
    uds::MetricsReport report;
    int n_tasks = 0;
};

extern "C" {

const char* uds_version(void) { return "0.1.0"; }

const char* uds_last_error(void) { return g_last_error.c_str(); }

uds_status uds_catalog_default(uds_catalog** out) {
    if (uds_status s = require(out != nullptr, "out is null")) return s;
    return guarded([&] { *out = new uds_catalog{uds::default_catalog()}; });
}

uds_status uds_catalog_load(const char* path, uds_catalog** out) {
    if (uds_status s = require(path && out, "path/out is null")) return s;
    return guarded([&] { *out = new uds_catalog{uds::load_catalog_file(path)}; });
}

uds_status uds_catalog_zero_hazards(const uds_catalog* in, uds_catalog** out) {
    if (uds_status s = require(in && out, "in/out is null")) return s;
    return guarded([&] { *out = new uds_catalog{in->impl.without_hazards()}; });
}

int uds_catalog_pool_size(const uds_catalog* c) {
    return c ? static_cast<int>(c->impl.pool.size()) : 0;
}

double uds_catalog_slowest_mips(const uds_catalog* c) {
    if (!c) return 0.0;
    try {
        return c->impl.slowest_speed();
    } catch (...) {
        return 0.0;
    }
}

void uds_catalog_free(uds_catalog* c) { delete c; }

uds_status uds_workflow_load_dax(const char* path, const uds_catalog* c,
                                 uds_workflow** out) {
    if (uds_status s = require(path && c && out, "path/catalog/out is null")) return s;
    return guarded([&] {
        auto g = uds::load_dax_file(path, c->impl.slowest_speed());
        *out = new uds_workflow{uds::normalize_entries_exits(g)};
    });
}

uds_status uds_workflow_parse_dax(const char* xml_text, const uds_catalog* c,
                                  uds_workflow** out) {
    if (uds_status s = require(xml_text && c && out, "text/catalog/out is null")) return s;
    return guarded([&] {
        auto g = uds::parse_dax(xml_text, c->impl.slowest_speed());
        *out = new uds_workflow{uds::normalize_entries_exits(g)};
    });
}

uds_status uds_workflow_synthetic(const char* pattern, int n_tasks, uint64_t seed,
                                  uds_workflow** out) {
    if (uds_status s = require(pattern && out, "pattern/out is null")) return s;
    return guarded([&] {
        uds::Pattern p;
        if (!uds::pattern_from_string(pattern, p))
            throw uds::ValidationError(std::string("unknown pattern '") + pattern + "'");
        auto g = uds::generate_synthetic(p, n_tasks, seed);
        *out = new uds_workflow{uds::normalize_entries_exits(g)};
    });
}

uds_status uds_workflow_get_info(const uds_workflow* w, uds_workflow_info* out) {
    if (uds_status s = require(w && out, "workflow/out is null")) return s;
    return guarded([&] {
        out->n_tasks = static_cast<int>(w->graph.size());
        out->n_edges = static_cast<int>(w->graph.edges().size());
        out->n_pseudo = static_cast<int>(w->graph.pseudo_count());
        out->entry_id = w->graph.entry();
        out->exit_id = w->graph.exit();
    });
}

void uds_workflow_free(uds_workflow* w) { delete w; }

uds_status uds_compute_bounds(const uds_workflow* w, const uds_catalog* c, double a,
                              double b, uds_bounds* out) {
    if (uds_status s = require(w && c && out, "workflow/catalog/out is null")) return s;
    return guarded([&] {
        uds::PlanParams params;
        auto heft = uds::heft_static(w->graph, c->impl, params);
        auto gc = uds::gc_static(w->graph, c->impl, params);
        uds::Bounds bounds = uds::compute_bounds(w->graph, c->impl, a, b, params);
        out->m_lower = bounds.m_lower;
        out->c_lower = bounds.c_lower;
        out->m_upper = bounds.m_upper;
        out->c_upper = bounds.c_upper;
        out->heft_plan_cost = uds::plan_cost(heft, c->impl);
        out->gc_plan_makespan = uds::plan_makespan(gc);
    });
}

void uds_run_params_init(uds_run_params* p) {
    if (!p) return;
    p->theta = 0.5;
    p->a = 2.0;
    p->b = 2.0;
    p->seed = 1;
    p->slot_seconds = 1.0;
    p->billing_cycle_seconds = 3600.0;
    p->bandwidth_mbps = 20.0;
    p->provisioning_seconds = 96.9;
    p->variation_enabled = 1;
    p->variation_mean = 0.095;
    p->variation_stdev = 0.05;
    p->variation_cap = 0.19;
    p->max_sim_seconds = 5e7;
}

uds_status uds_run(const uds_workflow* w, const uds_catalog* c,
                   const uds_run_params* p, uds_result** out) {
    if (uds_status s = require(w && c && p && out, "workflow/catalog/params/out is null"))
        return s;
    return guarded([&] {
        uds::SimConfig cfg;
        cfg.slot_seconds = p->slot_seconds;
        cfg.billing_cycle = p->billing_cycle_seconds;
        cfg.bandwidth_mbps = p->bandwidth_mbps;
        cfg.provisioning_seconds = p->provisioning_seconds;
        cfg.variation.enabled = p->variation_enabled != 0;
        cfg.variation.mean = p->variation_mean;
        cfg.variation.stdev = p->variation_stdev;
        cfg.variation.cap = p->variation_cap;
        cfg.seed = p->seed;
        cfg.max_sim_seconds = p->max_sim_seconds;

        uds::UdsPolicy policy;
        policy.config.theta = p->theta;
        policy.config.a = p->a;
        policy.config.b = p->b;

        auto result = new uds_result;
        try {
            result->sim = uds::run_simulation(w->graph, c->impl, policy, cfg);
            auto heft = uds::heft_static(w->graph, c->impl, cfg.plan_params());
            auto gc = uds::gc_static(w->graph, c->impl, cfg.plan_params());
            auto refs = uds::reference_assignments(heft, gc, w->graph);
            result->report =
                uds::compute_metrics(result->sim, w->graph, refs, result->sim.bounds);
            result->n_tasks =
                static_cast<int>(w->graph.size() - w->graph.pseudo_count());
        } catch (...) {
            delete result;
            throw;
        }
        *out = result;
    });
}

uds_status uds_result_metrics(const uds_result* r, uds_metrics* out) {
    if (uds_status s = require(r && out, "result/out is null")) return s;
    return guarded([&] {
        out->m_final = r->sim.m_final;
        out->c_final = r->sim.c_final;
        out->m_lower = r->sim.bounds.m_lower;
        out->c_lower = r->sim.bounds.c_lower;
        out->norm_m_final = r->report.norm_m_final;
        out->norm_c_final = r->report.norm_c_final;
        out->acc = r->report.acc;
        out->succ_r = r->report.succ_r;
        out->delta = r->report.delta;
        out->n_tasks = r->n_tasks;
        out->n_revocations = static_cast<int>(r->sim.revocations.size());
        int retried = 0;
        for (const auto& [task, attempts] : r->sim.attempts)
            if (attempts > 1) ++retried;
        out->n_retried_tasks = retried;
    });
}

uds_status uds_result_write_trace_csv(const uds_result* r, const char* path) {
    if (uds_status s = require(r && path, "result/path is null")) return s;
    std::ofstream outf(path, std::ios::binary);
    if (!outf) {
        set_error(std::string("cannot open trace file for writing: ") + path);
        return UDS_ERR_IO;
    }
    return guarded([&] {
        auto rows = r->sim.plan.placements;
        std::sort(rows.begin(), rows.end(),
                  [](const uds::Placement& a, const uds::Placement& b) {
                      if (a.ast != b.ast) return a.ast < b.ast;
                      return a.task < b.task;
                  });
        outf << "task,vm,pricing,est,eft,ast,aft,attempt\n";
        char buf[256];
        for (const uds::Placement& p : rows) {
            std::snprintf(buf, sizeof(buf), "%d,%d,%s,%.10g,%.10g,%.10g,%.10g,%d\n",
                          p.task, p.vm_id,
                          p.vm_id < 0 ? "-" : uds::pricing_name(p.pricing), p.est, p.eft,
                          p.ast, p.aft, p.attempt);
            outf << buf;
        }
        outf.flush();
        if (!outf) throw uds::Error("failed writing trace file");
    });
}

void uds_result_free(uds_result* r) { delete r; }

double uds_flc_pmi(double norm_m, double norm_c) {
    try {
        return uds::flc_pmi(norm_m, norm_c);
    } catch (...) {
        return std::nan("");
    }
}

uint64_t uds_derive_seed(uint64_t master_seed, const char* label, uint64_t index) {
    std::uint64_t h = label ? uds::fnv1a64(label) : 0;
    return uds::mix64(uds::mix64(master_seed, h), index);
}

}  // extern "C"
