#include "simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>

#include "errors.hpp"

namespace uds {

int first_interrupted_slot(RngStream& stream, double hazard, int n_slots) {
    if (hazard <= 0.0) return 0;
    for (int k = 1; k <= n_slots; ++k)
        if (stream.bernoulli(hazard)) return k;
    return 0;
}

namespace {

enum EvKind : int {
    kRevocation = 0,
    kProvisionComplete = 1,
    kTaskFinish = 2,
    kDataReady = 3,
};

struct Ev {
    double time = 0.0;
    int kind = 0;
    std::uint64_t seq = 0;
    int vm_id = -1;
    int lease = 0;
    TaskId task = -1;
    int attempt = 0;
};

struct EvLater {
    bool operator()(const Ev& a, const Ev& b) const {
        if (a.time != b.time) return a.time > b.time;
        if (a.kind != b.kind) return a.kind > b.kind;
        return a.seq > b.seq;
    }
};

struct VmRt {
    enum class St { Fresh, Provisioning, Active, Revoked } st = St::Fresh;
    int lease = 0;
    double provision_ready = 0.0;
    double ready = 0.0;
    double active_since = 0.0;
    int billing_index = -1;
    std::vector<TaskId> onboard;  // dispatched, unfinished, in dispatch order
};

struct TaskRt {
    bool done = false;
    bool in_flight = false;
    int next_attempt = 1;
    int preds_remaining = 0;
    // current in-flight attempt
    int vm = -1;
    int lease = 0;
    double ast = 0.0;
    double aft = 0.0;
    double eft_planned = 0.0;
    Pricing pricing = Pricing::Unreliable;
    // completed attempt
    double final_aft = 0.0;
    int final_vm = -1;
    int final_lease = 0;
};

class Engine {
public:
    Engine(const WorkflowGraph& g, const VmCatalog& catalog, const SimConfig& cfg)
        : g_(g), cat_(catalog), cfg_(cfg), root_(RngStream::root(cfg.seed)) {
        if (cat_.pool.empty()) throw ValidationError("VM pool is empty");
        if (cfg_.slot_seconds <= 0) throw ValidationError("slot length must be positive");
        params_ = cfg_.plan_params();
        entry_ = g_.entry();
        exit_ = g_.exit();
        tasks_.resize(g_.size());
        for (const Task& t : g_.tasks())
            tasks_[g_.index_of(t.id)].preds_remaining =
                static_cast<int>(g_.preds(t.id).size());
        vms_.resize(cat_.pool.size());
        result_.plan.slot_seconds = cfg_.slot_seconds;
        result_.plan.billing_cycle = cfg_.billing_cycle;
    }

    SimResult run_uds(const UdsPolicy& policy) {
        if (policy.config.theta < 0.0 || policy.config.theta > 1.0)
            throw ValidationError("theta must lie in [0,1]");
        policy_ = &policy;
        ranker_ = build_ranker(g_, cat_, cfg_.bandwidth_mbps);
        result_.bounds = compute_bounds(g_, cat_, policy.config.a, policy.config.b, params_);
        loop();
        finalize();
        return std::move(result_);
    }

    SimResult run_replay(const SchedulePlan& plan) {
        if (cfg_.variation.enabled)
            throw ValidationError("replay requires variation disabled");
        for (const VmInstance& v : cat_.pool)
            if (cat_.hazard_of(v.vm_id) > 0.0)
                throw ValidationError("replay requires zero interruption hazards");

        auto report = validate_plan(plan);
        if (!report.ok()) throw ConstraintError("replayed plan invalid: " + report.violations[0]);

        constexpr double eps = 1e-9;
        std::map<int, std::pair<double, double>> spans;
        for (const Task& t : g_.tasks()) {
            const Placement* p = plan.find(t.id);
            if (!p) throw ValidationError("plan misses task " + std::to_string(t.id));
            for (TaskId q : g_.preds(t.id)) {
                const Placement* pp = plan.find(q);
                if (!pp) throw ValidationError("plan misses task " + std::to_string(q));
                double need = pp->finish() + transfer_time(g_.edge_data(q, t.id),
                                                           pp->vm_id == p->vm_id &&
                                                               p->vm_id >= 0,
                                                           cfg_.bandwidth_mbps);
                if (p->start() < need - eps)
                    throw ConstraintError("plan starts task " + std::to_string(t.id) +
                                          " before its inputs are available");
            }
            if (p->vm_id >= 0) {
                auto [it, fresh] =
                    spans.emplace(p->vm_id, std::make_pair(p->start(), p->finish()));
                if (!fresh) {
                    it->second.first = std::min(it->second.first, p->start());
                    it->second.second = std::max(it->second.second, p->finish());
                }
            }
        }
        for (const auto& [vm, span] : spans) {
            if (cat_.pricing_of(vm) == Pricing::Unreliable &&
                span.second - span.first > kLeaseLimitSeconds + eps)
                throw ConstraintError("plan keeps an unreliable VM leased past one hour");
        }

        result_.plan = plan;
        for (Placement& p : result_.plan.placements) {
            if (!p.realized()) {
                p.ast = p.est;
                p.aft = p.eft;
            }
            result_.attempts[p.task] = p.attempt;
        }
        int lease = 0;
        for (const auto& [vm, span] : spans) {
            BillingRecord br;
            br.vm_id = vm;
            br.lease = ++lease;
            br.pricing = cat_.pricing_of(vm);
            br.first_start = span.first;
            br.last_finish = span.second;
            br.cycles = billing_cycles(br.first_start, br.last_finish, cfg_.billing_cycle);
            br.cost = br.cycles * cat_.hourly_price(vm);
            result_.billing.push_back(br);
        }
        result_.m_final = plan_makespan(result_.plan);
        double c = 0.0;
        for (const BillingRecord& br : result_.billing) c += br.cost;
        result_.c_final = c;
        return std::move(result_);
    }

private:
    const Bounds& bounds() const { return result_.bounds; }

    void schedule(Ev e) {
        e.seq = seq_++;
        events_.push(e);
    }

    void loop() {
        schedule({0.0, kDataReady, 0, -1, 0, entry_, 1});
        while (!finished_) {
            if (events_.empty())
                throw ConstraintError("simulation stalled before the exit task completed");
            double now = events_.top().time;
            if (now > cfg_.max_sim_seconds)
                throw WatchdogError("simulated time passed max_sim_seconds (" +
                                    std::to_string(cfg_.max_sim_seconds) + " s)");
            while (!finished_) {
                bool progressed = false;
                while (!events_.empty() && events_.top().time == now && !finished_) {
                    Ev e = events_.top();
                    events_.pop();
                    handle(e, now);
                    progressed = true;
                }
                if (finished_) break;
                if (!ready_.empty()) {
                    dispatch_ready(now);
                    progressed = true;
                }
                if (!progressed) break;
            }
        }
    }

    void handle(const Ev& e, double now) {
        switch (e.kind) {
            case kDataReady: {
                TaskRt& t = tasks_[g_.index_of(e.task)];
                if (t.done || t.in_flight || e.attempt != t.next_attempt) return;
                ready_.insert({now, e.task});
                return;
            }
            case kTaskFinish: {
                TaskRt& t = tasks_[g_.index_of(e.task)];
                if (t.done || !t.in_flight || e.attempt != t.next_attempt) return;
                complete_task(e.task, t, now);
                return;
            }
            case kProvisionComplete: {
                VmRt& v = vms_[e.vm_id];
                if (v.lease != e.lease || v.st != VmRt::St::Provisioning) return;
                activate_lease(e.vm_id, v, now);
                return;
            }
            case kRevocation: {
                VmRt& v = vms_[e.vm_id];
                if (v.lease != e.lease || v.st != VmRt::St::Active) return;
                revoke(e.vm_id, v, now);
                return;
            }
        }
    }

    void activate_lease(int vm_id, VmRt& v, double now) {
        v.st = VmRt::St::Active;
        v.active_since = now;
        if (cat_.pricing_of(vm_id) != Pricing::Unreliable) return;
        double p = cat_.type_of(vm_id).p_hourly;
        double hazard = p > 0.0 ? per_slot_hazard(p, cfg_.slot_seconds) : 0.0;
        RngStream hs = root_.derive("hazard").derive(static_cast<std::uint64_t>(vm_id),
                                                     static_cast<std::uint64_t>(v.lease));
        int n_slots =
            static_cast<int>(std::floor(kLeaseLimitSeconds / cfg_.slot_seconds + 1e-9));
        int k = first_interrupted_slot(hs, hazard, n_slots);
        double when = k > 0 ? now + k * cfg_.slot_seconds : now + kLeaseLimitSeconds;
        schedule({ceil_to_slot(when, cfg_.slot_seconds), kRevocation, 0, vm_id, v.lease, -1, 0});
    }

    void complete_task(TaskId id, TaskRt& t, double now) {
        t.done = true;
        t.in_flight = false;
        t.final_aft = now;
        t.final_vm = t.vm;
        t.final_lease = t.lease;
        result_.attempts[id] = t.next_attempt;

        Placement p;
        p.task = id;
        p.vm_id = t.vm;
        p.pricing = t.pricing;
        p.est = t.ast;
        p.eft = t.eft_planned;
        p.ast = t.ast;
        p.aft = now;
        p.attempt = t.next_attempt;
        result_.plan.placements.push_back(p);

        if (t.vm >= 0) {
            VmRt& v = vms_[t.vm];
            v.onboard.erase(std::remove(v.onboard.begin(), v.onboard.end(), id),
                            v.onboard.end());
            if (v.billing_index >= 0) {
                BillingRecord& br = result_.billing[v.billing_index];
                if (br.first_start < 0 || t.ast < br.first_start) br.first_start = t.ast;
                if (t.final_aft > br.last_finish) br.last_finish = t.final_aft;
            }
        }

        if (id == exit_) {
            finished_ = true;
            return;
        }
        for (TaskId s : g_.succs(id)) {
            TaskRt& ts = tasks_[g_.index_of(s)];
            if (--ts.preds_remaining > 0) continue;
            double r = now;
            for (TaskId q : g_.preds(s))
                r = std::max(r, tasks_[g_.index_of(q)].final_aft);
            schedule({r, kDataReady, 0, -1, 0, s, ts.next_attempt});
        }
    }

    void revoke(int vm_id, VmRt& v, double now) {
        v.st = VmRt::St::Revoked;
        BillingRecord& br = result_.billing[v.billing_index];
        for (TaskId id : v.onboard) {
            const TaskRt& tr = tasks_[g_.index_of(id)];
            if (tr.ast < now && (br.first_start < 0 || tr.ast < br.first_start))
                br.first_start = tr.ast;
        }
        if (br.first_start >= 0) {
            br.last_finish = now;
            br.cycles = billing_cycles(br.first_start, br.last_finish, cfg_.billing_cycle);
            br.cost = br.cycles * cat_.hourly_price(vm_id);
        }
        sunk_cost_ += br.cost;
        v.billing_index = -1;

        RevocationEvent ev;
        ev.vm_id = vm_id;
        ev.lease = v.lease;
        ev.time = now;
        ev.affected = v.onboard;
        std::sort(ev.affected.begin(), ev.affected.end());
        for (TaskId id : ev.affected) {
            TaskRt& tr = tasks_[g_.index_of(id)];
            tr.in_flight = false;
            tr.next_attempt += 1;
            schedule({now, kDataReady, 0, -1, 0, id, tr.next_attempt});
        }
        v.onboard.clear();
        result_.revocations.push_back(std::move(ev));
    }

    void dispatch_ready(double now) {
        while (!ready_.empty()) {
            TaskId id = ready_.begin()->second;
            ready_.erase(ready_.begin());
            dispatch_one(id, now);
        }
    }

    std::vector<TaskId> waiting_tasks() const {
        std::vector<TaskId> out;
        for (const Task& t : g_.tasks()) {
            const TaskRt& rt = tasks_[g_.index_of(t.id)];
            if (!rt.done && !rt.in_flight) out.push_back(t.id);
        }
        return out;
    }

    int live_vm(int vm, int lease) const {
        if (vm < 0) return -1;
        const VmRt& v = vms_[vm];
        bool alive = v.lease == lease &&
                     (v.st == VmRt::St::Active || v.st == VmRt::St::Provisioning);
        return alive ? vm : -1;
    }

    PlanningState snapshot(double now) const {
        PlanningState st = PlanningState::fresh(g_, cat_, params_);
        st.now = now;
        st.sunk_cost = sunk_cost_;
        for (std::size_t i = 0; i < tasks_.size(); ++i) {
            const TaskRt& t = tasks_[i];
            if (t.done) {
                st.finish[i] = t.final_aft;
                st.task_vm[i] = live_vm(t.final_vm, t.final_lease);
            } else if (t.in_flight) {
                st.finish[i] = t.aft;
                st.task_vm[i] = t.vm;
            }
        }
        for (std::size_t i = 0; i < vms_.size(); ++i) {
            const VmRt& v = vms_[i];
            auto& slot = st.vms[i];
            if (v.st != VmRt::St::Provisioning && v.st != VmRt::St::Active) continue;
            slot.provisioned = true;
            slot.ready = v.ready;
            if (v.billing_index < 0) continue;
            const BillingRecord& br = result_.billing[v.billing_index];
            double first = br.first_start;
            double last = br.last_finish;
            for (TaskId q : v.onboard) {
                const TaskRt& tq = tasks_[g_.index_of(q)];
                if (first < 0 || tq.ast < first) first = tq.ast;
                if (last < 0 || tq.aft > last) last = tq.aft;
            }
            if (first >= 0) {
                slot.used = true;
                slot.first = first;
                slot.last = last;
            }
        }
        return st;
    }

    int pick_in_class(TaskId id, const PlanningState& snap, Pricing cls) const {
        int best_vm = -1;
        double best_eft = 0.0, best_price = 0.0;
        for (std::size_t i = 0; i < cat_.pool.size(); ++i) {
            int vm = static_cast<int>(i);
            if (cat_.pricing_of(vm) != cls) continue;
            double e = eft(id, vm, snap);
            double price = cat_.hourly_price(vm);
            bool better = best_vm < 0 || e < best_eft ||
                          (e == best_eft && price < best_price);
            if (better) {
                best_vm = vm;
                best_eft = e;
                best_price = price;
            }
        }
        if (best_vm < 0)
            throw ValidationError("no VM available in the requested pricing class");
        return best_vm;
    }

    void dispatch_one(TaskId id, double now) {
        TaskRt& t = tasks_[g_.index_of(id)];
        if (t.done || t.in_flight) return;

        if (g_.task(id).is_pseudo) {
            t.in_flight = true;
            t.vm = -1;
            t.lease = 0;
            t.ast = now;
            t.aft = now;
            t.eft_planned = now;
            schedule({now, kTaskFinish, 0, -1, 0, id, t.next_attempt});
            return;
        }

        PlanningState snap = snapshot(now);
        std::vector<TaskId> waiting = waiting_tasks();
        double m_curr = heft_dynamic_estimate(snap, waiting, ranker_);
        double c_curr = gc_dynamic_estimate(snap, std::move(waiting), ranker_);
        double norm_m = normalize_metric(m_curr, bounds().m_lower, bounds().m_upper);
        double norm_c = normalize_metric(c_curr, bounds().c_lower, bounds().c_upper);
        PmiDecision pd = flc_eval(norm_m, norm_c, policy_->config.theta, policy_->flc);
        Pricing cls = policy_->pricing_override
                          ? policy_->pricing_override(id, t.next_attempt)
                          : pd.pricing;
        int vm_id = pick_in_class(id, snap, cls);
        commit_dispatch(id, t, vm_id, snap, now);

        DispatchDecision d;
        d.task = id;
        d.attempt = t.next_attempt;
        d.time = now;
        d.m_curr = m_curr;
        d.c_curr = c_curr;
        d.norm_m = norm_m;
        d.norm_c = norm_c;
        d.pmi = pd.pmi;
        d.pricing = cls;
        d.vm_id = vm_id;
        result_.decisions.push_back(d);
    }

    void commit_dispatch(TaskId id, TaskRt& t, int vm_id, const PlanningState& snap,
                         double now) {
        VmRt& v = vms_[vm_id];
        if (v.st == VmRt::St::Fresh || v.st == VmRt::St::Revoked) {
            v.lease += 1;
            v.st = VmRt::St::Provisioning;
            v.provision_ready =
                ceil_to_slot(now + cfg_.provisioning_seconds, cfg_.slot_seconds);
            v.ready = v.provision_ready;
            v.onboard.clear();
            BillingRecord br;
            br.vm_id = vm_id;
            br.lease = v.lease;
            br.pricing = cat_.pricing_of(vm_id);
            v.billing_index = static_cast<int>(result_.billing.size());
            result_.billing.push_back(br);
            schedule({v.provision_ready, kProvisionComplete, 0, vm_id, v.lease, -1, 0});
        }

        double est_raw = est(id, vm_id, snap);
        double nominal = exec_time(g_.task(id).demand_mi, cat_.speed_of(vm_id));
        RngStream vs = root_.derive("variation")
                           .derive(static_cast<std::uint64_t>(id),
                                   static_cast<std::uint64_t>(t.next_attempt));
        double factor = sample_variation(vs, cfg_.variation);
        CommitTimes ct = commit_times(std::max(est_raw, v.ready), nominal * factor,
                                      cfg_.slot_seconds);

        t.in_flight = true;
        t.vm = vm_id;
        t.lease = v.lease;
        t.ast = ct.ast;
        t.aft = ct.aft;
        t.eft_planned = ceil_to_slot(ct.ast + nominal, cfg_.slot_seconds);
        t.pricing = cat_.pricing_of(vm_id);
        v.ready = ct.aft;
        v.onboard.push_back(id);
        schedule({ct.aft, kTaskFinish, 0, vm_id, v.lease, id, t.next_attempt});
    }

    void finalize() {
        for (VmRt& v : vms_) {
            if (v.billing_index < 0) continue;
            BillingRecord& br = result_.billing[v.billing_index];
            if (br.first_start >= 0) {
                br.cycles = billing_cycles(br.first_start, br.last_finish, cfg_.billing_cycle);
                br.cost = br.cycles * cat_.hourly_price(br.vm_id);
            }
            v.billing_index = -1;
        }
        double c = 0.0;
        for (const BillingRecord& br : result_.billing) c += br.cost;
        result_.c_final = c;
        result_.m_final = tasks_[g_.index_of(exit_)].final_aft;

        auto report = validate_plan(result_.plan);
        if (!report.ok())
            throw ConstraintError("engine produced an invalid plan: " + report.violations[0]);
    }

    const WorkflowGraph& g_;
    const VmCatalog& cat_;
    SimConfig cfg_;
    PlanParams params_;
    RngStream root_;
    const UdsPolicy* policy_ = nullptr;
    Ranker ranker_;

    TaskId entry_ = 0;
    TaskId exit_ = 0;
    std::vector<TaskRt> tasks_;
    std::vector<VmRt> vms_;
    std::priority_queue<Ev, std::vector<Ev>, EvLater> events_;
    std::uint64_t seq_ = 0;
    std::set<std::pair<double, TaskId>> ready_;
    double sunk_cost_ = 0.0;
    bool finished_ = false;
    SimResult result_;
};

}  // namespace

SimResult run_simulation(const WorkflowGraph& g, const VmCatalog& catalog,
                         const UdsPolicy& policy, const SimConfig& config) {
    Engine engine(g, catalog, config);
    return engine.run_uds(policy);
}

SimResult run_simulation(const WorkflowGraph& g, const VmCatalog& catalog,
                         const ReplayPolicy& policy, const SimConfig& config) {
    Engine engine(g, catalog, config);
    return engine.run_replay(policy.plan);
}

}  // namespace uds
