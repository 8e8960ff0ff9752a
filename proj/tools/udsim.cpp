#include <algorithm>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "udsched.h"

namespace {

struct CatalogDeleter {
    void operator()(uds_catalog* c) const { uds_catalog_free(c); }
};
struct WorkflowDeleter {
    void operator()(uds_workflow* w) const { uds_workflow_free(w); }
};
struct ResultDeleter {
    void operator()(uds_result* r) const { uds_result_free(r); }
};
using CatalogPtr = std::unique_ptr<uds_catalog, CatalogDeleter>;
using WorkflowPtr = std::unique_ptr<uds_workflow, WorkflowDeleter>;
using ResultPtr = std::unique_ptr<uds_result, ResultDeleter>;

const char* const kPatterns[] = {"pipeline", "fanout_fanin", "aggregation",
                                 "distribution", "redistribution"};

struct WorkflowSource {
    std::string name;      // as given on the command line
    bool synthetic = false;
    std::string pattern;   // synthetic only
    int n_tasks = 0;       // synthetic only
};

// "pipeline:100" selects a generator; anything else is a DAX file path.
WorkflowSource parse_source(const std::string& text) {
    WorkflowSource src;
    src.name = text;
    auto pos = text.rfind(':');
    if (pos != std::string::npos && pos > 0 && pos + 1 < text.size()) {
        std::string head = text.substr(0, pos);
        std::string tail = text.substr(pos + 1);
        bool known = std::any_of(std::begin(kPatterns), std::end(kPatterns),
                                 [&](const char* p) { return head == p; });
        bool numeric = !tail.empty() &&
                       std::all_of(tail.begin(), tail.end(),
                                   [](unsigned char c) { return std::isdigit(c); });
        if (known && numeric) {
            src.synthetic = true;
            src.pattern = head;
            src.n_tasks = std::stoi(tail);
        }
    }
    return src;
}

struct RunConfig {
    std::vector<std::string> workflows;
    std::string catalog_file;
    std::vector<double> thetas{0.5};
    std::vector<double> a_values{2.0};
    std::vector<double> b_values{2.0};
    int reps = 1;
    std::uint64_t seed = 1;
    std::string out = ".";
    bool trace = false;
    uds_run_params sim{};

    RunConfig() { uds_run_params_init(&sim); }
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& value, const std::string& key) {
    std::string spaced = value;
    std::replace(spaced.begin(), spaced.end(), ',', ' ');
    std::istringstream in(spaced);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    if (out.empty() || !in.eof())
        throw std::runtime_error("key '" + key + "': expected a list of numbers, got '" +
                                 value + "'");
    return out;
}

double parse_num(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("key '" + key + "': expected a number, got '" + value +
                                 "'");
    }
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
    if (value == "0" || value == "false" || value == "no" || value == "off")
        return false;
    throw std::runtime_error("key '" + key + "': expected a boolean, got '" + value +
                             "'");
}

// Line-oriented config: [section] headers over `key = value` lines, # comments.
// Sections: workflow, catalog, uds, sim, sweep.
void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        try {
            if (line.front() == '[' && line.back() == ']') {
                section = trim(line.substr(1, line.size() - 2));
                if (section != "workflow" && section != "catalog" && section != "uds" &&
                    section != "sim" && section != "sweep")
                    throw std::runtime_error("unknown section [" + section + "]");
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("expected 'key = value', got '" + line + "'");
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (section.empty())
                throw std::runtime_error("key '" + key + "' outside any [section]");
            if (section == "workflow") {
                if (key == "source" || key == "workflow")
                    cfg.workflows.push_back(value);
                else
                    throw std::runtime_error("unknown key '" + key +
                                             "' in [workflow]");
            } else if (section == "catalog") {
                if (key == "file" || key == "catalog")
                    cfg.catalog_file = value;
                else
                    throw std::runtime_error("unknown key '" + key + "' in [catalog]");
            } else if (section == "uds") {
                if (key == "theta")
                    cfg.thetas = parse_list(value, key);
                else if (key == "a")
                    cfg.a_values = parse_list(value, key);
                else if (key == "b")
                    cfg.b_values = parse_list(value, key);
                else
                    throw std::runtime_error("unknown key '" + key + "' in [uds]");
            } else if (section == "sim") {
                if (key == "seed")
                    cfg.seed = std::stoull(value);
                else if (key == "slot_seconds")
                    cfg.sim.slot_seconds = parse_num(value, key);
                else if (key == "billing_cycle_seconds")
                    cfg.sim.billing_cycle_seconds = parse_num(value, key);
                else if (key == "bandwidth_mbps")
                    cfg.sim.bandwidth_mbps = parse_num(value, key);
                else if (key == "provisioning_seconds")
                    cfg.sim.provisioning_seconds = parse_num(value, key);
                else if (key == "variation_enabled")
                    cfg.sim.variation_enabled = parse_bool(value, key) ? 1 : 0;
                else if (key == "variation_mean")
                    cfg.sim.variation_mean = parse_num(value, key);
                else if (key == "variation_stdev")
                    cfg.sim.variation_stdev = parse_num(value, key);
                else if (key == "variation_cap")
                    cfg.sim.variation_cap = parse_num(value, key);
                else if (key == "max_sim_seconds")
                    cfg.sim.max_sim_seconds = parse_num(value, key);
                else
                    throw std::runtime_error("unknown key '" + key + "' in [sim]");
            } else if (section == "sweep") {
                if (key == "reps")
                    cfg.reps = static_cast<int>(parse_num(value, key));
                else if (key == "out")
                    cfg.out = value;
                else if (key == "trace")
                    cfg.trace = parse_bool(value, key);
                else
                    throw std::runtime_error("unknown key '" + key + "' in [sweep]");
            }
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " +
                                     e.what());
        }
    }
}

std::string g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

CatalogPtr make_catalog(const std::string& file) {
    uds_catalog* raw = nullptr;
    uds_status st =
        file.empty() ? uds_catalog_default(&raw) : uds_catalog_load(file.c_str(), &raw);
    if (st != UDS_OK)
        throw std::runtime_error(std::string("catalog: ") + uds_last_error());
    return CatalogPtr(raw);
}

WorkflowPtr make_workflow(const WorkflowSource& src, const uds_catalog* cat,
                          std::uint64_t master_seed) {
    uds_workflow* raw = nullptr;
    uds_status st;
    if (src.synthetic) {
        std::string label = "workflow:" + src.name;
        std::uint64_t wf_seed = uds_derive_seed(master_seed, label.c_str(), 0);
        st = uds_workflow_synthetic(src.pattern.c_str(), src.n_tasks, wf_seed, &raw);
    } else {
        st = uds_workflow_load_dax(src.name.c_str(), cat, &raw);
    }
    if (st != UDS_OK)
        throw std::runtime_error("workflow '" + src.name + "': " + uds_last_error());
    return WorkflowPtr(raw);
}

struct SummaryRow {
    std::string workflow;
    double theta, a, b;
    int rep;
    std::uint64_t seed;
    uds_metrics m;
};

int cmd_run(const RunConfig& cfg) {
    if (cfg.workflows.empty()) {
        std::fprintf(stderr, "error: no workflows given (use --workflow)\n");
        return 1;
    }
    if (cfg.reps < 1) {
        std::fprintf(stderr, "error: --reps must be >= 1\n");
        return 1;
    }

    CatalogPtr catalog;
    try {
        catalog = make_catalog(cfg.catalog_file);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }

    std::error_code ec;
    std::filesystem::create_directories(cfg.out, ec);
    if (ec) {
        std::fprintf(stderr, "error: cannot create output directory '%s': %s\n",
                     cfg.out.c_str(), ec.message().c_str());
        return 1;
    }

    const std::size_t runs_per_workflow =
        cfg.thetas.size() * cfg.a_values.size() * cfg.b_values.size() *
        static_cast<std::size_t>(cfg.reps);
    std::vector<SummaryRow> rows;
    rows.reserve(runs_per_workflow * cfg.workflows.size());
    std::size_t failures = 0;
    std::size_t run_id = 0;

    for (const std::string& text : cfg.workflows) {
        WorkflowSource src = parse_source(text);
        WorkflowPtr wf;
        try {
            wf = make_workflow(src, catalog.get(), cfg.seed);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s (skipping %zu runs)\n", e.what(),
                         runs_per_workflow);
            failures += runs_per_workflow;
            run_id += runs_per_workflow;
            continue;
        }
        for (double theta : cfg.thetas)
            for (double a : cfg.a_values)
                for (double b : cfg.b_values)
                    for (int rep = 0; rep < cfg.reps; ++rep, ++run_id) {
                        char label[512];
                        std::snprintf(label, sizeof(label),
                                      "%s|theta=%.17g|a=%.17g|b=%.17g",
                                      src.name.c_str(), theta, a, b);
                        std::uint64_t run_seed =
                            uds_derive_seed(cfg.seed, label, static_cast<std::uint64_t>(rep));
                        uds_run_params params = cfg.sim;
                        params.theta = theta;
                        params.a = a;
                        params.b = b;
                        params.seed = run_seed;
                        uds_result* raw = nullptr;
                        if (uds_run(wf.get(), catalog.get(), &params, &raw) != UDS_OK) {
                            std::fprintf(stderr,
                                         "error: run %s rep %d failed: %s\n", label,
                                         rep, uds_last_error());
                            ++failures;
                            continue;
                        }
                        ResultPtr result(raw);
                        SummaryRow row{src.name, theta, a, b, rep, run_seed, {}};
                        if (uds_result_metrics(result.get(), &row.m) != UDS_OK) {
                            std::fprintf(stderr, "error: metrics for %s rep %d: %s\n",
                                         label, rep, uds_last_error());
                            ++failures;
                            continue;
                        }
                        if (cfg.trace) {
                            std::string tpath = cfg.out + "/trace-" +
                                                std::to_string(run_id) + ".csv";
                            if (uds_result_write_trace_csv(result.get(),
                                                           tpath.c_str()) != UDS_OK)
                                std::fprintf(stderr, "warning: trace %s: %s\n",
                                             tpath.c_str(), uds_last_error());
                        }
                        rows.push_back(std::move(row));
                    }
    }

    std::string summary_path = cfg.out + "/summary.csv";
    std::ofstream out(summary_path, std::ios::binary);
    if (!out) {
        std::fprintf(stderr, "error: cannot write %s\n", summary_path.c_str());
        return 1;
    }
    out << "workflow,theta,a,b,rep,seed,m_final,c_final,norm_m,norm_c,acc,succ_r\n";
    for (const SummaryRow& r : rows) {
        char buf[512];
        std::snprintf(buf, sizeof(buf), "%s,%s,%s,%s,%d,%" PRIu64 ",%s,%s,%s,%s,%s,%s\n",
                      r.workflow.c_str(), g6(r.theta).c_str(), g6(r.a).c_str(),
                      g6(r.b).c_str(), r.rep, r.seed, g6(r.m.m_final).c_str(),
                      g6(r.m.c_final).c_str(), g6(r.m.norm_m_final).c_str(),
                      g6(r.m.norm_c_final).c_str(), g6(r.m.acc).c_str(),
                      g6(r.m.succ_r).c_str());
        out << buf;
    }
    out.flush();
    if (!out) {
        std::fprintf(stderr, "error: failed writing %s\n", summary_path.c_str());
        return 1;
    }
    std::printf("wrote %zu rows to %s (%zu failed runs)\n", rows.size(),
                summary_path.c_str(), failures);
    return failures == 0 ? 0 : 1;
}

int cmd_bounds(const std::string& workflow, const std::string& catalog_file, double a,
               double b, std::uint64_t seed) {
    try {
        CatalogPtr catalog = make_catalog(catalog_file);
        WorkflowSource src = parse_source(workflow);
        WorkflowPtr wf = make_workflow(src, catalog.get(), seed);
        uds_workflow_info info{};
        uds_bounds bounds{};
        if (uds_workflow_get_info(wf.get(), &info) != UDS_OK ||
            uds_compute_bounds(wf.get(), catalog.get(), a, b, &bounds) != UDS_OK)
            throw std::runtime_error(uds_last_error());
        std::printf("workflow: %s (tasks=%d edges=%d pseudo=%d)\n", src.name.c_str(),
                    info.n_tasks, info.n_edges, info.n_pseudo);
        std::printf("m_lower = %.10g s\n", bounds.m_lower);
        std::printf("c_lower = %.10g\n", bounds.c_lower);
        std::printf("m_upper = %.10g s (a = %.10g)\n", bounds.m_upper, a);
        std::printf("c_upper = %.10g (b = %.10g)\n", bounds.c_upper, b);
        std::printf("min-eft plan:  makespan %.10g s, cost %.10g\n", bounds.m_lower,
                    bounds.heft_plan_cost);
        std::printf("min-cost plan: makespan %.10g s, cost %.10g\n",
                    bounds.gc_plan_makespan, bounds.c_lower);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

int cmd_validate(const std::string& path, const std::string& catalog_file) {
    try {
        CatalogPtr catalog = make_catalog(catalog_file);
        uds_workflow* raw = nullptr;
        if (uds_workflow_load_dax(path.c_str(), catalog.get(), &raw) != UDS_OK)
            throw std::runtime_error(uds_last_error());
        WorkflowPtr wf(raw);
        uds_workflow_info info{};
        if (uds_workflow_get_info(wf.get(), &info) != UDS_OK)
            throw std::runtime_error(uds_last_error());
        std::printf("tasks: %d (%d pseudo)\n", info.n_tasks, info.n_pseudo);
        std::printf("edges: %d\n", info.n_edges);
        std::printf("entry: %d  exit: %d\n", info.entry_id, info.exit_id);
        if (info.n_pseudo > 0)
            std::printf(
                "note: added %d zero-work pseudo task(s) to give a single entry and "
                "a single exit\n",
                info.n_pseudo);
        std::printf("valid\n");
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

// --config is applied before flag parsing so explicit flags win.
std::string find_config_arg(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return "";
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::string config_path = find_config_arg(argc, argv);
    if (!config_path.empty()) {
        try {
            load_config_file(config_path, cfg);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return 1;
        }
    }

    CLI::App app{"workflow scheduling simulator with fuzzy pricing-class selection"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(uds_version()));

    std::string ignored_config;
    auto* run = app.add_subcommand("run", "run a seeded experiment sweep, write summary.csv");
    run->add_option("--workflow", cfg.workflows,
                    "DAX file path or generator pattern:n (repeatable)");
    run->add_option("--theta", cfg.thetas, "pricing thresholds to sweep")
        ->delimiter(',');
    run->add_option("--a", cfg.a_values, "makespan upper-bound factors to sweep")
        ->delimiter(',');
    run->add_option("--b", cfg.b_values, "cost upper-bound factors to sweep")
        ->delimiter(',');
    run->add_option("--reps", cfg.reps, "replications per sweep point");
    run->add_option("--seed", cfg.seed, "master seed");
    run->add_option("--out", cfg.out, "output directory");
    run->add_flag("--trace", cfg.trace, "write per-run trace-<id>.csv files");
    run->add_option("--config", ignored_config, "config file (key = value sections)");
    run->add_option("--catalog", cfg.catalog_file, "VM catalog file");

    std::string one_workflow, bounds_catalog;
    double bounds_a = 2.0, bounds_b = 2.0;
    std::uint64_t bounds_seed = 1;
    auto* bounds = app.add_subcommand("bounds", "print makespan/cost lower bounds");
    bounds->add_option("--workflow", one_workflow, "DAX file path or pattern:n")
        ->required();
    bounds->add_option("--catalog", bounds_catalog, "VM catalog file");
    bounds->add_option("--a", bounds_a, "makespan upper-bound factor");
    bounds->add_option("--b", bounds_b, "cost upper-bound factor");
    bounds->add_option("--seed", bounds_seed, "master seed (for pattern:n sources)");

    std::string validate_path, validate_catalog;
    auto* validate = app.add_subcommand("validate", "parse a DAX file and report structure");
    validate->add_option("--workflow", validate_path, "DAX file path")->required();
    validate->add_option("--catalog", validate_catalog, "VM catalog file");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(cfg);
    if (bounds->parsed())
        return cmd_bounds(one_workflow, bounds_catalog, bounds_a, bounds_b, bounds_seed);
    if (validate->parsed()) return cmd_validate(validate_path, validate_catalog);
    return 1;
}
