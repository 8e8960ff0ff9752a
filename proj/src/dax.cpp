#include "dax.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace uds {

namespace {

namespace pt = boost::property_tree;

constexpr double kBytesToMbit = 8.0 / 1e6;

struct JobInfo {
    TaskId id;
    std::map<std::string, double> inputs;   // file -> bytes
    std::map<std::string, double> outputs;  // file -> bytes
};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

WorkflowGraph parse_dax(const std::string& xml_text, double slowest_mips) {
    if (slowest_mips <= 0) throw ValidationError("slowest_mips must be positive");

    pt::ptree doc;
    try {
        std::istringstream in(xml_text);
        pt::read_xml(in, doc);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError("malformed DAX XML at line " + std::to_string(e.line()) + ": " +
                         e.message());
    }

    const pt::ptree* root = nullptr;
    for (const auto& [key, node] : doc) {
        if (key == "<xmlcomment>" || key == "<xmlattr>") continue;
        root = &node;
        break;
    }
    if (!root) throw ParseError("DAX document has no root element");

    std::vector<Task> tasks;
    std::map<std::string, JobInfo> jobs;

    for (const auto& [key, node] : *root) {
        if (key != "job") continue;
        auto name = node.get_optional<std::string>("<xmlattr>.id");
        if (!name) throw ParseError("job element without id attribute");
        auto runtime = node.get_optional<double>("<xmlattr>.runtime");
        if (!runtime) throw ParseError("job " + *name + " has no runtime attribute");
        if (*runtime < 0) throw ParseError("job " + *name + " has negative runtime");
        if (jobs.count(*name)) throw ParseError("duplicate job id " + *name);

        JobInfo info;
        info.id = static_cast<TaskId>(tasks.size());
        for (const auto& [jkey, jnode] : node) {
            if (jkey != "uses") continue;
            auto file = jnode.get_optional<std::string>("<xmlattr>.file");
            auto link = jnode.get_optional<std::string>("<xmlattr>.link");
            double size = jnode.get<double>("<xmlattr>.size", 0.0);
            if (!file || !link) continue;
            if (*link == "input")
                info.inputs[*file] += size;
            else if (*link == "output")
                info.outputs[*file] += size;
        }
        tasks.push_back({info.id, *name, *runtime * slowest_mips, false});
        jobs.emplace(*name, std::move(info));
    }
    if (tasks.empty()) throw ParseError("DAX document contains no job elements");

    std::set<std::pair<TaskId, TaskId>> seen;
    std::vector<Edge> edges;
    for (const auto& [key, node] : *root) {
        if (key != "child") continue;
        auto child_ref = node.get_optional<std::string>("<xmlattr>.ref");
        if (!child_ref) throw ParseError("child element without ref attribute");
        auto cit = jobs.find(*child_ref);
        if (cit == jobs.end()) throw ReferenceError("child references unknown job " + *child_ref);
        for (const auto& [pkey, pnode] : node) {
            if (pkey != "parent") continue;
            auto parent_ref = pnode.get_optional<std::string>("<xmlattr>.ref");
            if (!parent_ref) throw ParseError("parent element without ref attribute");
            auto it = jobs.find(*parent_ref);
            if (it == jobs.end())
                throw ReferenceError("parent references unknown job " + *parent_ref);
            if (it->second.id == cit->second.id)
                throw CycleError("job " + *child_ref + " depends on itself");
            if (!seen.emplace(it->second.id, cit->second.id).second) continue;

            double bytes = 0.0;
            for (const auto& [file, size] : it->second.outputs)
                if (cit->second.inputs.count(file)) bytes += size;
            edges.push_back({it->second.id, cit->second.id, bytes * kBytesToMbit});
        }
    }
    return WorkflowGraph::build(std::move(tasks), std::move(edges));
}

WorkflowGraph load_dax_file(const std::string& path, double slowest_mips) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open DAX file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_dax(buf.str(), slowest_mips);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string serialize_dax(const WorkflowGraph& g, double slowest_mips) {
    if (slowest_mips <= 0) throw ValidationError("slowest_mips must be positive");
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<adag jobCount=\"" << g.size() << "\">\n";
    for (const Task& t : g.tasks()) {
        out << "  <job id=\"" << t.name << "\" runtime=\""
            << fmt_double(t.demand_mi / slowest_mips) << "\">\n";
        for (TaskId p : g.preds(t.id)) {
            double data = g.edge_data(p, t.id);
            if (data <= 0) continue;
            out << "    <uses file=\"f_" << g.task(p).name << "_" << t.name
                << "\" link=\"input\" size=\"" << fmt_double(data / kBytesToMbit) << "\"/>\n";
        }
        for (TaskId s : g.succs(t.id)) {
            double data = g.edge_data(t.id, s);
            if (data <= 0) continue;
            out << "    <uses file=\"f_" << t.name << "_" << g.task(s).name
                << "\" link=\"output\" size=\"" << fmt_double(data / kBytesToMbit) << "\"/>\n";
        }
        out << "  </job>\n";
    }
    for (const Task& t : g.tasks()) {
        const auto& preds = g.preds(t.id);
        if (preds.empty()) continue;
        out << "  <child ref=\"" << t.name << "\">\n";
        for (TaskId p : preds) out << "    <parent ref=\"" << g.task(p).name << "\"/>\n";
        out << "  </child>\n";
    }
    out << "</adag>\n";
    return out.str();
}

}  // namespace uds
