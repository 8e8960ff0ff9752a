#include "resources.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace uds {

double VmCatalog::slowest_speed() const {
    if (pool.empty()) throw ValidationError("catalog pool is empty");
    double s = speed_of(0);
    for (const VmInstance& v : pool) s = std::min(s, speed_of(v.vm_id));
    return s;
}

VmCatalog VmCatalog::without_hazards() const {
    VmCatalog c = *this;
    for (VmType& t : c.types) t.p_hourly = 0.0;
    return c;
}

VmCatalog catalog_from_types(std::vector<VmType> types) {
    if (types.empty()) throw ValidationError("catalog needs at least one VM type");
    for (const VmType& t : types) {
        if (t.speed_mips <= 0) throw ValidationError("VM type " + t.name + " has no speed");
        if (t.price_unreliable >= t.price_reliable)
            throw ValidationError("VM type " + t.name +
                                  ": unreliable price must undercut reliable price");
        if (t.p_hourly < 0 || t.p_hourly >= 1)
            throw ValidationError("VM type " + t.name + ": p_hourly outside [0,1)");
    }
    VmCatalog c;
    c.types = std::move(types);
    int id = 0;
    for (std::size_t i = 0; i < c.types.size(); ++i)
        c.pool.push_back({id++, static_cast<int>(i), Pricing::Reliable});
    for (std::size_t i = 0; i < c.types.size(); ++i)
        c.pool.push_back({id++, static_cast<int>(i), Pricing::Unreliable});
    return c;
}

VmCatalog default_catalog(double base_mips) {
    if (base_mips <= 0) throw ValidationError("base_mips must be positive");
    std::vector<VmType> types = {
        {"a1.medium", 2, 2 * base_mips, 0.0255, 0.005, 0.30},
        {"a1.large", 4, 4 * base_mips, 0.051, 0.0098, 0.28},
        {"a1.xlarge", 8, 8 * base_mips, 0.102, 0.0197, 0.25},
        {"a1.2xlarge", 16, 16 * base_mips, 0.204, 0.0394, 0.22},
        {"a1.4xlarge", 32, 32 * base_mips, 0.408, 0.0788, 0.20},
    };
    return catalog_from_types(std::move(types));
}

VmCatalog parse_catalog(const std::string& text) {
    double base_mips = 1000.0;
    std::vector<VmType> types;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "base_mips") {
            std::string eq;
            if (!(ls >> eq >> base_mips) || eq != "=")
                throw ParseError("catalog line " + std::to_string(lineno) +
                                 ": expected 'base_mips = <value>'");
            continue;
        }
        if (first != "type")
            throw ParseError("catalog line " + std::to_string(lineno) +
                             ": expected 'type' or 'base_mips', got '" + first + "'");
        VmType t;
        if (!(ls >> t.name >> t.vcpus >> t.price_reliable >> t.price_unreliable >> t.p_hourly))
            throw ParseError("catalog line " + std::to_string(lineno) +
                             ": expected 'type <name> <vcpus> <price_reliable> "
                             "<price_unreliable> <p_hourly>'");
        types.push_back(t);
    }
    if (types.empty()) throw ParseError("catalog defines no VM types");
    for (VmType& t : types) {
        if (t.vcpus <= 0) throw ParseError("VM type " + t.name + " has no vCPUs");
        t.speed_mips = t.vcpus * base_mips;
    }
    return catalog_from_types(std::move(types));
}

VmCatalog load_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open catalog file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_catalog(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

double exec_time(double demand_mi, double speed_mips) {
    if (speed_mips <= 0) throw ValidationError("speed must be positive");
    if (demand_mi < 0) throw ValidationError("demand must be non-negative");
    return demand_mi / speed_mips;
}

double transfer_time(double data_mbit, bool same_vm, double bandwidth_mbps) {
    if (bandwidth_mbps <= 0) throw ValidationError("bandwidth must be positive");
    if (data_mbit < 0) throw ValidationError("data volume must be non-negative");
    if (same_vm) return 0.0;
    return data_mbit / bandwidth_mbps;
}

double per_slot_hazard(double p_hourly, double slot_seconds) {
    if (p_hourly < 0 || p_hourly >= 1)
        throw ValidationError("p_hourly must lie in [0,1); the one-hour rule covers p=1");
    if (slot_seconds <= 0) throw ValidationError("slot length must be positive");
    return 1.0 - std::pow(1.0 - p_hourly, slot_seconds / 3600.0);
}

double sample_variation(RngStream& rng, const VariationParams& vp) {
    if (!vp.enabled) return 1.0;
    return 1.0 + rng.truncated_normal(vp.mean, vp.stdev, 0.0, vp.cap);
}

}  // namespace uds
