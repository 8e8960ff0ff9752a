#pragma once

#include <string>
#include <vector>

#include "rng.hpp"

namespace uds {

enum class Pricing { Reliable, Unreliable };

inline const char* pricing_name(Pricing p) {
    return p == Pricing::Reliable ? "reliable" : "unreliable";
}

struct VmType {
    std::string name;
    int vcpus = 1;
    double speed_mips = 1000.0;
    double price_reliable = 0.0;
    double price_unreliable = 0.0;
    double p_hourly = 0.0;  // interruption probability per active hour (unreliable only)
};

struct VmInstance {
    int vm_id = 0;
    int type_index = 0;
    Pricing pricing = Pricing::Reliable;
};

struct VmCatalog {
    std::vector<VmType> types;
    std::vector<VmInstance> pool;

    const VmType& type_of(int vm_id) const { return types[pool[vm_id].type_index]; }
    Pricing pricing_of(int vm_id) const { return pool[vm_id].pricing; }
    double speed_of(int vm_id) const { return type_of(vm_id).speed_mips; }
    double hourly_price(int vm_id) const {
        const VmType& t = type_of(vm_id);
        return pool[vm_id].pricing == Pricing::Reliable ? t.price_reliable : t.price_unreliable;
    }
    double hazard_of(int vm_id) const {
        return pool[vm_id].pricing == Pricing::Reliable ? 0.0 : type_of(vm_id).p_hourly;
    }
    double slowest_speed() const;

    /// Copy with every interruption probability zeroed (hazard-free runs).
    VmCatalog without_hazards() const;
};

/// One reliable and one unreliable instance per type; reliable half first.
VmCatalog catalog_from_types(std::vector<VmType> types);

/// The built-in five-type catalog (a1.medium .. a1.4xlarge).
VmCatalog default_catalog(double base_mips = 1000.0);

VmCatalog parse_catalog(const std::string& text);
VmCatalog load_catalog_file(const std::string& path);

double exec_time(double demand_mi, double speed_mips);
double transfer_time(double data_mbit, bool same_vm, double bandwidth_mbps);

/// Per-slot interruption probability h with (1-h)^(3600/slot) = 1 - p_hourly.
double per_slot_hazard(double p_hourly, double slot_seconds);

struct VariationParams {
    bool enabled = true;
    double mean = 0.095;
    double stdev = 0.05;
    double cap = 0.19;
};

/// Slowdown multiplier 1 + delta, delta ~ N(mean, stdev) resampled into [0, cap].
double sample_variation(RngStream& rng, const VariationParams& vp);

}  // namespace uds
