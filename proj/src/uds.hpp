#pragma once

#include <functional>

#include "baselines.hpp"
#include "flc.hpp"

namespace uds {

struct UdsConfig {
    double theta = 0.5;
    double a = 2.0;
    double b = 2.0;
};

struct DispatchDecision {
    TaskId task = 0;
    int attempt = 1;
    double time = 0.0;
    double m_curr = 0.0;
    double c_curr = 0.0;
    double norm_m = 0.0;
    double norm_c = 0.0;
    double pmi = 0.0;
    Pricing pricing = Pricing::Unreliable;
    int vm_id = -1;
};

/// (value - lower) / (upper - lower), clamped into [0,1].
double normalize_metric(double value, double lower, double upper);

struct UdsPolicy {
    UdsConfig config;
    FlcConfig flc = default_flc();

    // Test hook: when set, replaces the FLC's pricing-class choice for a
    // given (task, attempt); the PMI trace is still recorded.
    std::function<Pricing(TaskId, int)> pricing_override;
};

}  // namespace uds
