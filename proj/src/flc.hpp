#pragma once

#include <vector>

#include "resources.hpp"

namespace uds {

struct TriangularMf {
    double left = 0.0;
    double peak = 0.0;
    double right = 1.0;

    TriangularMf() = default;
    TriangularMf(double l, double p, double r);

    double operator()(double x) const;
};

struct Partition {
    TriangularMf low;
    TriangularMf medium;
    TriangularMf high;
};

Partition default_partition();

enum class Term { Low, Medium, High, Any };

struct FuzzyRule {
    Term m = Term::Any;
    Term c = Term::Any;
    Term out = Term::Low;
};

struct FuzzyRuleBase {
    std::vector<FuzzyRule> rules;
};

/// The built-in rule base: (Low,Any->Low), (Medium,Low->High),
/// (Medium,Medium->Medium), (Medium,High->Low), (High,Any->High).
FuzzyRuleBase default_rulebase();

struct FlcConfig {
    Partition input_m = default_partition();
    Partition input_c = default_partition();
    Partition output = default_partition();
    FuzzyRuleBase rules = default_rulebase();
    int samples = 1001;
};

const FlcConfig& default_flc();

/// Max-of-clipped-consequents aggregate produced by inference.
struct AggregatedMf {
    struct Clip {
        double strength;
        TriangularMf mf;
    };
    std::vector<Clip> clips;

    double operator()(double x) const;
    bool empty() const { return clips.empty(); }
};

AggregatedMf infer(double norm_m, double norm_c, const FlcConfig& cfg = default_flc());

/// Centroid by midpoint discretization over [0,1].
double defuzzify_centroid(const AggregatedMf& agg, int samples = 1001);

struct PmiDecision {
    double pmi = 0.0;
    Pricing pricing = Pricing::Unreliable;
    double theta = 0.5;
};

/// Clamps inputs to [0,1], runs fuzzify -> infer -> defuzzify.
double flc_pmi(double norm_m, double norm_c, const FlcConfig& cfg = default_flc());

PmiDecision flc_eval(double norm_m, double norm_c, double theta,
                     const FlcConfig& cfg = default_flc());

}  // namespace uds
