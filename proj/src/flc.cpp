#include "flc.hpp"

#include <algorithm>

#include "errors.hpp"

namespace uds {

TriangularMf::TriangularMf(double l, double p, double r) : left(l), peak(p), right(r) {
    if (!(l <= p && p <= r) || l == r)
        throw ValidationError("malformed triangular membership function");
}

double TriangularMf::operator()(double x) const {
    if (x < left || x > right) return 0.0;
    if (x == peak) return 1.0;
    if (x < peak) return (x - left) / (peak - left);
    return (right - x) / (right - peak);
}

Partition default_partition() {
    Partition p;
    p.low = TriangularMf(0.0, 0.0, 0.5);
    p.medium = TriangularMf(0.0, 0.5, 1.0);
    p.high = TriangularMf(0.5, 1.0, 1.0);
    return p;
}

FuzzyRuleBase default_rulebase() {
    FuzzyRuleBase rb;
    rb.rules = {
        {Term::Low, Term::Any, Term::Low},
        {Term::Medium, Term::Low, Term::High},
        {Term::Medium, Term::Medium, Term::Medium},
        {Term::Medium, Term::High, Term::Low},
        {Term::High, Term::Any, Term::High},
    };
    return rb;
}

const FlcConfig& default_flc() {
    static const FlcConfig cfg;
    return cfg;
}

double AggregatedMf::operator()(double x) const {
    double v = 0.0;
    for (const Clip& c : clips) v = std::max(v, std::min(c.strength, c.mf(x)));
    return v;
}

namespace {

const TriangularMf& term_mf(const Partition& p, Term t) {
    switch (t) {
        case Term::Low: return p.low;
        case Term::Medium: return p.medium;
        case Term::High: return p.high;
        case Term::Any: break;
    }
    throw ValidationError("Any has no membership function");
}

double antecedent_strength(const Partition& p, Term t, double x) {
    if (t == Term::Any) return 1.0;
    return term_mf(p, t)(x);
}

}  // namespace

AggregatedMf infer(double norm_m, double norm_c, const FlcConfig& cfg) {
    AggregatedMf agg;
    for (const FuzzyRule& r : cfg.rules.rules) {
        double sm = antecedent_strength(cfg.input_m, r.m, norm_m);
        double sc = antecedent_strength(cfg.input_c, r.c, norm_c);
        double strength = std::min(sm, sc);
        if (strength <= 0.0) continue;
        agg.clips.push_back({strength, term_mf(cfg.output, r.out)});
    }
    return agg;
}

double defuzzify_centroid(const AggregatedMf& agg, int samples) {
    if (samples < 2) throw ValidationError("centroid needs at least 2 samples");
    double num = 0.0;
    double den = 0.0;
    for (int k = 0; k < samples; ++k) {
        double x = (k + 0.5) / samples;
        double mu = agg(x);
        num += x * mu;
        den += mu;
    }
    if (den == 0.0) throw ValidationError("aggregate membership is identically zero");
    return num / den;
}

double flc_pmi(double norm_m, double norm_c, const FlcConfig& cfg) {
    double nm = std::clamp(norm_m, 0.0, 1.0);
    double nc = std::clamp(norm_c, 0.0, 1.0);
    return defuzzify_centroid(infer(nm, nc, cfg), cfg.samples);
}

PmiDecision flc_eval(double norm_m, double norm_c, double theta, const FlcConfig& cfg) {
    if (theta < 0.0 || theta > 1.0) throw ValidationError("theta must lie in [0,1]");
    PmiDecision d;
    d.theta = theta;
    d.pmi = flc_pmi(norm_m, norm_c, cfg);
    d.pricing = d.pmi >= theta ? Pricing::Reliable : Pricing::Unreliable;
    return d;
}

}  // namespace uds
