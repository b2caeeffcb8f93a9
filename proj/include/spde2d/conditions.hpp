#pragma once

#include <string>
#include <vector>

#include "spde2d/config.hpp"

namespace spde2d {

// Piecewise rate h^(a tilde-min b) for h in (0,1):
//   h^a (a < b), -h^b log h (a = b), h^b (a > b).
double tilde_exp(double h, double a, double b);

// Companion for bases L > 1: L^a (a < b), L^b / log L (a = b), L^b (a > b).
double tilde_exp_large(double big, double a, double b);

// Consistency-rate factor of the coefficient estimators:
//   sqrt(m N) * min(N^{alpha tilde-min 2 - alpha}, eps^2 N^{alpha0 - alpha}).
double rate_r(double m, double N, double epsilon, double alpha, double alpha0);

enum class ConditionStatus { pass, warn, info };

struct ConditionEntry {
    std::string name;
    double value = 0.0;
    ConditionStatus status = ConditionStatus::info;
    std::string note;
};

struct ConditionsReport {
    std::vector<ConditionEntry> entries;
    std::string to_text() const;
};

// Numeric left-hand sides of the sampling-design conditions: the initial
// value norms [A1]/[A2], the noise-time balance quantities [B1]/[B2], the
// rate factor, and the fifteen [C1]-[C5] ratios.  These are asymptotic
// conditions, so values are tagged pass/warn against the configured
// threshold; nothing hard-fails.  Pure function of the config (no RNG).
ConditionsReport check_conditions(const ExperimentConfig& config);

}  // namespace spde2d
