#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sdic {

/// Verdict tolerance: an inequality holds when its margin is >= -kVerdictTol.
inline constexpr double kVerdictTol = 1e-9;

/// One inequality `lhs <= rhs`; margin = rhs - lhs.
struct Condition {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool holds = false;
};

inline Condition make_condition(std::string name, double lhs, double rhs) {
    const double margin = rhs - lhs;
    return {std::move(name), lhs, rhs, margin, margin >= -kVerdictTol};
}

struct ConditionReport {
    /// The conditions that decide the verdict.
    std::vector<Condition> conditions;
    /// Independent evaluations of the same requirement (e.g. the mutual
    /// information form of a closed-form inequality). Informational only.
    std::vector<Condition> cross_checks;
    bool achieves_capacity = false;
    /// Corner (R1_max, R2_max) of the certified rate rectangle.
    std::optional<std::pair<double, double>> capacity_rect;
    /// Named auxiliary quantities (coefficients, identities, rates).
    std::map<std::string, double> values;

    bool all_hold() const {
        for (const auto& c : conditions) {
            if (!c.holds) return false;
        }
        return true;
    }
};

/// Rate bounds from an achievable-region evaluator. Gel'fand-Pinsker bounds
/// can be negative for poor auxiliaries; they are clamped to zero and flagged.
struct RegionBounds {
    double R1 = 0.0;
    double R2 = 0.0;
    bool r1_clamped = false;
    bool r2_clamped = false;
};

inline RegionBounds clamp_bounds(double r1, double r2) {
    RegionBounds out;
    out.r1_clamped = r1 < 0.0;
    out.r2_clamped = r2 < 0.0;
    out.R1 = out.r1_clamped ? 0.0 : r1;
    out.R2 = out.r2_clamped ? 0.0 : r2;
    return out;
}

} // namespace sdic
