#pragma once

// Strong (but not very strong) interference: transmitter 1 splits its power
// into layers X1' and X1'' (powers P1' + P1'' = P1). Receiver 1 decodes U1,
// then V, then U2, each a dirty-paper auxiliary against what is left of S1.
// Every split traces a point on the sum-capacity line of the state-free channel.

#include "sdic/channel.hpp"
#include "sdic/error.hpp"
#include "sdic/gaussian.hpp"
#include "sdic/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sdic {

/// U1 = X1' + alpha1 S1,  U2 = X1'' + alpha2 S1,  V = a X2 + beta S1.
struct StrongScheme {
    double P1_prime = 0.0;
    double P1_doubleprime = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double beta = 0.0;
};

struct SumRatePoint {
    double R1 = 0.0;
    double R2 = 0.0;
    double P1_doubleprime = 0.0;
};

/// Throws BadSplit unless 0 <= P1'' <= P1, WrongRegime unless the parameters
/// are strong-not-very-strong (IC, or Z channel when b = 0).
StrongScheme strong_scheme(const IcParams& p, double p1_doubleprime);

/// Closed-form rates at the split; R1 + R2 = 1/2 log(1 + P1 + a^2 P2).
SumRatePoint strong_ic_rate_point(const IcParams& p, double p1_doubleprime, double log_base = kBits);

/// Strong_IC or Strong_ZIC scene (by `channel`) with "U1", "U2", "V" added.
GaussianScene strong_scene(const IcParams& p, const StrongScheme& k, Channel channel);

/// Receiver-2 conditions for the IC: each layer's receiver-2 rate must be at
/// least the receiver-1 rate the layer carries.
///   layer1: R11 <= I(U1;Y2) - I(U1;S1)
///   layer2: R12 <= I(U2;V,Y2|U1) - I(U2;S1|U1)
///   layer3: R2  <= I(V;U1,Y2) - I(V;S1)
/// Throws WrongRegime, OrderingViolated (labels must satisfy
/// P1 + a^2 P2 <= b^2 P1 + P2; swap the transmitters manually), BadSplit.
ConditionReport strong_ic_check(const IcParams& p, double p1_doubleprime, double log_base = kBits);

/// Left side of the Z-channel condition
///   a^2 P2 (P2 + c^2 Q1 + Q2' + 1) / ((a c - beta)^2 Q1 P2 + (a^2 P2 + beta^2 Q1)(Q2' + 1))
/// with beta = a^2 P2 / (P1 + a^2 P2 + 1). Independent of the split.
double strong_zic_condition_ratio(const IcParams& p);

/// Right side 1 + a^2 P2 / (P1'' + 1); decreasing in the split.
double strong_zic_condition_rhs(const IcParams& p, double p1_doubleprime);

/// Closed-form condition, cross-checked against the gate I(V;U1,Y1) <= I(V;Y2).
/// Throws WrongRegime outside StrongNotVeryStrongZIC, BadSplit.
ConditionReport strong_zic_check(const IcParams& p, double p1_doubleprime, double log_base = kBits);

struct Segment {
    /// Smallest certified split on the grid; empty when none passes.
    std::optional<double> P1dp_min;
    /// Certified points from P1dp_min up to P1'' = P1.
    std::vector<SumRatePoint> rates;
    int grid_steps = 0;
    double grid_step = 0.0;
    /// a^2 P2 vanishes: the sum-rate line collapses and nothing is certified.
    bool degenerate = false;
};

inline constexpr int kDefaultSplitSteps = 201;

Segment strong_zic_segment(const IcParams& p, int grid_steps = kDefaultSplitSteps, double log_base = kBits);

/// R1 <= min{I(U1;Y1), I(U1;Y2)} + min{I(U2;V,Y1|U1), I(U2;V,Y2|U1)} - I(U1,U2;S1)
/// R2 <= min{I(V;U1,Y1), I(V;U1,Y2)} - I(V;S1)
/// U1, U2 may involve X1', X1'', S1; V may involve X2, S1 (else BadFactorization).
RegionBounds prop3_region(const GaussianScene& scene, const std::string& u1, const std::string& u2,
                          const std::string& v, double log_base = kBits);

class GateViolatedError : public DomainError {
public:
    GateViolatedError(double lhs, double rhs);
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Requires I(V;U1,Y1) <= I(V;Y2) (else GateViolatedError carrying both sides).
/// R1 <= I(U1;Y1) + I(U2;V,Y1|U1) - I(S1;U1,U2)
/// R2 <= I(V;U1,Y1) - I(S1;V)
RegionBounds prop4_region(const GaussianScene& scene, const std::string& u1, const std::string& u2,
                          const std::string& v, double log_base = kBits);

} // namespace sdic
