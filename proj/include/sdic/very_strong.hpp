#pragma once

// Very strong interference: cooperative dirty-paper coding where each
// receiver decodes the other user's auxiliary first, subtracts it, and then
// decodes its own auxiliary against the remaining combined state.

#include "sdic/channel.hpp"
#include "sdic/gaussian.hpp"
#include "sdic/report.hpp"

#include <string>

namespace sdic {

/// U = X1 + alpha1 S1' + alpha2 S2,  V = X2 + beta1 S1' + beta2 S2.
struct VsIcCoefficients {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
};

/// U = X1 + alpha1 S2 + alpha2 S1',  V = X2 + beta S2.
struct VsZicCoefficients {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double beta = 0.0;
};

/// Joint dirty-paper weights for the IC. Each receiver, after removing the
/// other user's auxiliary, sees its own input against a single effective
/// state; the weights make both auxiliaries the single-user DPC choice
/// P/(P+1) against those effective states.
/// Throws SingularDenominator when |(P1+1)(P2+1) - a b P1 P2| <= 1e-9.
VsIcCoefficients vs_ic_coefficients(const IcParams& p, const StateDecomp& decomp);

/// Channel scene (VS_IC) with auxiliaries "U" and "V" added.
GaussianScene vs_ic_scene(const IcParams& p, const VsIcCoefficients& k);

/// Both capacity conditions evaluated without the regime gate; used for curve
/// sweeps over parameters that leave the regime.
ConditionReport vs_ic_evaluate(const IcParams& p, double log_base = kBits);

/// Checks whether the point-to-point rectangle is achieved. Conditions:
///   cond1: 1/2 log(1+P1) <= h(X1) - h(U,Y2) + h(Y2)
///   cond2: 1/2 log(1+P2) <= h(X2) - h(V,Y1) + h(Y1)
/// cross-checked against I(U;Y2) - I(S1,S2;U) and I(V;Y1) - I(S1,S2;V).
/// Throws WrongRegime outside VeryStrongIC.
ConditionReport vs_ic_check(const IcParams& p, double log_base = kBits);

VsZicCoefficients vs_zic_coefficients(const IcParams& p, const StateDecomp& decomp);

/// Channel scene (VS_ZIC) with auxiliaries "U" and "V" added.
GaussianScene vs_zic_scene(const IcParams& p, const VsZicCoefficients& k);

/// Closed-form left side of the Z-channel condition
///   (P1 + a^2 P2 + d^2 Q2 + Q1' + 1) / ((d - a beta)^2 Q2 P2 + (P2 + beta^2 Q2)(P1 + Q1' + 1))
/// which must be >= (P2+1)/P2. It is the expansion of I(V;Y2) <= I(V;Y1).
double vs_zic_condition_ratio(const IcParams& p);

ConditionReport vs_zic_evaluate(const IcParams& p, double log_base = kBits);

/// Throws WrongRegime outside VeryStrongZIC.
ConditionReport vs_zic_check(const IcParams& p, double log_base = kBits);

/// R1 <= min{I(U;V,Y1), I(U;Y2)} - I(S1,S2;U)
/// R2 <= min{I(V;U,Y2), I(V;Y1)} - I(S1,S2;V)
/// for arbitrary linear auxiliaries already present in `scene`.
RegionBounds prop1_region(const GaussianScene& scene, const std::string& u, const std::string& v,
                          double log_base = kBits);

/// R1 <= I(U;V,Y1) - I(S1,S2;U)
/// R2 <= min{I(V;Y2), I(V;Y1)} - I(S2;V)
/// V may only involve X2 and S2; anything else is BadFactorization.
RegionBounds prop2_region(const GaussianScene& scene, const std::string& u, const std::string& v,
                          double log_base = kBits);

} // namespace sdic
