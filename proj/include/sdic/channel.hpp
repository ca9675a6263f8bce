#pragma once

// Two-user Gaussian interference channel with correlated additive states:
//   Y1 = X1 + a X2 + S1 + N1
//   Y2 = b X1 + X2 + S2 + N2
// with unit-variance noises, powers P1, P2, state variances Q1, Q2 and state
// correlation rho. The Z channel is the special case b = 0.

#include "sdic/gaussian.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace sdic {

struct IcParams {
    double a = 0.0;
    double b = 0.0;
    double P1 = 1.0;
    double P2 = 1.0;
    double Q1 = 1.0;
    double Q2 = 1.0;
    double rho = 0.0;

    /// Throws InvalidParams unless P1, P2, Q1, Q2 > 0 and |rho| <= 1.
    void validate() const;
};

enum class Channel { IC, ZIC };

enum class DecompDirection { S1_on_S2, S2_on_S1 };

/// S1 = slope * S2 + S1' (S1_on_S2) or S2 = slope * S1 + S2' (S2_on_S1),
/// with the residual independent of the regressor.
struct StateDecomp {
    DecompDirection direction = DecompDirection::S1_on_S2;
    double slope = 0.0;
    double residual_var = 0.0;
};

StateDecomp decompose(const IcParams& p, DecompDirection direction);

enum class RegimeKind {
    VeryStrongIC,
    StrongNotVeryStrongIC,
    WeakIC,
    VeryStrongZIC,
    StrongNotVeryStrongZIC,
    WeakZIC,
    Unclassified,
};

std::string_view to_string(RegimeKind kind);

/// Regime plus the signed slack (lhs - rhs, oriented so that >= 0 means the
/// inequality leans toward holding) of every defining inequality.
struct Regime {
    RegimeKind kind = RegimeKind::Unclassified;
    std::map<std::string, double> margins;
    /// Strong IC results assume P1 + a^2 P2 + 1 <= b^2 P1 + P2 + 1; set when
    /// that ordering fails and the transmitter labels would need swapping.
    bool needs_index_swap = false;
};

Regime classify(const IcParams& p, Channel channel);

/// Which regime family a parameter set belongs to when the caller does not
/// say: b == 0 is treated as the Z channel.
Channel channel_of(const IcParams& p);

enum class SceneVariant { VS_IC, VS_ZIC, Strong_IC, Strong_ZIC };

// Variable names used by the scene builders.
namespace names {
inline const std::string X1 = "X1";
inline const std::string X1p = "X1p";   // X1' (rate-split layer 1)
inline const std::string X1pp = "X1pp"; // X1'' (rate-split layer 2)
inline const std::string X2 = "X2";
inline const std::string S1 = "S1";
inline const std::string S2 = "S2";
inline const std::string S1p = "S1p";   // S1' residual of S1 given S2
inline const std::string S2p = "S2p";   // S2' residual of S2 given S1
inline const std::string N1 = "N1";
inline const std::string N2 = "N2";
inline const std::string Y1 = "Y1";
inline const std::string Y2 = "Y2";
} // namespace names

/// Scene with the channel inputs, states, noises and outputs.
///
/// VS variants use S1 = d S2 + S1' (basis X1, X2, S1p, S2, N1, N2); Strong
/// variants use S2 = c S1 + S2' and split X1 = X1' + X1'' with powers
/// P1 - P1'' and P1'' (basis X1p, X1pp, X2, S1, S2p, N1, N2). Z variants force
/// b = 0 in Y2. Throws BadSplit when a Strong variant lacks a split in [0, P1].
GaussianScene build_scene(const IcParams& p, SceneVariant variant,
                          std::optional<double> p1_doubleprime = std::nullopt);

/// Tolerance band for non-strict regime comparisons, relative to the scale of
/// the compared quantities.
inline constexpr double kTieRel = 1e-12;

} // namespace sdic
