#include "sdic/channel.hpp"

#include "sdic/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sdic {

namespace {

bool geq_tied(double lhs, double rhs) {
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return lhs - rhs >= -kTieRel * scale;
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

void IcParams::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(P1) || !positive(P2)) {
        throw DomainError(ErrorCode::InvalidParams, "powers must be positive (P1=" + num(P1) + ", P2=" + num(P2) + ")");
    }
    if (!positive(Q1) || !positive(Q2)) {
        throw DomainError(ErrorCode::InvalidParams,
                          "state variances must be positive (Q1=" + num(Q1) + ", Q2=" + num(Q2) + ")");
    }
    if (!std::isfinite(rho) || std::abs(rho) > 1.0) {
        throw DomainError(ErrorCode::InvalidParams, "state correlation must lie in [-1, 1] (rho=" + num(rho) + ")");
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError(ErrorCode::InvalidParams, "channel gains must be finite");
    }
}

StateDecomp decompose(const IcParams& p, DecompDirection direction) {
    const double resid = 1.0 - p.rho * p.rho;
    if (direction == DecompDirection::S1_on_S2) {
        return {direction, p.rho * std::sqrt(p.Q1 / p.Q2), std::max(0.0, p.Q1 * resid)};
    }
    return {direction, p.rho * std::sqrt(p.Q2 / p.Q1), std::max(0.0, p.Q2 * resid)};
}

std::string_view to_string(RegimeKind kind) {
    switch (kind) {
    case RegimeKind::VeryStrongIC: return "VeryStrongIC";
    case RegimeKind::StrongNotVeryStrongIC: return "StrongNotVeryStrongIC";
    case RegimeKind::WeakIC: return "WeakIC";
    case RegimeKind::VeryStrongZIC: return "VeryStrongZIC";
    case RegimeKind::StrongNotVeryStrongZIC: return "StrongNotVeryStrongZIC";
    case RegimeKind::WeakZIC: return "WeakZIC";
    case RegimeKind::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

Channel channel_of(const IcParams& p) { return p.b == 0.0 ? Channel::ZIC : Channel::IC; }

Regime classify(const IcParams& p, Channel channel) {
    p.validate();
    Regime r;
    const double a2 = p.a * p.a;
    if (channel == Channel::ZIC) {
        if (p.b != 0.0) {
            throw DomainError(ErrorCode::InvalidZIC, "Z channel requires b = 0 (b=" + num(p.b) + ")");
        }
        r.margins["very_strong"] = a2 - (1.0 + p.P1);
        r.margins["strong_lower"] = a2 - 1.0;
        r.margins["weak"] = 1.0 - a2;
        if (a2 > 1.0 + p.P1) {
            r.kind = RegimeKind::VeryStrongZIC;
        } else if (geq_tied(1.0, a2)) {
            // a^2 = 1 satisfies both the weak and strong definitions; weak wins.
            r.kind = RegimeKind::WeakZIC;
        } else if (a2 < 1.0 + p.P1) {
            r.kind = RegimeKind::StrongNotVeryStrongZIC;
        }
        return r;
    }

    const double prod = (1.0 + p.P1) * (1.0 + p.P2);
    const double sum1 = p.P1 + a2 * p.P2 + 1.0;
    const double sum2 = p.b * p.b * p.P1 + p.P2 + 1.0;
    const double weak_lhs = std::abs(p.a * (1.0 + p.b * p.b * p.P1)) + std::abs(p.b * (1.0 + a2 * p.P2));
    r.margins["very_strong_1"] = sum1 - prod;
    r.margins["very_strong_2"] = sum2 - prod;
    r.margins["strong_a"] = p.a - 1.0;
    r.margins["strong_b"] = p.b - 1.0;
    r.margins["not_very_strong"] = prod - std::min(sum1, sum2);
    r.margins["ordering"] = sum2 - sum1;
    r.margins["weak"] = 1.0 - weak_lhs;

    if (sum1 > prod && sum2 > prod) {
        r.kind = RegimeKind::VeryStrongIC;
    } else if (geq_tied(p.a, 1.0) && geq_tied(p.b, 1.0) && geq_tied(prod, std::min(sum1, sum2))) {
        r.kind = RegimeKind::StrongNotVeryStrongIC;
        r.needs_index_swap = !geq_tied(sum2, sum1);
    } else if (geq_tied(1.0, weak_lhs)) {
        r.kind = RegimeKind::WeakIC;
    }
    return r;
}

GaussianScene build_scene(const IcParams& p, SceneVariant variant, std::optional<double> p1_doubleprime) {
    p.validate();
    using namespace names;
    GaussianScene s;
    const bool zic = variant == SceneVariant::VS_ZIC || variant == SceneVariant::Strong_ZIC;
    const double b = zic ? 0.0 : p.b;

    if (variant == SceneVariant::VS_IC || variant == SceneVariant::VS_ZIC) {
        const StateDecomp dec = decompose(p, DecompDirection::S1_on_S2);
        s.add_basis(X1, p.P1)
            .add_basis(X2, p.P2)
            .add_basis(S1p, dec.residual_var)
            .add_basis(S2, p.Q2)
            .add_basis(N1, 1.0)
            .add_basis(N2, 1.0);
        s.add_var(S1, {{S2, dec.slope}, {S1p, 1.0}});
        s.add_var(Y1, {{X1, 1.0}, {X2, p.a}, {S1, 1.0}, {N1, 1.0}});
        s.add_var(Y2, {{X1, b}, {X2, 1.0}, {S2, 1.0}, {N2, 1.0}});
        return s;
    }

    if (!p1_doubleprime || !(*p1_doubleprime >= 0.0) || *p1_doubleprime > p.P1) {
        throw DomainError(ErrorCode::BadSplit,
                          p1_doubleprime ? "power split P1''=" + num(*p1_doubleprime) + " outside [0, " + num(p.P1) + "]"
                                         : std::string("strong-regime scene needs a power split P1''"));
    }
    const double p1dp = *p1_doubleprime;
    const StateDecomp dec = decompose(p, DecompDirection::S2_on_S1);
    s.add_basis(X1p, p.P1 - p1dp)
        .add_basis(X1pp, p1dp)
        .add_basis(X2, p.P2)
        .add_basis(S1, p.Q1)
        .add_basis(S2p, dec.residual_var)
        .add_basis(N1, 1.0)
        .add_basis(N2, 1.0);
    s.add_var(X1, {{X1p, 1.0}, {X1pp, 1.0}});
    s.add_var(S2, {{S1, dec.slope}, {S2p, 1.0}});
    s.add_var(Y1, {{X1, 1.0}, {X2, p.a}, {S1, 1.0}, {N1, 1.0}});
    s.add_var(Y2, {{X1, b}, {X2, 1.0}, {S2, 1.0}, {N2, 1.0}});
    return s;
}

} // namespace sdic
