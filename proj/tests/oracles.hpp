#pragma once

// Reference computations that do not go through the closed-form code paths.

#include "sdic/channel.hpp"
#include "sdic/gaussian.hpp"

namespace sdic::testing {

/// Each transmitter dirty-paper codes against its own receiver's state and
/// treats the other user as noise; rates are I(U;Y) - I(U;S) measured on the
/// channel scene.
inline double tin_dpc_sum(const IcParams& p, Channel ch, double base = kBits) {
    using namespace names;
    const GaussianScene chan = build_scene(p, ch == Channel::ZIC ? SceneVariant::VS_ZIC : SceneVariant::VS_IC);
    const double b = ch == Channel::ZIC ? 0.0 : p.b;
    GaussianScene s = chan;
    const double n1 = p.a * p.a * p.P2 + 1.0;
    const double n2 = b * b * p.P1 + 1.0;
    s.add_var("U1", {{X1, 1.0}, {S1, p.P1 / (p.P1 + n1)}});
    s.add_var("U2", {{X2, 1.0}, {S2, p.P2 / (p.P2 + n2)}});
    return mutual_info(s, {"U1"}, {Y1}, base) - mutual_info(s, {"U1"}, {S1}, base) +
           mutual_info(s, {"U2"}, {Y2}, base) - mutual_info(s, {"U2"}, {S2}, base);
}

} // namespace sdic::testing
