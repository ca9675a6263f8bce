#include "sdic/weak.hpp"

#include "sdic/error.hpp"

#include <cmath>

namespace sdic {

namespace {

double tin_rate(double p_own, double interference, double base) {
    return 0.5 * std::log(1.0 + p_own / (interference + 1.0)) / std::log(base);
}

void require_regime(const IcParams& p, Channel ch, RegimeKind want) {
    const RegimeKind got = classify(p, ch).kind;
    if (got != want) {
        throw DomainError(ErrorCode::WrongRegime, "parameters are in regime " + std::string(to_string(got)) +
                                                      ", expected " + std::string(to_string(want)));
    }
}

} // namespace

double weak_ic_sum_capacity(const IcParams& p, double base) {
    require_regime(p, Channel::IC, RegimeKind::WeakIC);
    return tin_rate(p.P1, p.a * p.a * p.P2, base) + tin_rate(p.P2, p.b * p.b * p.P1, base);
}

double weak_zic_sum_capacity(const IcParams& p, double base) {
    require_regime(p, Channel::ZIC, RegimeKind::WeakZIC);
    return tin_rate(p.P1, p.a * p.a * p.P2, base) + tin_rate(p.P2, 0.0, base);
}

} // namespace sdic
