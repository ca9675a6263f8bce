#pragma once

// Weak interference: independent dirty-paper coding at each transmitter with
// interference treated as noise. The sum capacity does not depend on rho.

#include "sdic/channel.hpp"
#include "sdic/gaussian.hpp"

namespace sdic {

/// 1/2 log(1 + P1/(a^2 P2 + 1)) + 1/2 log(1 + P2/(b^2 P1 + 1)); WrongRegime unless WeakIC.
double weak_ic_sum_capacity(const IcParams& p, double log_base = kBits);

/// 1/2 log(1 + P1/(a^2 P2 + 1)) + 1/2 log(1 + P2); WrongRegime unless WeakZIC.
double weak_zic_sum_capacity(const IcParams& p, double log_base = kBits);

} // namespace sdic
