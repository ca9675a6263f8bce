#include "sdic/strong.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace sdic {

namespace {

using namespace names;

double half_log(double x, double base) { return 0.5 * std::log(x) / std::log(base); }

void require_split(const IcParams& p, double p1dp) {
    if (!(p1dp >= 0.0) || p1dp > p.P1) {
        std::ostringstream os;
        os.precision(12);
        os << "power split P1''=" << p1dp << " outside [0, " << p.P1 << "]";
        throw DomainError(ErrorCode::BadSplit, os.str());
    }
}

Regime require_regime(const IcParams& p, Channel ch, RegimeKind want) {
    Regime r = classify(p, ch);
    if (r.kind != want) {
        throw DomainError(ErrorCode::WrongRegime, "parameters are in regime " + std::string(to_string(r.kind)) +
                                                      ", expected " + std::string(to_string(want)));
    }
    return r;
}

void require_only(const GaussianScene& s, const std::string& var, const std::set<std::string>& allowed) {
    const Eigen::VectorXd& c = s.coeffs(var);
    for (std::size_t i = 0; i < s.basis_size(); ++i) {
        const auto& name = s.basis()[i].name;
        if (allowed.count(name)) continue;
        if (c(static_cast<Eigen::Index>(i)) != 0.0) {
            throw DomainError(ErrorCode::BadFactorization,
                              "auxiliary '" + var + "' must not load on '" + name + "'");
        }
    }
}

struct Rates {
    double r11, r12, r2;
};

Rates closed_form_rates(const IcParams& p, double p1dp, double base) {
    const double a2p2 = p.a * p.a * p.P2;
    const double p1p = p.P1 - p1dp;
    return {half_log(1.0 + p1p / (a2p2 + p1dp + 1.0), base), half_log(1.0 + p1dp, base),
            half_log(1.0 + a2p2 / (p1dp + 1.0), base)};
}

// Receiver-1 successive-cancellation rates measured on the scene.
void add_y1_identities(const GaussianScene& s, ConditionReport& rep, double base) {
    rep.values["identity_u1"] = mutual_info(s, {"U1"}, {Y1}, base) - mutual_info(s, {"U1"}, {S1}, base);
    rep.values["identity_u2"] =
        cond_mutual_info(s, {"U2"}, {"V", Y1}, {"U1"}, base) - cond_mutual_info(s, {"U2"}, {S1}, {"U1"}, base);
    rep.values["identity_v"] = mutual_info(s, {"V"}, {"U1", Y1}, base) - mutual_info(s, {"V"}, {S1}, base);
}

} // namespace

GateViolatedError::GateViolatedError(double l, double r)
    : DomainError(ErrorCode::GateViolated,
                  [&] {
                      std::ostringstream os;
                      os.precision(12);
                      os << "I(V;U1,Y1)=" << l << " exceeds I(V;Y2)=" << r << " (slack " << r - l << ")";
                      return os.str();
                  }()),
      lhs(l), rhs(r) {}

StrongScheme strong_scheme(const IcParams& p, double p1dp) {
    p.validate();
    require_split(p, p1dp);
    const Channel ch = channel_of(p);
    const RegimeKind kind = classify(p, ch).kind;
    if (kind != RegimeKind::StrongNotVeryStrongIC && kind != RegimeKind::StrongNotVeryStrongZIC) {
        throw DomainError(ErrorCode::WrongRegime,
                          "rate splitting needs a strong-not-very-strong regime, got " + std::string(to_string(kind)));
    }
    const double a2p2 = p.a * p.a * p.P2;
    const double den = p.P1 + a2p2 + 1.0;
    StrongScheme k;
    k.P1_doubleprime = p1dp;
    k.P1_prime = p.P1 - p1dp;
    k.alpha1 = k.P1_prime / den;
    k.alpha2 = p1dp / den;
    k.beta = a2p2 / den;
    return k;
}

SumRatePoint strong_ic_rate_point(const IcParams& p, double p1dp, double base) {
    strong_scheme(p, p1dp);
    const Rates r = closed_form_rates(p, p1dp, base);
    return {r.r11 + r.r12, r.r2, p1dp};
}

GaussianScene strong_scene(const IcParams& p, const StrongScheme& k, Channel channel) {
    GaussianScene s =
        build_scene(p, channel == Channel::ZIC ? SceneVariant::Strong_ZIC : SceneVariant::Strong_IC, k.P1_doubleprime);
    s.add_var("U1", {{X1p, 1.0}, {S1, k.alpha1}});
    s.add_var("U2", {{X1pp, 1.0}, {S1, k.alpha2}});
    s.add_var("V", {{X2, p.a}, {S1, k.beta}});
    return s;
}

ConditionReport strong_ic_check(const IcParams& p, double p1dp, double base) {
    p.validate();
    require_split(p, p1dp);
    const Regime reg = require_regime(p, Channel::IC, RegimeKind::StrongNotVeryStrongIC);
    if (reg.needs_index_swap) {
        throw DomainError(ErrorCode::OrderingViolated,
                          "P1 + a^2 P2 exceeds b^2 P1 + P2; swap the transmitter labels and rerun");
    }
    const StrongScheme k = strong_scheme(p, p1dp);
    const GaussianScene s = strong_scene(p, k, Channel::IC);
    const Rates r = closed_form_rates(p, p1dp, base);

    const double t1 = mutual_info(s, {"U1"}, {Y2}, base) - mutual_info(s, {"U1"}, {S1}, base);
    const double t2 =
        cond_mutual_info(s, {"U2"}, {"V", Y2}, {"U1"}, base) - cond_mutual_info(s, {"U2"}, {S1}, {"U1"}, base);
    const double t3 = mutual_info(s, {"V"}, {"U1", Y2}, base) - mutual_info(s, {"V"}, {S1}, base);

    ConditionReport rep;
    rep.conditions.push_back(make_condition("layer1", r.r11, t1));
    rep.conditions.push_back(make_condition("layer2", r.r12, t2));
    rep.conditions.push_back(make_condition("layer3", r.r2, t3));
    add_y1_identities(s, rep, base);
    rep.values["alpha1"] = k.alpha1;
    rep.values["alpha2"] = k.alpha2;
    rep.values["beta"] = k.beta;
    rep.values["R1"] = r.r11 + r.r12;
    rep.values["R2"] = r.r2;
    rep.achieves_capacity = rep.all_hold();
    if (rep.achieves_capacity) rep.capacity_rect = std::pair{r.r11 + r.r12, r.r2};
    return rep;
}

double strong_zic_condition_ratio(const IcParams& p) {
    const StateDecomp dec = decompose(p, DecompDirection::S2_on_S1);
    const double c = dec.slope, q2p = dec.residual_var;
    const double a2p2 = p.a * p.a * p.P2;
    const double beta = a2p2 / (p.P1 + a2p2 + 1.0);
    const double g = p.a * c - beta;
    const double num = a2p2 * (p.P2 + c * c * p.Q1 + q2p + 1.0);
    const double den = g * g * p.Q1 * p.P2 + (a2p2 + beta * beta * p.Q1) * (q2p + 1.0);
    return num / den;
}

double strong_zic_condition_rhs(const IcParams& p, double p1dp) {
    return 1.0 + p.a * p.a * p.P2 / (p1dp + 1.0);
}

ConditionReport strong_zic_check(const IcParams& p, double p1dp, double base) {
    p.validate();
    require_split(p, p1dp);
    require_regime(p, Channel::ZIC, RegimeKind::StrongNotVeryStrongZIC);
    const StrongScheme k = strong_scheme(p, p1dp);
    const GaussianScene s = strong_scene(p, k, Channel::ZIC);
    const Rates r = closed_form_rates(p, p1dp, base);

    ConditionReport rep;
    rep.conditions.push_back(
        make_condition("eq_closed_form", strong_zic_condition_rhs(p, p1dp), strong_zic_condition_ratio(p)));
    const double iv_u1y1 = mutual_info(s, {"V"}, {"U1", Y1}, base);
    const double iv_y2 = mutual_info(s, {"V"}, {Y2}, base);
    rep.cross_checks.push_back(make_condition("mi_gate", iv_u1y1, iv_y2));
    add_y1_identities(s, rep, base);
    rep.values["alpha1"] = k.alpha1;
    rep.values["alpha2"] = k.alpha2;
    rep.values["beta"] = k.beta;
    rep.values["I_V_U1Y1"] = iv_u1y1;
    rep.values["I_V_Y2"] = iv_y2;
    rep.values["R1"] = r.r11 + r.r12;
    rep.values["R2"] = r.r2;
    rep.achieves_capacity = rep.all_hold();
    if (rep.achieves_capacity) rep.capacity_rect = std::pair{r.r11 + r.r12, r.r2};
    return rep;
}

Segment strong_zic_segment(const IcParams& p, int grid_steps, double base) {
    p.validate();
    require_regime(p, Channel::ZIC, RegimeKind::StrongNotVeryStrongZIC);
    if (grid_steps < 2) {
        throw DomainError(ErrorCode::InvalidParams, "split grid needs at least 2 points");
    }
    Segment seg;
    seg.grid_steps = grid_steps;
    seg.grid_step = p.P1 / (grid_steps - 1);
    if (p.a * p.a * p.P2 < 1e-12) {
        seg.degenerate = true;
        return seg;
    }
    const double lhs = strong_zic_condition_ratio(p);
    for (int i = 0; i < grid_steps; ++i) {
        // last point pinned to P1 exactly (point B)
        const double x = i + 1 == grid_steps ? p.P1 : p.P1 * i / (grid_steps - 1);
        const bool pass = lhs - strong_zic_condition_rhs(p, x) >= -kVerdictTol;
        if (!pass && seg.P1dp_min) {
            // cannot happen for a split-free lhs and a decreasing rhs
            throw DomainError(ErrorCode::InternalConsistency, "certified split set is not an upper interval");
        }
        if (!pass) continue;
        if (!seg.P1dp_min) seg.P1dp_min = x;
        const Rates r = closed_form_rates(p, x, base);
        seg.rates.push_back({r.r11 + r.r12, r.r2, x});
    }
    return seg;
}

RegionBounds prop3_region(const GaussianScene& s, const std::string& u1, const std::string& u2, const std::string& v,
                          double base) {
    const std::set<std::string> tx1{X1p, X1pp, S1};
    require_only(s, u1, tx1);
    require_only(s, u2, tx1);
    require_only(s, v, {X2, S1});
    const double r1 = std::min(mutual_info(s, {u1}, {Y1}, base), mutual_info(s, {u1}, {Y2}, base)) +
                      std::min(cond_mutual_info(s, {u2}, {v, Y1}, {u1}, base),
                               cond_mutual_info(s, {u2}, {v, Y2}, {u1}, base)) -
                      mutual_info(s, {u1, u2}, {S1}, base);
    const double r2 = std::min(mutual_info(s, {v}, {u1, Y1}, base), mutual_info(s, {v}, {u1, Y2}, base)) -
                      mutual_info(s, {v}, {S1}, base);
    return clamp_bounds(r1, r2);
}

RegionBounds prop4_region(const GaussianScene& s, const std::string& u1, const std::string& u2, const std::string& v,
                          double base) {
    const double gate_lhs = mutual_info(s, {v}, {u1, Y1}, base);
    const double gate_rhs = mutual_info(s, {v}, {Y2}, base);
    if (gate_rhs - gate_lhs < -kVerdictTol) throw GateViolatedError(gate_lhs, gate_rhs);
    const double r1 = mutual_info(s, {u1}, {Y1}, base) + cond_mutual_info(s, {u2}, {v, Y1}, {u1}, base) -
                      mutual_info(s, {S1}, {u1, u2}, base);
    const double r2 = gate_lhs - mutual_info(s, {S1}, {v}, base);
    return clamp_bounds(r1, r2);
}

} // namespace sdic
