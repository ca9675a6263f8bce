#include "draws.hpp"

#include "sdic/error.hpp"
#include "sdic/param_spec.hpp"
#include "sdic/very_strong.hpp"

#include <doctest.h>

#include <cmath>

using namespace sdic;
using namespace sdic::names;
using sdic::testing::Draws;

namespace {

IcParams from_d(double a, double b, double p1, double p2, double q1p, double q2, double d) {
    ParamSpec s;
    s.a = a;
    s.b = b;
    s.p1 = p1;
    s.p2 = p2;
    s.q2 = q2;
    s.d = d;
    s.q1p = q1p;
    return s.resolve();
}

double hl(double x) { return 0.5 * std::log2(x); }

} // namespace

TEST_CASE("IC weights reduce to single-user dirty paper without interference") {
    for (double d : {0.0, 0.3, 0.9}) {
        const IcParams p = from_d(0, 0, 1, 1, 0.5, 1, d);
        const auto k = vs_ic_coefficients(p, decompose(p, DecompDirection::S1_on_S2));
        CHECK(k.alpha1 == doctest::Approx(0.5));
        CHECK(k.alpha2 == doctest::Approx(0.5 * d));
        CHECK(k.beta1 == 0.0);
        CHECK(k.beta2 == doctest::Approx(0.5));
    }
    const IcParams z = from_d(1.7, 0, 2, 3, 0.5, 1, 0.4);
    const auto kz = vs_ic_coefficients(z, decompose(z, DecompDirection::S1_on_S2));
    CHECK(kz.beta1 == 0.0);
    CHECK(kz.beta2 == doctest::Approx(3.0 / 4.0));
}

TEST_CASE("IC weights satisfy the dirty-paper ratio conditions") {
    auto check = [](const IcParams& p) {
        const StateDecomp dec = decompose(p, DecompDirection::S1_on_S2);
        const auto k = vs_ic_coefficients(p, dec);
        const double d = dec.slope;
        // alpha1/(1-a beta1) = alpha2/(d - a beta2) = P1/(P1+1), cross-multiplied
        CHECK(std::abs(k.alpha1 * (d - p.a * k.beta2) - k.alpha2 * (1.0 - p.a * k.beta1)) <= 1e-9);
        CHECK(std::abs(k.alpha1 * (p.P1 + 1.0) - p.P1 * (1.0 - p.a * k.beta1)) <= 1e-9);
        // beta1/(-b alpha1) = beta2/(1 - b alpha2) = P2/(P2+1)
        CHECK(std::abs(k.beta1 * (1.0 - p.b * k.alpha2) + p.b * k.alpha1 * k.beta2) <= 1e-9);
        CHECK(std::abs(k.beta1 * (p.P2 + 1.0) + p.b * k.alpha1 * p.P2) <= 1e-9);
    };
    check(from_d(1.6, 1.2, 1, 1, 0.675, 0.9, 0.5));
    Draws r(31);
    for (int t = 0; t < 1000; ++t) check(r.vs_ic());
}

TEST_CASE("a positive beta1 breaks the ratio condition") {
    const IcParams p = from_d(1.6, 1.7, 1, 1, 0.675, 0.9, 0.5);
    const auto k = vs_ic_coefficients(p, decompose(p, DecompDirection::S1_on_S2));
    const double flipped = -k.beta1;
    CHECK(std::abs(flipped * (p.P2 + 1.0) + p.b * k.alpha1 * p.P2) > 0.1);
}

TEST_CASE("IC identities on the dirty-paper scheme") {
    const IcParams p = from_d(1.6, 1.2, 1, 1, 0.675, 0.9, 0.5);
    const auto r = vs_ic_evaluate(p);
    CHECK(std::abs(r.values.at("identity_r1") - hl(2.0)) <= 1e-9);
    CHECK(std::abs(r.values.at("identity_r2") - hl(2.0)) <= 1e-9);
    // entropy form and MI form of the two conditions
    CHECK(std::abs(r.conditions[0].rhs - r.cross_checks[0].rhs) <= 1e-9);
    CHECK(std::abs(r.conditions[1].rhs - r.cross_checks[1].rhs) <= 1e-9);
}

TEST_CASE("IC check requires the very strong regime") {
    const IcParams p = from_d(1.6, 1.2, 1, 1, 0.675, 0.9, 0.5);
    try {
        vs_ic_check(p);
        FAIL("expected WrongRegime");
    } catch (const DomainError& e) {
        CHECK(e.code() == ErrorCode::WrongRegime);
    }
    // b with a b P1 P2 = (P1+1)(P2+1)
    IcParams s = p;
    s.b = 4.0 / 1.6;
    try {
        vs_ic_evaluate(s);
        FAIL("expected SingularDenominator");
    } catch (const DomainError& e) {
        CHECK(e.code() == ErrorCode::SingularDenominator);
    }
}

TEST_CASE("IC check has an achieving b interval at d = 0.99") {
    auto verdict = [](double b) {
        ParamSpec s;
        s.a = 1.6;
        s.b = b;
        s.p1 = 1;
        s.p2 = 1;
        s.q1 = 0.9;
        s.q2 = 0.9;
        s.d = 0.99;
        return vs_ic_check(s.resolve()).achieves_capacity;
    };
    // interval located by a 1-D sweep over b in [1.415, 2.5)
    CHECK(verdict(1.6));
    CHECK(verdict(1.7));
    CHECK_FALSE(verdict(1.45));
    CHECK_FALSE(verdict(1.9));
}

TEST_CASE("Z-channel weights") {
    const IcParams p = from_d(1.5, 0, 2, 2, 0.75, 1, 0.5);
    const auto k = vs_zic_coefficients(p, decompose(p, DecompDirection::S1_on_S2));
    CHECK(k.alpha1 == doctest::Approx(-1.0 / 3.0));
    CHECK(k.alpha2 == doctest::Approx(2.0 / 3.0));
    CHECK(k.beta == doctest::Approx(2.0 / 3.0));

    const IcParams z = from_d(0, 0, 2, 1, 0.4, 1, 0.7);
    const auto kz = vs_zic_coefficients(z, decompose(z, DecompDirection::S1_on_S2));
    CHECK(kz.alpha1 == doctest::Approx(0.7 * 2.0 / 3.0));

    Draws r(32);
    for (int t = 0; t < 1000; ++t) {
        const IcParams q = r.vs_zic();
        const StateDecomp dec = decompose(q, DecompDirection::S1_on_S2);
        const auto c = vs_zic_coefficients(q, dec);
        const double w = q.P1 / (q.P1 + 1.0);
        CHECK(std::abs(c.alpha1 - w * (dec.slope - q.a * c.beta)) <= 1e-9);
        CHECK(std::abs(c.alpha2 - w) <= 1e-9);
        CHECK(std::abs(c.beta * (q.P2 + 1.0) - q.P2) <= 1e-9);
    }
}

TEST_CASE("Z-channel closed form equals the MI gate") {
    Draws r(33);
    for (int t = 0; t < 1000; ++t) {
        const IcParams p = r.vs_zic();
        const auto rep = vs_zic_evaluate(p);
        const double closed = rep.conditions[0].margin;
        const double gate = rep.cross_checks[0].margin;
        if (std::abs(closed) > 1e-9 && std::abs(gate) > 1e-9) CHECK((closed > 0) == (gate > 0));
        CHECK(std::abs(rep.values.at("identity_r1") - hl(1.0 + p.P1)) <= 1e-9);
        CHECK(std::abs(rep.values.at("identity_r2") - hl(1.0 + p.P2)) <= 1e-9);
    }
}

TEST_CASE("Z-channel condition with (d + a beta) disagrees with the MI gate") {
    // at d = 0.5, a = 3 the two sign conventions give different verdicts
    const IcParams p = from_d(3, 0, 2, 2, 0.75, 1, 0.5);
    const double beta = 2.0 / 3.0;
    const double num = p.P1 + 9.0 * p.P2 + 0.25 * p.Q2 + 0.75 + 1.0;
    const double plus_form = num / ((0.5 + 3.0 * beta) * (0.5 + 3.0 * beta) * p.Q2 * p.P2 +
                                  (p.P2 + beta * beta * p.Q2) * (p.P1 + 0.75 + 1.0));
    const auto rep = vs_zic_check(p);
    CHECK(rep.cross_checks[0].holds);
    CHECK(rep.conditions[0].holds);
    CHECK(plus_form < 1.5);
}

TEST_CASE("Z-channel large-a behaviour depends on Q2 against (1+P2)/P2") {
    auto at = [](double q2) {
        ParamSpec s;
        s.a = 1e4;
        s.p1 = 2;
        s.p2 = 2;
        s.q2 = q2;
        s.d = 0.5;
        s.q1p = 1.0;
        return vs_zic_check(s.resolve());
    };
    CHECK(at(1.4).achieves_capacity);
    CHECK_FALSE(at(1.6).achieves_capacity);
    // asymptote of the closed form is 1/(beta^2 Q2)
    ParamSpec s;
    s.a = 1e6;
    s.p1 = 2;
    s.p2 = 2;
    s.q2 = 1.6;
    s.d = 0.5;
    s.q1p = 1.0;
    CHECK(vs_zic_condition_ratio(s.resolve()) == doctest::Approx(1.0 / (4.0 / 9.0 * 1.6)).epsilon(1e-5));
}

TEST_CASE("region evaluators") {
    const IcParams p = from_d(2.2, 2.3, 1, 1, 0.4, 0.8, 0.6);
    const auto k = vs_ic_coefficients(p, decompose(p, DecompDirection::S1_on_S2));
    const GaussianScene s = vs_ic_scene(p, k);
    const RegionBounds b = prop1_region(s, "U", "V");
    const double u_y2 = mutual_info(s, {"U"}, {Y2}) - mutual_info(s, {S1, S2}, {"U"});
    CHECK(b.R1 == doctest::Approx(std::max(0.0, std::min(hl(2.0), u_y2))).epsilon(1e-9));

    // plain inputs against independent states: interference-channel MIs with state as noise
    GaussianScene plain = build_scene(p, SceneVariant::VS_IC);
    plain.add_var("U", {{X1, 1.0}});
    plain.add_var("V", {{X2, 1.0}});
    const RegionBounds pb = prop1_region(plain, "U", "V");
    CHECK(pb.R1 == doctest::Approx(std::min(mutual_info(plain, {X1}, {X2, Y1}), mutual_info(plain, {X1}, {Y2}))));

    const IcParams z = from_d(3, 0, 2, 2, 0.75, 1, 0.5);
    const GaussianScene zs = vs_zic_scene(z, vs_zic_coefficients(z, decompose(z, DecompDirection::S1_on_S2)));
    CHECK(prop2_region(zs, "U", "V").R2 == doctest::Approx(hl(3.0)).epsilon(1e-9));
    GaussianScene bad = zs;
    bad.add_var("W", {{X2, 1.0}, {S1p, 0.1}});
    CHECK_THROWS_AS(prop2_region(bad, "U", "W"), DomainError);
}

TEST_CASE("random auxiliaries never beat the dirty-paper design when its conditions hold") {
    Draws r(34);
    int checked = 0;
    for (int t = 0; t < 400 && checked < 40; ++t) {
        const IcParams p = r.vs_ic();
        const auto rep = vs_ic_evaluate(p);
        if (!rep.achieves_capacity || classify(p, Channel::IC).kind != RegimeKind::VeryStrongIC) continue;
        ++checked;
        for (int g = 0; g < 25; ++g) {
            GaussianScene s = build_scene(p, SceneVariant::VS_IC);
            s.add_var("U", {{X1, 1.0}, {S1p, r.uni(-2, 2)}, {S2, r.uni(-2, 2)}});
            s.add_var("V", {{X2, 1.0}, {S1p, r.uni(-2, 2)}, {S2, r.uni(-2, 2)}});
            const RegionBounds b = prop1_region(s, "U", "V");
            CHECK(b.R1 <= hl(1.0 + p.P1) + 1e-9);
            CHECK(b.R2 <= hl(1.0 + p.P2) + 1e-9);
        }
    }
    CHECK(checked > 0);
}
