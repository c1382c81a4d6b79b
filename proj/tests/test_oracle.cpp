#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "loxo/oracle.hpp"

using namespace loxo;

namespace {

const double kPi = std::acos(-1.0);

HelicoidalSurface type1_right() {
    return HelicoidalSurface(
        ProfileCurve(SurfaceKind::TypeI, 4, 1, {{1, "u"}, {4, "1"}}), 1.0);
}

LoxodromeProblem problem(HelicoidalSurface s, SurfaceCausal sc, double theta0,
                         int branch, double u0, double v0 = 0.0) {
    const AngleSpec spec = make_angle_spec(sc, s.epsilon(), theta0);
    return LoxodromeProblem{std::move(s), spec, branch, u0, v0};
}

} // namespace

TEST_CASE("a meridian measures angle zero everywhere") {
    const HelicoidalSurface s(
        ProfileCurve(SurfaceKind::TypeI, 4, 1, {{1, "1.25*u"}, {4, "0.75*u"}}),
        1.0);
    const LoxodromeProblem p = problem(s, SurfaceCausal::Spacelike, 0.0, +1, 2.0);
    const SampledCurve curve = loxodrome_curve(p, 3.0, 200);
    const auto angles = angle_along_curve(curve, s);
    REQUIRE(angles.size() == 199);
    for (const AngleSample& a : angles) CHECK(std::abs(a.value) <= 1e-6);
}

TEST_CASE("measured angles sit on theta0") {
    SUBCASE("spacelike case") {
        const LoxodromeProblem p =
            problem(type1_right(), SurfaceCausal::Spacelike, kPi / 4, +1, 2.0);
        const SampledCurve curve = loxodrome_curve(p, 3.0, 1000);
        for (const AngleSample& a :
             angle_along_curve(curve, p.surface))
            CHECK(std::abs(a.value - kPi / 4) <= 1e-6);
        CHECK(curve.max_angle_deviation <= 1e-6);
    }
    SUBCASE("signed sinh case") {
        const HelicoidalSurface s(
            ProfileCurve(SurfaceKind::TypeII, 4, -1, {{4, "u"}}), 1.0);
        const LoxodromeProblem p =
            problem(s, SurfaceCausal::Timelike, -0.7, +1, 0.5);
        const SampledCurve curve = loxodrome_curve(p, 1.5, 1000);
        for (const AngleSample& a : angle_along_curve(curve, s))
            CHECK(a.value == doctest::Approx(-0.7).epsilon(1e-6));
        CHECK(curve.max_angle_deviation <= 1e-6);
    }
}

TEST_CASE("Runge-Kutta integration path") {
    const LoxodromeProblem p =
        problem(type1_right(), SurfaceCausal::Spacelike, kPi / 4, +1, 2.0);
    const double exact = std::acosh(3.0) - std::acosh(2.0);

    SUBCASE("close to the antiderivative") {
        const auto uv = rk4_v(p, 3.0, 1000);
        REQUIRE(uv.size() == 1001);
        CHECK(uv.front().second == 0.0);
        CHECK(std::abs(uv.back().second - exact) <= 1e-7);
    }
    SUBCASE("fourth-order error decay") {
        const double e50 = std::abs(rk4_v(p, 3.0, 50).back().second - exact);
        const double e100 = std::abs(rk4_v(p, 3.0, 100).back().second - exact);
        CHECK(e100 < e50);
        const double ratio = e50 / e100;
        CHECK(ratio > 10.0);
        CHECK(ratio < 24.0);
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(rk4_v(p, 3.0, 0), ValidationError);
        CHECK_THROWS_AS(rk4_v(p, 2.0, 10), ValidationError);
        CHECK_THROWS_AS(rk4_v(p, 1.0, 10), ValidationError);
    }
}

TEST_CASE("verification report on a sound curve") {
    const LoxodromeProblem p =
        problem(type1_right(), SurfaceCausal::Spacelike, kPi / 4, +1, 2.0);
    const SampledCurve curve = loxodrome_curve(p, 3.0, 1000);
    const VerificationReport rep = verify(curve, p);
    CHECK(rep.passed);
    CHECK(rep.max_angle_deviation <= 1e-6);
    CHECK(rep.max_metric_residual <= 1e-8);
    CHECK(rep.ode_vs_quadrature_max_gap <= 1e-7);
    CHECK(rep.spacelike_violations == 0);
    CHECK(rep.notes.empty());
}

TEST_CASE("negative control: drifting angle is caught") {
    const LoxodromeProblem p =
        problem(type1_right(), SurfaceCausal::Spacelike, kPi / 4, +1, 2.0);
    SampledCurve curve = loxodrome_curve(p, 3.0, 1000);
    for (CurveSample& s : curve.samples) {
        s.v += 0.01 * (s.u - 2.0);
        s.point = p.surface.position(s.u, s.v);
    }
    const VerificationReport rep = verify(curve, p);
    CHECK_FALSE(rep.passed);
    CHECK(rep.max_angle_deviation > 1e-3);
    CHECK(rep.ode_vs_quadrature_max_gap > 1e-3);
    CHECK_FALSE(rep.notes.empty());
}

TEST_CASE("negative control: a corrupted sample point is caught") {
    const LoxodromeProblem p =
        problem(type1_right(), SurfaceCausal::Spacelike, kPi / 4, +1, 2.0);
    SampledCurve curve = loxodrome_curve(p, 3.0, 1000);
    std::vector<double> coords = curve.samples[500].point.coords();
    coords[2] += 1e-4;
    curve.samples[500].point = LorentzVector(coords);
    const VerificationReport rep = verify(curve, p);
    CHECK_FALSE(rep.passed);
    CHECK(rep.max_metric_residual > 1e-6);
}
