#pragma once

#include "loxo/solver.hpp"

// Independent checks on computed curves. None of these trust the solver's
// quadrature: tangents come from finite differences of curve samples, the
// angle from the inner-product definitions, and the alternative v(u) from a
// fixed-step Runge-Kutta integration.

namespace loxo {

struct AngleSample {
    double u;
    double value;
};

// Measured meridian angle at every interior sample. The curve tangent is a
// central difference with h = (u-range)/(10 * samples), evaluated on surface
// positions of cubically interpolated v; x_u comes from tangent_basis. Uses
// only positions and the inner product, never the solver's dv/du.
std::vector<AngleSample> angle_along_curve(const SampledCurve& curve,
                                           const HelicoidalSurface& surface);

// Classic fourth-order Runge-Kutta on w(u) = dv/du as an initial value
// problem; an integration path independent of the adaptive quadrature.
std::vector<std::pair<double, double>> rk4_v(const LoxodromeProblem& p,
                                             double u1, std::size_t steps);

struct VerifyOptions {
    double angle_tol = 1e-6;
    double metric_tol = 1e-8;
    double ode_gap_tol = 1e-7;
};

struct VerificationReport {
    double max_angle_deviation = 0.0;
    double max_metric_residual = 0.0;
    double ode_vs_quadrature_max_gap = 0.0;
    int spacelike_violations = 0;
    std::vector<std::string> notes;
    bool passed = false;
};

// Runs every check against the curve; the report is filled in even when a
// tolerance is violated, so failures carry the offending magnitudes.
VerificationReport verify(const SampledCurve& curve, const LoxodromeProblem& p,
                          const VerifyOptions& opts = {});

} // namespace loxo
