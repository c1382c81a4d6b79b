#pragma once

#include <utility>
#include <vector>

#include "loxo/surface.hpp"

// Spacelike loxodromes: curves u -> (u, v(u)) meeting every meridian at a
// constant angle theta0. With w = dv/du and the effective constant
//
//   Theta = cos(theta0)   spacelike surface
//   Theta = cosh(theta0)  timelike surface, spacelike meridian (eps = +1)
//   Theta = sinh(theta0)  timelike surface, timelike meridian  (eps = -1)
//
// squaring Theta * |alpha'| = <alpha', x_u> with E = eps gives one quadratic
// covering all three constructions:
//
//   (Theta^2 G - F^2) w^2 + 2 F (Theta^2 - eps) w = 1 - eps Theta^2
//
// whose discriminant reduces to Theta^2 (1 - eps Theta^2) eps (EG - F^2), so
// admissibility is exactly the surface causal type matching the angle case.
// v(u) then comes from integrating the chosen root.

namespace loxo {

struct AngleSpec {
    double theta0;
    SurfaceCausal surface_causal; // Spacelike or Timelike
    int epsilon;                  // sign of <x_u, x_u>
    double theta_eff;             // Theta above
};

// The effective constant for the given configuration. Rejects degenerate
// surfaces, spacelike surfaces with eps = -1 or theta0 outside [0, pi], and
// the sinh case at theta0 = 0 (the angle condition degenerates).
double theta_constant(SurfaceCausal sc, int epsilon, double theta0);

AngleSpec make_angle_spec(SurfaceCausal sc, int epsilon, double theta0);

struct RootPair {
    double plus;  // the larger root
    double minus; // the smaller root
};

// Both dv/du roots of the quadratic at one metric sample, ordered by value.
// E must equal the meridian sign epsilon (arc-length parametrization).
RootPair dvdu_roots(double E, double F, double G, const AngleSpec& angle);

struct SolverOptions {
    double quadrature_tol = 1e-10; // absolute error per unit of u
    double degeneracy_tol = 1e-9;
    std::size_t scan_points = 256; // pre-integration singularity scan grid
    double bracket_width = 5e-7;   // zero crossings are narrowed to this
};

struct LoxodromeProblem {
    HelicoidalSurface surface;
    AngleSpec angle;
    int branch = +1; // +1 follows the larger dv/du root, -1 the smaller
    double u0 = 0.0;
    double v0 = 0.0;
};

// Aborts with a bracketing interval if EG - F^2, the quadratic's denominator,
// or its discriminant crosses zero on [u0, u1]; also rejects a surface whose
// causal type contradicts angle.surface_causal.
void check_admissible(const LoxodromeProblem& p, double u1,
                      const SolverOptions& opts = {});

// v at steps+1 uniform samples of [u0, u1], by adaptive Simpson quadrature of
// the chosen root with Richardson acceptance |S(h) - S(h/2)|/15 <= tol.
std::vector<std::pair<double, double>> solve_v(const LoxodromeProblem& p,
                                               double u1, std::size_t steps,
                                               const SolverOptions& opts = {});

// integral of sqrt(|E + 2 F w + G w^2|) du over [u0, u1].
double arc_length(const LoxodromeProblem& p, double u1,
                  const SolverOptions& opts = {});

struct CurveSample {
    double u;
    double v;
    LorentzVector point;
};

struct SampledCurve {
    std::vector<CurveSample> samples; // u strictly increasing
    double arc_length = 0.0;
    double max_angle_deviation = 0.0; // measured by the oracle, vs theta0
};

// solve_v plus surface positions, arc length, and the oracle's angle check.
SampledCurve loxodrome_curve(const LoxodromeProblem& p, double u1,
                             std::size_t steps, const SolverOptions& opts = {});

} // namespace loxo
