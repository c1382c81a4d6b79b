#include "loxo/solver.hpp"

#include <algorithm>
#include <cmath>

#include "loxo/oracle.hpp"

namespace loxo {

namespace {

constexpr double kPi = 3.14159265358979323846;

double pick_branch(const RootPair& r, int branch) {
    return branch > 0 ? r.plus : r.minus;
}

// dv/du at one u for the given problem.
double root_at(const LoxodromeProblem& p, double u, const SolverOptions& opts) {
    const MetricSample m =
        p.surface.first_fundamental_form(u, opts.degeneracy_tol);
    return pick_branch(dvdu_roots(m.E, m.F, m.G, p.angle), p.branch);
}

template <typename F>
std::pair<double, double> bisect_zero(F&& f, double a, double b, double width) {
    double fa = f(a);
    while (b - a > width) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fa * fm <= 0.0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    return {a, b};
}

double simpson_panel(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_rec(F&& f, double a, double fa, double b, double fb,
                            double m, double fm, double whole, double tol,
                            int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_panel(a, fa, flm, m, fm);
    const double right = simpson_panel(m, fm, frm, b, fb);
    const double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol || depth <= 0) {
        if (depth <= 0 && std::abs(err) > 15.0 * tol)
            throw AdmissibilityError(
                "quadrature failed to converge; integrand is near-singular");
        return left + right + err / 15.0;
    }
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                                depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                                depth - 1);
}

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = simpson_panel(a, fa, fm, b, fb);
    return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

} // namespace

double theta_constant(SurfaceCausal sc, int epsilon, double theta0) {
    if (epsilon != 1 && epsilon != -1)
        throw ValidationError("epsilon must be +1 or -1");
    if (!std::isfinite(theta0)) throw ValidationError("theta0 must be finite");
    switch (sc) {
        case SurfaceCausal::Spacelike:
            if (epsilon != 1)
                throw ValidationError(
                    "a spacelike surface has a spacelike meridian; epsilon "
                    "must be +1");
            if (theta0 < 0.0 || theta0 > kPi)
                throw ValidationError(
                    "theta0 must lie in [0, pi] on a spacelike surface");
            return std::cos(theta0);
        case SurfaceCausal::Timelike:
            if (epsilon == 1) return std::cosh(theta0);
            if (theta0 == 0.0)
                throw ValidationError(
                    "theta0 = 0 is degenerate for a timelike meridian "
                    "(sinh(theta0) = 0)");
            return std::sinh(theta0);
        case SurfaceCausal::Degenerate:
            break;
    }
    throw ValidationError("no angle constant on a degenerate surface");
}

AngleSpec make_angle_spec(SurfaceCausal sc, int epsilon, double theta0) {
    return AngleSpec{theta0, sc, epsilon, theta_constant(sc, epsilon, theta0)};
}

RootPair dvdu_roots(double E, double F, double G, const AngleSpec& angle) {
    const double eps = static_cast<double>(angle.epsilon);
    if (std::abs(E - eps) > 1e-9)
        throw ValidationError(
            "dvdu_roots: E must equal epsilon (arc-length meridian)");
    const double t2 = angle.theta_eff * angle.theta_eff;
    const double A = t2 * G - F * F;
    const double B = F * (t2 - eps);
    const double C = 1.0 - eps * t2;

    const double a_scale = std::max({1.0, std::abs(t2 * G), F * F});
    if (std::abs(A) <= 1e-12 * a_scale)
        throw AdmissibilityError(
            "vanishing denominator theta_eff^2*G - F^2");

    double disc = B * B + A * C;
    const double d_scale = std::max({1.0, B * B, std::abs(A * C)});
    if (disc < 0.0) {
        if (disc < -1e-12 * d_scale)
            throw AdmissibilityError(
                "negative discriminant: no spacelike loxodrome with this "
                "angle on this surface");
        disc = 0.0; // roundoff at a double root
    }
    const double s = std::sqrt(disc);
    const double r1 = (-B + s) / A;
    const double r2 = (-B - s) / A;
    // The +/- of the quadratic formula swaps meaning with the sign of A;
    // order by value so branch selection stays geometric.
    return {std::max(r1, r2), std::min(r1, r2)};
}

void check_admissible(const LoxodromeProblem& p, double u1,
                      const SolverOptions& opts) {
    const double u0 = p.u0;
    if (!(u1 > u0)) throw ValidationError("require u1 > u0");
    if (p.branch != 1 && p.branch != -1)
        throw ValidationError("branch must be +1 or -1");

    const double t2 = p.angle.theta_eff * p.angle.theta_eff;
    const double eps = static_cast<double>(p.angle.epsilon);

    const auto det = [&](double u) {
        const MetricSample m = p.surface.first_fundamental_form(u, 0.0);
        return m.E * m.G - m.F * m.F;
    };
    const auto denom = [&](double u) {
        const MetricSample m = p.surface.first_fundamental_form(u, 0.0);
        return t2 * m.G - m.F * m.F;
    };
    const auto discr = [&](double u) {
        const MetricSample m = p.surface.first_fundamental_form(u, 0.0);
        const double A = t2 * m.G - m.F * m.F;
        const double B = m.F * (t2 - eps);
        return B * B + A * (1.0 - eps * t2);
    };

    const std::size_t n = std::max<std::size_t>(opts.scan_points, 8);
    const double h = (u1 - u0) / static_cast<double>(n);

    const auto point_bracket = [&](double u) {
        const double w = 0.5 * opts.bracket_width;
        return std::pair<double, double>{std::max(u0, u - w),
                                         std::min(u1, u + w)};
    };

    // One pass over the grid; every quantity that must keep its sign is
    // checked at each point and between neighbours.
    SurfaceCausal expected = p.angle.surface_causal;
    double prev_u = u0;
    double prev_det = 0.0, prev_den = 0.0, prev_dis = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const double u = k == n ? u1 : u0 + h * static_cast<double>(k);
        const MetricSample m =
            p.surface.first_fundamental_form(u, opts.degeneracy_tol);
        const double dt = det(u);
        const double dn = denom(u);
        const double di = discr(u);

        if (m.causal == SurfaceCausal::Degenerate) {
            const auto [lo, hi] = point_bracket(u);
            throw AdmissibilityError("metric is degenerate: EG - F^2 vanishes",
                                     lo, hi);
        }
        // A sign change between neighbours pinpoints the degeneracy; check it
        // before the causal mismatch so the error carries the bracket.
        if (k > 0 && prev_det * dt < 0.0) {
            const auto [lo, hi] = bisect_zero(det, prev_u, u, opts.bracket_width);
            throw AdmissibilityError(
                "metric becomes degenerate: EG - F^2 changes sign", lo, hi);
        }
        if (m.causal != expected)
            throw AdmissibilityError(
                "surface is " + to_string(m.causal) + " near u = " +
                std::to_string(u) + " but the angle expects a " +
                to_string(expected) + " surface");

        const double den_scale = std::max({1.0, std::abs(t2 * m.G), m.F * m.F});
        if (std::abs(dn) <= opts.degeneracy_tol * den_scale) {
            const auto [lo, hi] = point_bracket(u);
            throw AdmissibilityError(
                "denominator theta_eff^2*G - F^2 vanishes", lo, hi);
        }

        if (k > 0) {
            if (prev_den * dn < 0.0) {
                const auto [lo, hi] =
                    bisect_zero(denom, prev_u, u, opts.bracket_width);
                throw AdmissibilityError(
                    "denominator theta_eff^2*G - F^2 changes sign", lo, hi);
            }
            if (prev_dis * di < 0.0) {
                const auto [lo, hi] =
                    bisect_zero(discr, prev_u, u, opts.bracket_width);
                throw AdmissibilityError("discriminant changes sign", lo, hi);
            }
        }
        if (di < 0.0 && k == 0)
            throw AdmissibilityError(
                "negative discriminant over the range: no spacelike "
                "loxodrome with this angle on this surface");

        prev_u = u;
        prev_det = dt;
        prev_den = dn;
        prev_dis = di;
    }
}

std::vector<std::pair<double, double>> solve_v(const LoxodromeProblem& p,
                                               double u1, std::size_t steps,
                                               const SolverOptions& opts) {
    if (steps < 2) throw ValidationError("solve_v needs steps >= 2");
    check_admissible(p, u1, opts);

    const auto w = [&](double u) { return root_at(p, u, opts); };
    const double h = (u1 - p.u0) / static_cast<double>(steps);

    std::vector<std::pair<double, double>> out;
    out.reserve(steps + 1);
    double v = p.v0;
    out.emplace_back(p.u0, v);
    for (std::size_t k = 1; k <= steps; ++k) {
        const double a = p.u0 + h * static_cast<double>(k - 1);
        const double b = k == steps ? u1 : p.u0 + h * static_cast<double>(k);
        v += adaptive_simpson(w, a, b, opts.quadrature_tol * (b - a));
        out.emplace_back(b, v);
    }
    return out;
}

double arc_length(const LoxodromeProblem& p, double u1,
                  const SolverOptions& opts) {
    check_admissible(p, u1, opts);
    const auto ds = [&](double u) {
        const MetricSample m =
            p.surface.first_fundamental_form(u, opts.degeneracy_tol);
        const double w = pick_branch(dvdu_roots(m.E, m.F, m.G, p.angle),
                                     p.branch);
        return std::sqrt(std::abs(m.E + 2.0 * m.F * w + m.G * w * w));
    };
    return adaptive_simpson(ds, p.u0, u1, opts.quadrature_tol * (u1 - p.u0));
}

SampledCurve loxodrome_curve(const LoxodromeProblem& p, double u1,
                             std::size_t steps, const SolverOptions& opts) {
    const auto uv = solve_v(p, u1, steps, opts);
    SampledCurve curve;
    curve.samples.reserve(uv.size());
    for (const auto& [u, v] : uv)
        curve.samples.push_back(CurveSample{u, v, p.surface.position(u, v)});
    curve.arc_length = arc_length(p, u1, opts);

    double dev = 0.0;
    for (const AngleSample& a : angle_along_curve(curve, p.surface))
        dev = std::max(dev, std::abs(a.value - p.angle.theta0));
    curve.max_angle_deviation = dev;
    return curve;
}

} // namespace loxo
