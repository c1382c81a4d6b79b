#include "loxo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace loxo {

namespace {

// Cubic Lagrange interpolation of v(u) through four consecutive samples.
double interp_v(const std::vector<CurveSample>& s, std::size_t j0, double t) {
    double acc = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
        double l = 1.0;
        for (std::size_t b = 0; b < 4; ++b) {
            if (a == b) continue;
            l *= (t - s[j0 + b].u) / (s[j0 + a].u - s[j0 + b].u);
        }
        acc += l * s[j0 + a].v;
    }
    return acc;
}

// Five-point central difference weights (-1, 8, 0, -8, 1) / (12 h).
double diff5(double m2, double m1, double p1, double p2, double h) {
    return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
}

} // namespace

std::vector<AngleSample> angle_along_curve(const SampledCurve& curve,
                                           const HelicoidalSurface& surface) {
    const auto& s = curve.samples;
    if (s.size() < 4)
        throw ValidationError("angle_along_curve needs >= 4 samples");
    const std::size_t n = s.size();
    const double h = (s.back().u - s.front().u) / (10.0 * static_cast<double>(n));
    if (!(h > 0.0)) throw ValidationError("curve samples must increase in u");

    std::vector<AngleSample> out;
    out.reserve(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const std::size_t j0 = std::min(i - 1, n - 4);
        const double ua = s[i].u - h;
        const double ub = s[i].u + h;
        const LorentzVector pa = surface.position(ua, interp_v(s, j0, ua));
        const LorentzVector pb = surface.position(ub, interp_v(s, j0, ub));
        const LorentzVector tangent = (1.0 / (2.0 * h)) * (pb - pa);
        const LorentzVector xu = surface.tangent_basis(s[i].u, s[i].v).xu;
        out.push_back(AngleSample{s[i].u, angle_between(tangent, xu).value});
    }
    return out;
}

std::vector<std::pair<double, double>> rk4_v(const LoxodromeProblem& p,
                                             double u1, std::size_t steps) {
    if (steps < 1) throw ValidationError("rk4_v needs steps >= 1");
    if (!(u1 > p.u0)) throw ValidationError("require u1 > u0");
    const auto w = [&](double u) {
        const MetricSample m = p.surface.first_fundamental_form(u);
        const RootPair r = dvdu_roots(m.E, m.F, m.G, p.angle);
        return p.branch > 0 ? r.plus : r.minus;
    };

    const double h = (u1 - p.u0) / static_cast<double>(steps);
    std::vector<std::pair<double, double>> out;
    out.reserve(steps + 1);
    double v = p.v0;
    out.emplace_back(p.u0, v);
    for (std::size_t k = 0; k < steps; ++k) {
        const double u = p.u0 + h * static_cast<double>(k);
        const double k1 = w(u);
        const double k2 = w(u + 0.5 * h);
        const double k3 = w(u + 0.5 * h); // rhs does not depend on v
        const double k4 = w(u + h);
        v += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.emplace_back(k + 1 == steps ? u1 : u + h, v);
    }
    return out;
}

VerificationReport verify(const SampledCurve& curve, const LoxodromeProblem& p,
                          const VerifyOptions& opts) {
    VerificationReport rep;
    const auto& s = curve.samples;
    if (s.size() < 5)
        throw ValidationError("verify needs >= 5 samples");
    const std::size_t n = s.size();

    // Angle constancy against theta0.
    try {
        for (const AngleSample& a : angle_along_curve(curve, p.surface))
            rep.max_angle_deviation = std::max(
                rep.max_angle_deviation, std::abs(a.value - p.angle.theta0));
    } catch (const std::runtime_error& e) {
        rep.max_angle_deviation = std::numeric_limits<double>::infinity();
        rep.notes.push_back(std::string("angle measurement failed: ") + e.what());
    }

    // Metric consistency and the spacelike condition, from five-point
    // derivatives of the samples themselves plus point/surface agreement.
    const double h = (s.back().u - s.front().u) / static_cast<double>(n - 1);
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double w_fd = diff5(s[i - 2].v, s[i - 1].v, s[i + 1].v,
                                  s[i + 2].v, h);
        std::vector<double> d(p.surface.dim());
        for (std::size_t c = 0; c < d.size(); ++c)
            d[c] = diff5(s[i - 2].point[c], s[i - 1].point[c],
                         s[i + 1].point[c], s[i + 2].point[c], h);
        const LorentzVector tangent{std::move(d)};
        const double g_fd = lorentz_inner(tangent, tangent);

        const MetricSample m = p.surface.first_fundamental_form(s[i].u);
        const double g_cf = m.E + 2.0 * m.F * w_fd + m.G * w_fd * w_fd;
        const double res =
            std::abs(g_fd - g_cf) / std::max(1.0, std::abs(g_cf));
        rep.max_metric_residual = std::max(rep.max_metric_residual, res);
        if (g_fd <= 0.0) ++rep.spacelike_violations;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const LorentzVector q = p.surface.position(s[i].u, s[i].v);
        double scale = 1.0, diff = 0.0;
        for (std::size_t c = 0; c < q.dim(); ++c) {
            scale = std::max(scale, std::abs(s[i].point[c]));
            diff = std::max(diff, std::abs(q[c] - s[i].point[c]));
        }
        rep.max_metric_residual = std::max(rep.max_metric_residual, diff / scale);
    }

    // Independent integration of the same initial value problem.
    const auto ode = rk4_v(p, s.back().u, n - 1);
    for (std::size_t i = 0; i < n; ++i)
        rep.ode_vs_quadrature_max_gap = std::max(
            rep.ode_vs_quadrature_max_gap, std::abs(ode[i].second - s[i].v));

    rep.passed = rep.max_angle_deviation <= opts.angle_tol &&
                 rep.max_metric_residual <= opts.metric_tol &&
                 rep.ode_vs_quadrature_max_gap <= opts.ode_gap_tol &&
                 rep.spacelike_violations == 0;
    if (!rep.passed && rep.notes.empty())
        rep.notes.push_back("one or more verification tolerances exceeded");
    return rep;
}

} // namespace loxo
