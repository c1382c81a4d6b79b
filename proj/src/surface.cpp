#include "loxo/surface.hpp"

#include <algorithm>
#include <cmath>

namespace loxo {

std::string to_string(SurfaceCausal c) {
    switch (c) {
        case SurfaceCausal::Spacelike: return "spacelike";
        case SurfaceCausal::Timelike: return "timelike";
        case SurfaceCausal::Degenerate: return "degenerate";
    }
    return "?";
}

HelicoidalSurface::HelicoidalSurface(ProfileCurve profile, double c,
                                     bool allow_zero_pitch)
    : profile_(std::move(profile)), c_(c) {
    if (!(c_ > 0.0) && !(allow_zero_pitch && c_ == 0.0))
        throw ValidationError("pitch c must be positive");
}

LorentzVector HelicoidalSurface::position(double u, double v) const {
    const std::size_t n = dim();
    const std::vector<Dual> x = profile_.eval(u);
    std::vector<double> p(n);
    switch (kind()) {
        case SurfaceKind::TypeI: {
            p[0] = x[1].val * std::cos(v);
            p[1] = x[1].val * std::sin(v);
            for (std::size_t i = 3; i < n; ++i) p[i - 1] = x[i].val;
            p[n - 1] = x[n].val + c_ * v;
            return LorentzVector(std::move(p));
        }
        case SurfaceKind::TypeII: {
            p[0] = x[1].val + c_ * v;
            for (std::size_t i = 2; i <= n - 2; ++i) p[i - 1] = x[i].val;
            p[n - 2] = x[n].val * std::sinh(v);
            p[n - 1] = x[n].val * std::cosh(v);
            return LorentzVector(std::move(p));
        }
        case SurfaceKind::TypeIII: {
            p[0] = x[1].val;
            p[1] = std::sqrt(2.0) * v * x[n].val;
            for (std::size_t i = 3; i <= n - 2; ++i) p[i - 1] = x[i].val;
            p[n - 2] = x[n - 1].val + v * v * x[n].val + c_ * v;
            p[n - 1] = x[n].val;
            return pseudo_to_standard(PseudoBasisPoint{std::move(p)});
        }
    }
    throw ValidationError("unreachable surface kind");
}

TangentBasis HelicoidalSurface::tangent_basis(double u, double v) const {
    const std::size_t n = dim();
    const std::vector<Dual> x = profile_.eval(u);
    std::vector<double> du(n, 0.0), dv(n, 0.0);
    switch (kind()) {
        case SurfaceKind::TypeI: {
            du[0] = x[1].der * std::cos(v);
            du[1] = x[1].der * std::sin(v);
            for (std::size_t i = 3; i < n; ++i) du[i - 1] = x[i].der;
            du[n - 1] = x[n].der;
            dv[0] = -x[1].val * std::sin(v);
            dv[1] = x[1].val * std::cos(v);
            dv[n - 1] = c_;
            return {LorentzVector(std::move(du)), LorentzVector(std::move(dv))};
        }
        case SurfaceKind::TypeII: {
            du[0] = x[1].der;
            for (std::size_t i = 2; i <= n - 2; ++i) du[i - 1] = x[i].der;
            du[n - 2] = x[n].der * std::sinh(v);
            du[n - 1] = x[n].der * std::cosh(v);
            dv[0] = c_;
            dv[n - 2] = x[n].val * std::cosh(v);
            dv[n - 1] = x[n].val * std::sinh(v);
            return {LorentzVector(std::move(du)), LorentzVector(std::move(dv))};
        }
        case SurfaceKind::TypeIII: {
            du[0] = x[1].der;
            du[1] = std::sqrt(2.0) * v * x[n].der;
            for (std::size_t i = 3; i <= n - 2; ++i) du[i - 1] = x[i].der;
            du[n - 2] = x[n - 1].der + v * v * x[n].der;
            du[n - 1] = x[n].der;
            dv[1] = std::sqrt(2.0) * x[n].val;
            dv[n - 2] = 2.0 * v * x[n].val + c_;
            return {pseudo_to_standard(PseudoBasisPoint{std::move(du)}),
                    pseudo_to_standard(PseudoBasisPoint{std::move(dv)})};
        }
    }
    throw ValidationError("unreachable surface kind");
}

MetricSample HelicoidalSurface::first_fundamental_form(double u,
                                                       double degeneracy_tol) const {
    const std::size_t n = dim();
    const std::vector<Dual> x = profile_.eval(u);
    MetricSample m;
    m.u = u;
    m.E = static_cast<double>(epsilon());
    switch (kind()) {
        case SurfaceKind::TypeI:
            m.F = -c_ * x[n].der;
            m.G = x[1].val * x[1].val - c_ * c_;
            break;
        case SurfaceKind::TypeII:
            m.F = c_ * x[1].der;
            m.G = x[n].val * x[n].val + c_ * c_;
            break;
        case SurfaceKind::TypeIII:
            m.F = -c_ * x[n].der;
            m.G = 2.0 * x[n].val * x[n].val;
            break;
    }
    const double det = m.E * m.G - m.F * m.F;
    const double band = degeneracy_tol *
                        std::max({1.0, std::abs(m.E * m.G), m.F * m.F});
    if (det > band)
        m.causal = SurfaceCausal::Spacelike;
    else if (det < -band)
        m.causal = SurfaceCausal::Timelike;
    else
        m.causal = SurfaceCausal::Degenerate;
    return m;
}

bool HelicoidalSurface::is_right_helicoidal(double u0, double u1,
                                            std::size_t samples, double tol) const {
    if (samples < 2) throw ValidationError("is_right_helicoidal needs >= 2 samples");
    for (std::size_t k = 0; k < samples; ++k) {
        const double u = u0 + (u1 - u0) * static_cast<double>(k) /
                                  static_cast<double>(samples - 1);
        if (std::abs(profile_.distinguished_derivative(u)) > tol) return false;
    }
    return true;
}

} // namespace loxo
