#include "loxo/profile.hpp"

#include <cmath>

namespace loxo {

std::string to_string(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::TypeI: return "I";
        case SurfaceKind::TypeII: return "II";
        case SurfaceKind::TypeIII: return "III";
    }
    return "?";
}

namespace {

bool index_allowed(SurfaceKind kind, std::size_t i, std::size_t n) {
    if (i < 1 || i > n) return false;
    switch (kind) {
        case SurfaceKind::TypeI:
        case SurfaceKind::TypeIII:
            return i != 2;
        case SurfaceKind::TypeII:
            return i != n - 1;
    }
    return false;
}

} // namespace

ProfileCurve::ProfileCurve(SurfaceKind kind, std::size_t n, int epsilon,
                           std::map<std::size_t, std::string> component_sources,
                           std::map<std::string, double> constants)
    : kind_(kind), n_(n), epsilon_(epsilon),
      sources_(std::move(component_sources)), constants_(std::move(constants)) {
    if (n_ < 4)
        throw ValidationError("profile dimension must be >= 4, got " +
                              std::to_string(n_));
    if (epsilon_ != 1 && epsilon_ != -1)
        throw ValidationError("profile epsilon must be +1 or -1");
    components_.resize(n_ + 1);
    for (const auto& [idx, src] : sources_) {
        if (!index_allowed(kind_, idx, n_))
            throw ValidationError("component " + std::to_string(idx) +
                                  " is not available on a type " +
                                  to_string(kind_) + " profile of dimension " +
                                  std::to_string(n_));
        components_[idx] = parse_expr(src, constants_);
    }
}

std::vector<Dual> ProfileCurve::eval(double u) const {
    std::vector<Dual> out(n_ + 1);
    for (std::size_t i = 1; i <= n_; ++i)
        if (!components_[i].empty()) out[i] = components_[i].eval_dual(u);
    return out;
}

double ProfileCurve::distinguished_derivative(double u) const {
    const std::size_t idx = kind_ == SurfaceKind::TypeII ? 1 : n_;
    if (components_[idx].empty()) return 0.0;
    return components_[idx].eval_dual(u).der;
}

double ProfileCurve::speed_form(double u) const {
    const std::vector<Dual> x = eval(u);
    double s = 0.0;
    switch (kind_) {
        case SurfaceKind::TypeI:
            for (std::size_t i = 1; i <= n_ - 1; ++i)
                if (i != 2) s += x[i].der * x[i].der;
            s -= x[n_].der * x[n_].der;
            break;
        case SurfaceKind::TypeII:
            for (std::size_t i = 1; i <= n_ - 2; ++i) s += x[i].der * x[i].der;
            s -= x[n_].der * x[n_].der;
            break;
        case SurfaceKind::TypeIII:
            for (std::size_t i = 1; i <= n_ - 2; ++i)
                if (i != 2) s += x[i].der * x[i].der;
            s -= 2.0 * x[n_ - 1].der * x[n_].der;
            break;
    }
    return s;
}

UnitSpeedReport check_unit_speed(const ProfileCurve& p, double u0, double u1,
                                 std::size_t samples, double tol) {
    if (samples < 2) throw ValidationError("check_unit_speed needs >= 2 samples");
    UnitSpeedReport r;
    r.worst_u = u0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double u = u0 + (u1 - u0) * static_cast<double>(k) /
                                  static_cast<double>(samples - 1);
        const double v = std::abs(p.speed_form(u) - p.epsilon());
        if (v > r.worst_violation) {
            r.worst_violation = v;
            r.worst_u = u;
        }
    }
    r.pass = r.worst_violation <= tol;
    return r;
}

} // namespace loxo
