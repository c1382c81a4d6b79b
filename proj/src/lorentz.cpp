#include "loxo/lorentz.hpp"

#include <algorithm>
#include <cmath>

namespace loxo {

namespace {

constexpr double kCosineClampBand = 1e-9;

void check_same_dim(const LorentzVector& a, const LorentzVector& b) {
    if (a.dim() != b.dim())
        throw ValidationError("dimension mismatch: " + std::to_string(a.dim()) +
                              " vs " + std::to_string(b.dim()));
}

double max_abs_coord(const LorentzVector& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

} // namespace

LorentzVector::LorentzVector(std::vector<double> coords)
    : coords_(std::move(coords)) {
    if (coords_.size() < 4)
        throw ValidationError("LorentzVector needs dimension >= 4, got " +
                              std::to_string(coords_.size()));
    for (double c : coords_)
        if (!std::isfinite(c))
            throw ValidationError("LorentzVector coordinate is not finite");
}

LorentzVector operator+(const LorentzVector& a, const LorentzVector& b) {
    check_same_dim(a, b);
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] + b[i];
    return LorentzVector(std::move(c));
}

LorentzVector operator-(const LorentzVector& a, const LorentzVector& b) {
    check_same_dim(a, b);
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] - b[i];
    return LorentzVector(std::move(c));
}

LorentzVector operator*(double s, const LorentzVector& a) {
    std::vector<double> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = s * a[i];
    return LorentzVector(std::move(c));
}

double lorentz_inner(const LorentzVector& a, const LorentzVector& b) {
    check_same_dim(a, b);
    const std::size_t n = a.dim();
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) s += a[i] * b[i];
    return s - a[n - 1] * b[n - 1];
}

double lorentz_norm(const LorentzVector& a) {
    return std::sqrt(std::abs(lorentz_inner(a, a)));
}

Causal causal_character(const LorentzVector& a, double tol) {
    const double m = max_abs_coord(a);
    if (m == 0.0) return Causal::Spacelike; // zero vector, by convention
    const double q = lorentz_inner(a, a);
    const double band = tol * m * m;
    if (q > band) return Causal::Spacelike;
    if (q < -band) return Causal::Timelike;
    return Causal::Lightlike;
}

LorentzAngle angle_between(const LorentzVector& x, const LorentzVector& y) {
    check_same_dim(x, y);
    const Causal cx = causal_character(x);
    const Causal cy = causal_character(y);
    if (cx == Causal::Lightlike || cy == Causal::Lightlike)
        throw ValidationError("angle_between: lightlike or zero input");
    if (cx == Causal::Timelike && cy == Causal::Timelike)
        throw ValidationError(
            "angle_between: angle between two timelike vectors is undefined");

    const double ip = lorentz_inner(x, y);
    const double nx = lorentz_norm(x);
    const double ny = lorentz_norm(y);
    if (nx == 0.0 || ny == 0.0)
        throw ValidationError("angle_between: zero vector has no direction");
    const double q = ip / (nx * ny);

    // Mixed pair: sinh theta = <x,y>/(|x||y|), defined for every real q.
    if (cx == Causal::Timelike || cy == Causal::Timelike)
        return {AngleKind::TimelikeSinh, std::asinh(q)};

    // Two spacelike vectors. The Gram determinant of the span has the sign of
    // 1 - q^2, so |q| classifies the plane.
    if (std::abs(q) < 1.0 - kCosineClampBand)
        return {AngleKind::Spacelike, std::acos(q)};

    if (std::abs(q) <= 1.0 + kCosineClampBand) {
        // Boundary: either the vectors are (anti)parallel, where the angle is
        // 0 or pi by continuity, or the span truly contains a null direction
        // and no angle is defined.
        double mismatch = 0.0;
        const double s = q >= 0.0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < x.dim(); ++i)
            mismatch = std::max(mismatch, std::abs(x[i] / nx - s * y[i] / ny));
        if (mismatch > 1e-6)
            throw ValidationError("angle_between: span is degenerate");
        return {AngleKind::Spacelike, q >= 0.0 ? 0.0 : std::acos(-1.0)};
    }

    if (q >= 1.0 + kCosineClampBand)
        return {AngleKind::TimelikeCosh, std::acosh(q)};

    // q <= -(1 + band): the defining equation cosh(theta) = q has no solution.
    throw DomainError(
        "angle_between: spacelike pair spans a timelike plane with negative "
        "inner product; no angle solves cosh(theta) = " + std::to_string(q));
}

LorentzVector pseudo_to_standard(const PseudoBasisPoint& p) {
    const std::size_t n = p.coeffs.size();
    if (n < 4)
        throw ValidationError("pseudo basis needs dimension >= 4");
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<double> c(p.coeffs.begin(), p.coeffs.end());
    const double a = p.coeffs[n - 2]; // xi_{n-1} coefficient
    const double b = p.coeffs[n - 1]; // xi_n coefficient
    c[n - 2] = (b - a) * r;
    c[n - 1] = (b + a) * r;
    return LorentzVector(std::move(c));
}

PseudoBasisPoint standard_to_pseudo(const LorentzVector& v) {
    const std::size_t n = v.dim();
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<double> c(v.coords());
    const double p = v[n - 2];
    const double q = v[n - 1];
    c[n - 2] = (q - p) * r;
    c[n - 1] = (q + p) * r;
    return PseudoBasisPoint{std::move(c)};
}

double pseudo_inner(const PseudoBasisPoint& p, const PseudoBasisPoint& q) {
    const std::size_t n = p.coeffs.size();
    if (q.coeffs.size() != n)
        throw ValidationError("pseudo_inner: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i + 2 < n; ++i) s += p.coeffs[i] * q.coeffs[i];
    return s - p.coeffs[n - 2] * q.coeffs[n - 1] -
           p.coeffs[n - 1] * q.coeffs[n - 2];
}

} // namespace loxo
