#pragma once

#include <cmath>

#include "loxo/errors.hpp"

// Forward-mode differentiation on numbers of the form a + b*eps, eps^2 = 0.
// Seed der = 1 on the variable to get d/du alongside the value.

namespace loxo {

struct Dual {
    double val = 0.0;
    double der = 0.0;
};

inline Dual operator+(Dual a, Dual b) { return {a.val + b.val, a.der + b.der}; }
inline Dual operator-(Dual a, Dual b) { return {a.val - b.val, a.der - b.der}; }
inline Dual operator-(Dual a) { return {-a.val, -a.der}; }

inline Dual operator*(Dual a, Dual b) {
    return {a.val * b.val, a.der * b.val + a.val * b.der};
}

inline Dual operator/(Dual a, Dual b) {
    if (b.val == 0.0) throw DomainError("division by zero");
    const double inv = 1.0 / b.val;
    return {a.val * inv, (a.der - a.val * b.der * inv) * inv};
}

inline Dual sin(Dual a) { return {std::sin(a.val), a.der * std::cos(a.val)}; }
inline Dual cos(Dual a) { return {std::cos(a.val), -a.der * std::sin(a.val)}; }
inline Dual sinh(Dual a) { return {std::sinh(a.val), a.der * std::cosh(a.val)}; }
inline Dual cosh(Dual a) { return {std::cosh(a.val), a.der * std::sinh(a.val)}; }
inline Dual exp(Dual a) {
    const double e = std::exp(a.val);
    return {e, a.der * e};
}

inline Dual log(Dual a) {
    if (a.val <= 0.0) throw DomainError("log of non-positive value");
    return {std::log(a.val), a.der / a.val};
}

inline Dual sqrt(Dual a) {
    if (a.val < 0.0) throw DomainError("sqrt of negative value");
    const double s = std::sqrt(a.val);
    return {s, a.der == 0.0 ? 0.0 : 0.5 * a.der / s};
}

// Integer powers by repeated squaring; d(a^k) = k a^{k-1} da.
inline Dual pow_int(Dual a, int k) {
    if (k == 0) return {1.0, 0.0};
    if (k < 0) {
        if (a.val == 0.0) throw DomainError("zero raised to a negative power");
        return Dual{1.0, 0.0} / pow_int(a, -k);
    }
    Dual acc{1.0, 0.0};
    Dual base = a;
    int e = k;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

} // namespace loxo
