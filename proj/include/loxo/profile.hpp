#pragma once

#include <map>
#include <string>
#include <vector>

#include "loxo/expr.hpp"

// Profile curves feeding the three helicoidal constructions. A profile is a
// list of coordinate expressions in u, expected to be parametrized by arc
// length: the kind-specific quadratic form of the first derivatives must be
// identically epsilon (+1 spacelike meridian, -1 timelike meridian).
//
// Components are indexed 1..n. Per kind, one coordinate is reserved for the
// screw motion and must stay zero:
//   TypeI    components {1, 3..n},    coordinate 2 reserved
//   TypeII   components {1..n-2, n},  coordinate n-1 reserved
//   TypeIII  components {1, 3..n},    coordinate 2 reserved; indices n-1, n
//            are coefficients of the null basis pair, not standard coords
// Unlisted components are the constant 0.

namespace loxo {

enum class SurfaceKind { TypeI, TypeII, TypeIII };

std::string to_string(SurfaceKind k);

class ProfileCurve {
public:
    ProfileCurve(SurfaceKind kind, std::size_t n, int epsilon,
                 std::map<std::size_t, std::string> component_sources,
                 std::map<std::string, double> constants = {});

    SurfaceKind kind() const { return kind_; }
    std::size_t dim() const { return n_; }
    int epsilon() const { return epsilon_; }

    // Values and u-derivatives of all n components (zeros where unset).
    std::vector<Dual> eval(double u) const;

    // d/du of the component that must be constant for a right helicoidal
    // surface: x_n for types I and III, x_1 for type II.
    double distinguished_derivative(double u) const;

    const std::map<std::size_t, std::string>& sources() const { return sources_; }
    const std::map<std::string, double>& constants() const { return constants_; }

    // The derivative form that arc-length parametrization pins to epsilon.
    double speed_form(double u) const;

private:
    SurfaceKind kind_;
    std::size_t n_;
    int epsilon_;
    std::vector<Expr> components_; // index 0 unused; 1..n
    std::map<std::size_t, std::string> sources_;
    std::map<std::string, double> constants_;
};

struct UnitSpeedReport {
    bool pass = true;
    double worst_violation = 0.0; // max |speed_form - epsilon| over samples
    double worst_u = 0.0;
};

// Samples speed_form on a uniform grid of `samples` points over [u0, u1].
UnitSpeedReport check_unit_speed(const ProfileCurve& p, double u0, double u1,
                                 std::size_t samples = 101, double tol = 1e-8);

} // namespace loxo
