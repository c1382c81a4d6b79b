#pragma once

#include "loxo/lorentz.hpp"
#include "loxo/profile.hpp"

// The three helicoidal constructions over a profile curve beta(u) with pitch
// c > 0. Writing xi for the null basis pair, the position maps are
//
//   TypeI    (x1 cos v, x1 sin v, x3, ..., x_{n-1}, x_n + c v)
//   TypeII   (x1 + c v, x2, ..., x_{n-2}, x_n sinh v, x_n cosh v)
//   TypeIII  x1 e1 + sqrt(2) v x_n e2 + x3 e3 + ... + x_{n-2} e_{n-2}
//              + (x_{n-1} + v^2 x_n + c v) xi_{n-1} + x_n xi_n
//
// Type III is computed on pseudo-basis coefficients and converted to standard
// coordinates at the interface. The induced metric has the closed form
//
//   TypeI    E = eps, F = -c x_n',  G = x1^2 - c^2
//   TypeII   E = eps, F =  c x1',  G = x_n^2 + c^2
//   TypeIII  E = eps, F = -c x_n',  G = 2 x_n^2
//
// valid whenever the profile is arc-length parametrized.

namespace loxo {

enum class SurfaceCausal { Spacelike, Timelike, Degenerate };

std::string to_string(SurfaceCausal c);

struct MetricSample {
    double u;
    double E, F, G;
    SurfaceCausal causal;
};

struct TangentBasis {
    LorentzVector xu, xv;
};

class HelicoidalSurface {
public:
    // c must be positive; c = 0 (a plain rotational surface, no screw
    // translation) is only allowed when explicitly requested.
    HelicoidalSurface(ProfileCurve profile, double c,
                      bool allow_zero_pitch = false);

    const ProfileCurve& profile() const { return profile_; }
    SurfaceKind kind() const { return profile_.kind(); }
    std::size_t dim() const { return profile_.dim(); }
    double pitch() const { return c_; }
    int epsilon() const { return profile_.epsilon(); }

    LorentzVector position(double u, double v) const;
    TangentBasis tangent_basis(double u, double v) const;

    // E, F, G and the causal tag from the sign of EG - F^2, with the
    // degeneracy band |EG - F^2| <= tol * max(1, |EG|, F^2).
    MetricSample first_fundamental_form(double u, double degeneracy_tol = 1e-9) const;

    SurfaceCausal causal_type(double u, double degeneracy_tol = 1e-9) const {
        return first_fundamental_form(u, degeneracy_tol).causal;
    }

    // True when the distinguished profile derivative vanishes at every sample
    // of a uniform grid over [u0, u1].
    bool is_right_helicoidal(double u0, double u1, std::size_t samples = 101,
                             double tol = 1e-10) const;

private:
    ProfileCurve profile_;
    double c_;
};

} // namespace loxo
