#pragma once

#include <cstddef>
#include <vector>

#include "loxo/errors.hpp"

// Linear algebra of Lorentz n-space: the inner product carries a minus sign on
// the last coordinate,
//
//     <x, y> = x_1 y_1 + ... + x_{n-1} y_{n-1} - x_n y_n.
//
// Everything downstream (surfaces, solver, oracle) measures with this form.

namespace loxo {

enum class Causal { Spacelike, Timelike, Lightlike };

// Which of the three angle definitions applied:
//   Spacelike     two spacelike vectors spanning a spacelike plane, arccos
//   TimelikeCosh  two spacelike vectors spanning a timelike plane, arccosh
//   TimelikeSinh  a spacelike and a timelike vector, arcsinh
enum class AngleKind { Spacelike, TimelikeCosh, TimelikeSinh };

struct LorentzAngle {
    AngleKind kind;
    double value;
};

// Point or vector in Lorentz n-space, n >= 4. Coordinates must be finite.
class LorentzVector {
public:
    explicit LorentzVector(std::vector<double> coords);

    std::size_t dim() const { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; } // 0-based
    const std::vector<double>& coords() const { return coords_; }

private:
    std::vector<double> coords_;
};

LorentzVector operator+(const LorentzVector& a, const LorentzVector& b);
LorentzVector operator-(const LorentzVector& a, const LorentzVector& b);
LorentzVector operator*(double s, const LorentzVector& a);

double lorentz_inner(const LorentzVector& a, const LorentzVector& b);

// sqrt(|<x, x>|); zero exactly for lightlike (and zero) vectors.
double lorentz_norm(const LorentzVector& a);

// Sign of <x,x> against a relative band: |<x,x>| <= tol * (max_i |x_i|)^2 is
// lightlike (unless x = 0, which is spacelike by convention).
Causal causal_character(const LorentzVector& a, double tol = 1e-10);

// Angle between x and y, selecting the applicable definition from the causal
// characters of the vectors and of their span (sign of the Gram determinant
// <x,x><y,y> - <x,y>^2). Rejects lightlike or zero inputs, two timelike
// inputs, genuinely degenerate spans, and cosine arguments out of range by
// more than the clamp band.
LorentzAngle angle_between(const LorentzVector& x, const LorentzVector& y);

// Coefficients in the pseudo-orthonormal basis {e_1..e_{n-2}, xi_{n-1}, xi_n}
// where xi_{n-1} = (e_n - e_{n-1})/sqrt(2), xi_n = (e_n + e_{n-1})/sqrt(2):
// both xi are null and <xi_{n-1}, xi_n> = -1.
struct PseudoBasisPoint {
    std::vector<double> coeffs; // 0-based; last two are the xi coefficients
};

LorentzVector pseudo_to_standard(const PseudoBasisPoint& p);
PseudoBasisPoint standard_to_pseudo(const LorentzVector& v);

// <p, q> evaluated directly on pseudo-basis coefficients:
// sum a_i b_i (i <= n-2) - a_{n-1} b_n - a_n b_{n-1}.
double pseudo_inner(const PseudoBasisPoint& p, const PseudoBasisPoint& q);

} // namespace loxo
