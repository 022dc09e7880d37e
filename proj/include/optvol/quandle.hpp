#ifndef OPTVOL_QUANDLE_HPP
#define OPTVOL_QUANDLE_HPP

#include "optvol/config.hpp"

namespace optvol {

/// Point of the parabolic conjugation quandle, stored as a fixed
/// representative (alpha, beta) in C^2 \ {0}. The corresponding PSL(2,C)
/// element is [[1+ab, b^2], [-a^2, 1-ab]].
struct Parabolic {
    cplx alpha{0.0, 0.0};
    cplx beta{0.0, 0.0};

    bool operator==(const Parabolic&) const = default;
};

/// Point of CP^1: a complex number or the point at infinity.
struct ExtendedPoint {
    cplx value{0.0, 0.0};
    bool infinite = false;

    static ExtendedPoint infinity() { return {cplx{}, true}; }
    static ExtendedPoint finite(cplx v) { return {v, false}; }
};

Parabolic negate(const Parabolic& x);

/// Quandle operation: x * y = x . M(y) (row vector times matrix).
Parabolic star(const Parabolic& x, const Parabolic& y);

/// Inverse operation: star(star_inv(x, y), y) == x exactly.
Parabolic star_inv(const Parabolic& x, const Parabolic& y);

/// Hopf map (alpha, beta) -> alpha/beta in CP^1.
ExtendedPoint hopf(const Parabolic& x);

/// det(x, y) = alpha_x beta_y - beta_x alpha_y.
cplx det2(const Parabolic& x, const Parabolic& y);

/// Mobius transformation of y applied to z:
/// z -> ((1+ab) z - a^2) / (b^2 z + (1-ab)).
ExtendedPoint mobius_apply(const Parabolic& y, const ExtendedPoint& z);
ExtendedPoint mobius_apply_inv(const Parabolic& y, const ExtendedPoint& z);

/// Chordal metric on CP^1; extends |z - w| to infinity, range [0, 2].
double chordal_distance(const ExtendedPoint& a, const ExtendedPoint& b);

bool approx_equal(const Parabolic& x, const Parabolic& y, double tol);
bool approx_equal_up_to_sign(const Parabolic& x, const Parabolic& y, double tol);

double norm1(const Parabolic& x);

} // namespace optvol

#endif
