#include "optvol/quandle.hpp"

#include <cmath>

namespace optvol {

Parabolic negate(const Parabolic& x) { return {-x.alpha, -x.beta}; }

Parabolic star(const Parabolic& x, const Parabolic& y) {
    // the matrix of y acts on row vectors as x -> x + det(x, y) y
    const cplx t = det2(x, y);
    return {x.alpha + t * y.alpha, x.beta + t * y.beta};
}

Parabolic star_inv(const Parabolic& x, const Parabolic& y) {
    // exact inverse of the action above
    const cplx t = det2(x, y);
    return {x.alpha - t * y.alpha, x.beta - t * y.beta};
}

ExtendedPoint hopf(const Parabolic& x) {
    if (x.beta == cplx(0.0, 0.0))
        return ExtendedPoint::infinity();
    return ExtendedPoint::finite(x.alpha / x.beta);
}

cplx det2(const Parabolic& x, const Parabolic& y) {
    return x.alpha * y.beta - x.beta * y.alpha;
}

ExtendedPoint mobius_apply(const Parabolic& y, const ExtendedPoint& z) {
    const cplx ab = y.alpha * y.beta;
    const cplx a2 = y.alpha * y.alpha;
    const cplx b2 = y.beta * y.beta;
    if (z.infinite) {
        if (b2 == cplx(0.0, 0.0))
            return ExtendedPoint::infinity();
        return ExtendedPoint::finite((1.0 + ab) / b2);
    }
    const cplx den = b2 * z.value + (1.0 - ab);
    const cplx num = (1.0 + ab) * z.value - a2;
    if (den == cplx(0.0, 0.0))
        return ExtendedPoint::infinity();
    return ExtendedPoint::finite(num / den);
}

ExtendedPoint mobius_apply_inv(const Parabolic& y, const ExtendedPoint& z) {
    // z -> ((1-ab) z + a^2) / (-b^2 z + (1+ab)), the exact inverse map
    const cplx ab = y.alpha * y.beta;
    const cplx a2 = y.alpha * y.alpha;
    const cplx b2 = y.beta * y.beta;
    if (z.infinite) {
        if (b2 == cplx(0.0, 0.0))
            return ExtendedPoint::infinity();
        return ExtendedPoint::finite((1.0 - ab) / -b2);
    }
    const cplx den = -b2 * z.value + (1.0 + ab);
    const cplx num = (1.0 - ab) * z.value + a2;
    if (den == cplx(0.0, 0.0))
        return ExtendedPoint::infinity();
    return ExtendedPoint::finite(num / den);
}

double chordal_distance(const ExtendedPoint& a, const ExtendedPoint& b) {
    if (a.infinite && b.infinite)
        return 0.0;
    if (a.infinite || b.infinite) {
        const cplx v = a.infinite ? b.value : a.value;
        return 2.0 / std::sqrt(1.0 + std::norm(v));
    }
    return 2.0 * std::abs(a.value - b.value) /
           std::sqrt((1.0 + std::norm(a.value)) * (1.0 + std::norm(b.value)));
}

double norm1(const Parabolic& x) { return std::abs(x.alpha) + std::abs(x.beta); }

bool approx_equal(const Parabolic& x, const Parabolic& y, double tol) {
    const double scale = 1.0 + std::max(norm1(x), norm1(y));
    return std::abs(x.alpha - y.alpha) + std::abs(x.beta - y.beta) <= tol * scale;
}

bool approx_equal_up_to_sign(const Parabolic& x, const Parabolic& y, double tol) {
    return approx_equal(x, y, tol) || approx_equal(x, negate(y), tol);
}

} // namespace optvol
