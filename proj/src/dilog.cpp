#include "optvol/dilog.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace optvol {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double pi2_over_6 = pi * pi / 6.0;

// Put exact-zero imaginary parts on the upper side of the cuts so that
// log(-1) = +i*pi and Li2(x>1) take consistent values.
cplx upper_side(cplx z) {
    if (z.imag() == 0.0)
        return {z.real(), 0.0};
    return z;
}

// Power series sum z^n/n^2, good for |z| <= 1/4.
cplx li2_series(cplx z) {
    cplx term = z;
    cplx sum = z;
    for (int n = 2; n < 60; ++n) {
        term *= z;
        cplx add = term / double(n * n);
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum)))
            break;
    }
    return sum;
}

// Expansion in u = -log(1-z):  Li2(z) = u - u^2/4 + sum B_{2k} u^{2k+1}/(2k+1)!
// Converges for |u| < 2*pi; the argument reductions keep |u| <~ 1.8.
cplx li2_log_series(cplx z) {
    static const std::array<double, 16> b2k = {
        1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
        -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
        -174611.0 / 330.0, 854513.0 / 138.0, -236364091.0 / 2730.0,
        8553103.0 / 6.0, -23749461029.0 / 870.0, 8615841276005.0 / 14322.0,
        -7709321041217.0 / 510.0};
    static const std::array<double, 16> coeff = [] {
        std::array<double, 16> c{};
        long double fact = 6.0L; // 3!
        for (int k = 0; k < 16; ++k) {
            c[k] = double((long double)b2k[k] / fact);
            fact *= (long double)(2 * k + 4) * (long double)(2 * k + 5);
        }
        return c;
    }();

    cplx u = -log_principal(1.0 - z);
    cplx u2 = u * u;
    cplx sum = u - u2 / 4.0;
    cplx upow = u * u2; // u^3
    for (int k = 0; k < 16; ++k) {
        cplx add = coeff[k] * upow;
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum)))
            break;
        upow *= u2;
    }
    return sum;
}

} // namespace

cplx log_principal(cplx z) {
    if (z == cplx(0.0, 0.0))
        throw numeric_error("log_principal: argument is zero");
    return std::log(upper_side(z));
}

cplx li2(cplx z) {
    z = upper_side(z);
    if (z == cplx(0.0, 0.0))
        return {0.0, 0.0};
    if (z == cplx(1.0, 0.0))
        return {pi2_over_6, 0.0};

    // Inversion: Li2(z) = -Li2(1/z) - pi^2/6 - log^2(-z)/2 for |z| > 1.
    if (std::abs(z) > 1.0) {
        cplx lo = log_principal(-z);
        return -li2(1.0 / z) - pi2_over_6 - 0.5 * lo * lo;
    }
    if (std::abs(z) <= 0.25)
        return li2_series(z);
    // Reflection: Li2(z) = pi^2/6 - log(z)log(1-z) - Li2(1-z) for Re z > 1/2.
    if (z.real() > 0.5)
        return pi2_over_6 - log_principal(z) * log_principal(1.0 - z) - li2_log_series(1.0 - z);
    return li2_log_series(z);
}

} // namespace optvol
