#include "optvol/dilog.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_helpers.hpp"

using namespace optvol;
using optvol::testing::rnd_cplx;

namespace {
constexpr double pi = std::numbers::pi;

// independent slow evaluation: alternating zeta series for Li2(-1)
double li2_minus_one_series() {
    double sum = 0.0;
    const int n = 20000000;
    for (int k = n; k >= 1; --k)
        sum += (k % 2 ? -1.0 : 1.0) / (double(k) * double(k));
    return sum;
}

// independent series sum with long doubles for |z| < 1
cplx li2_reference(cplx z) {
    std::complex<long double> zz(z.real(), z.imag());
    std::complex<long double> term = zz, sum = zz;
    for (int n = 2; n < 400; ++n) {
        term *= zz;
        sum += term / (long double)(n * n);
    }
    return {double(sum.real()), double(sum.imag())};
}
} // namespace

TEST_CASE("principal log branch") {
    CHECK(std::abs(log_principal(cplx(1.0, 0.0))) == 0.0);
    const cplx lm1 = log_principal(cplx(-1.0, 0.0));
    CHECK(lm1.real() == doctest::Approx(0.0));
    CHECK(lm1.imag() == doctest::Approx(pi));
    const cplx lei = log_principal(cplx(0.0, std::exp(1.0)));
    CHECK(lei.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lei.imag() == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK_THROWS_AS(log_principal(cplx(0.0, 0.0)), numeric_error);
}

TEST_CASE("dilogarithm special values") {
    CHECK(li2(cplx(0.0, 0.0)) == cplx(0.0, 0.0));
    CHECK(std::abs(li2(cplx(1.0, 0.0)) - cplx(pi * pi / 6.0, 0.0)) < 1e-15);
    CHECK(std::abs(li2(cplx(-1.0, 0.0)).real() - li2_minus_one_series()) < 1e-7);
    CHECK(std::abs(li2(cplx(-1.0, 0.0)) - cplx(-pi * pi / 12.0, 0.0)) < 1e-14);
}

TEST_CASE("dilogarithm agrees with the direct series") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        cplx z = rnd_cplx(rng, 0.9);
        if (std::abs(z) > 0.95)
            continue;
        const cplx ref = li2_reference(z);
        CHECK(std::abs(li2(z) - ref) < 1e-13 * (1.0 + std::abs(ref)));
    }
}

TEST_CASE("inversion identity") {
    std::mt19937_64 rng(11);
    int tested = 0;
    while (tested < 1000) {
        cplx z = rnd_cplx(rng, 5.0);
        if (std::abs(z) < 0.05 || std::abs(z.imag()) < 1e-3)
            continue; // stay off the cut and the origin
        ++tested;
        const cplx lhs = li2(z) + li2(1.0 / z) + cplx(pi * pi / 6.0, 0.0) +
                         0.5 * log_principal(-z) * log_principal(-z);
        CHECK(std::abs(lhs) < 1e-11);
    }
}

TEST_CASE("reflection identity") {
    std::mt19937_64 rng(13);
    int tested = 0;
    while (tested < 1000) {
        cplx z = rnd_cplx(rng, 1.0);
        if (std::abs(z) < 0.05 || std::abs(z) > 0.98 || std::abs(z.imag()) < 1e-3)
            continue;
        ++tested;
        const cplx lhs = li2(z) + li2(1.0 - z) - cplx(pi * pi / 6.0, 0.0) +
                         log_principal(z) * log_principal(1.0 - z);
        CHECK(std::abs(lhs) < 1e-11);
    }
}

TEST_CASE("derivative matches -log(1-z)/z") {
    std::mt19937_64 rng(17);
    const double h = 1e-6;
    int tested = 0;
    while (tested < 300) {
        cplx z = rnd_cplx(rng, 3.0);
        if (std::abs(z) < 0.1 || std::abs(z.imag()) < 0.05)
            continue;
        ++tested;
        const cplx fd = (li2(z + h) - li2(z - h)) / (2.0 * h);
        const cplx exact = -log_principal(1.0 - z) / z;
        CHECK(std::abs(fd - exact) < 1e-6 * (1.0 + std::abs(exact)));
    }
}
