#include "optvol/quandle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "test_helpers.hpp"

using namespace optvol;
using namespace optvol::testing;

TEST_CASE("star axioms") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 10000; ++i) {
        const Parabolic a = rnd_parabolic(rng);
        const Parabolic b = rnd_parabolic(rng);
        const Parabolic c = rnd_parabolic(rng);
        CHECK(approx_equal_up_to_sign(star(a, a), a, 1e-10));
        CHECK(approx_equal(star_inv(star(a, b), b), a, 1e-10));
        // right self-distributivity up to sign
        const Parabolic lhs = star(star(a, b), c);
        const Parabolic rhs = star(star(a, c), star(b, c));
        CHECK(approx_equal_up_to_sign(lhs, rhs, 1e-9));
        // sign of the acting element never matters
        CHECK(approx_equal(star(a, negate(b)), star(a, b), 0.0));
    }
}

TEST_CASE("worked example products") {
    // (1,1) * (1,0) = (0,1), matching the second region color of the example
    const Parabolic s{cplx(1.0), cplx(1.0)};
    const Parabolic a{cplx(1.0), cplx(0.0)};
    const Parabolic r = star(s, a);
    CHECK(r.alpha == cplx(0.0));
    CHECK(r.beta == cplx(1.0));
    const Parabolic back = star_inv(r, a);
    CHECK(back.alpha == cplx(1.0));
    CHECK(back.beta == cplx(1.0));
}

TEST_CASE("hopf map") {
    CHECK(hopf(Parabolic{cplx(1.0), cplx(0.0)}).infinite);
    const cplx t = root_t(true);
    CHECK(!hopf(Parabolic{cplx(0.0), t}).infinite);
    CHECK(hopf(Parabolic{cplx(0.0), t}).value == cplx(0.0));
    const Parabolic a3{-t, 1.0 + t};
    CHECK(std::abs(hopf(a3).value - (-t / (1.0 + t))) < 1e-15);
}

TEST_CASE("determinant values and invariance") {
    const Parabolic p{cplx(2.0), cplx(1.0)};
    CHECK(det2(p, Parabolic{cplx(1.0), cplx(1.0)}) == cplx(1.0));
    const cplx t = root_t(true);
    const Parabolic s5{-2.0 * t - 1.0, t + 4.0};
    CHECK(std::abs(det2(p, s5) - (4.0 * t + 9.0)) < 1e-15);

    std::mt19937_64 rng(102);
    for (int i = 0; i < 10000; ++i) {
        const Parabolic x = rnd_parabolic(rng);
        const Parabolic y = rnd_parabolic(rng);
        const Parabolic z = rnd_parabolic(rng);
        CHECK(det2(x, x) == cplx(0.0));
        const cplx lhs = det2(star(x, z), star(y, z));
        const cplx rhs = det2(x, y);
        CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("mobius transformation and hopf compatibility") {
    // fixed point at its own hopf image
    std::mt19937_64 rng(103);
    for (int i = 0; i < 1000; ++i) {
        const Parabolic a = rnd_parabolic(rng);
        const ExtendedPoint fix = mobius_apply(a, hopf(a));
        CHECK(chordal_distance(fix, hopf(a)) < 1e-7);
        const Parabolic s = rnd_parabolic(rng);
        const ExtendedPoint lhs = hopf(star(s, a));
        const ExtendedPoint rhs = mobius_apply(a, hopf(s));
        CHECK(chordal_distance(lhs, rhs) < 1e-8);
        const ExtendedPoint inv = mobius_apply_inv(a, rhs);
        CHECK(chordal_distance(inv, hopf(s)) < 1e-8);
        const ExtendedPoint lhs_inv = hopf(star_inv(s, a));
        const ExtendedPoint rhs_inv = mobius_apply_inv(a, hopf(s));
        CHECK(chordal_distance(lhs_inv, rhs_inv) < 1e-8);
    }
    // (1,0) acts by z -> z - 1; its fixed point is infinity
    const Parabolic one_zero{cplx(1.0), cplx(0.0)};
    const ExtendedPoint img = mobius_apply(one_zero, ExtendedPoint::finite(cplx(1.0)));
    CHECK(!img.infinite);
    CHECK(img.value == cplx(0.0));
    CHECK(mobius_apply(one_zero, ExtendedPoint::infinity()).infinite);
}

TEST_CASE("cross ratio via determinants") {
    std::mt19937_64 rng(104);
    for (int i = 0; i < 2000; ++i) {
        const Parabolic v0 = rnd_parabolic(rng), v1 = rnd_parabolic(rng),
                        v2 = rnd_parabolic(rng), v3 = rnd_parabolic(rng);
        const cplx d02 = det2(v0, v2), d13 = det2(v1, v3);
        if (std::abs(d02) < 1e-3 || std::abs(d13) < 1e-3)
            continue;
        const cplx ratio = det2(v0, v3) * det2(v1, v2) / (d02 * d13);
        // cross-ratio of the four hopf images, [z0,z1;z2,z3] with the same
        // ordering convention
        const auto h = [&](const Parabolic& v) { return hopf(v).value; };
        if (hopf(v0).infinite || hopf(v1).infinite || hopf(v2).infinite || hopf(v3).infinite)
            continue;
        const cplx cr = (h(v0) - h(v3)) * (h(v1) - h(v2)) /
                        ((h(v0) - h(v2)) * (h(v1) - h(v3)));
        CHECK(std::abs(ratio - cr) < 1e-7 * (1.0 + std::abs(cr)));
    }
}

TEST_CASE("triangle-relation determinant identity brute force") {
    // det(p,sABC)det(p,sB) - det(p,sBC)det(p,sAB)
    //   = -(c2 p1 - c1 p2)^2 (a2 s1 - a1 s2)^2
    //   = det(p,s)det(p,sAC) - det(p,sC)det(p,sA)
    std::mt19937_64 rng(105);
    for (int i = 0; i < 10000; ++i) {
        const Parabolic A = rnd_parabolic(rng), B = rnd_parabolic(rng), C = rnd_parabolic(rng);
        const Parabolic p = rnd_parabolic(rng), s = rnd_parabolic(rng);
        const Parabolic sA = star(s, A), sB = star(s, B), sC = star(s, C);
        const Parabolic sAB = star(sA, B), sAC = star(sA, C), sBC = star(sB, C);
        const Parabolic sABC = star(sAB, C);
        const cplx lhs = det2(p, sABC) * det2(p, sB) - det2(p, sBC) * det2(p, sAB);
        const cplx rhs = det2(p, s) * det2(p, sAC) - det2(p, sC) * det2(p, sA);
        const cplx mid = -std::pow(C.beta * p.alpha - C.alpha * p.beta, 2) *
                         std::pow(A.beta * s.alpha - A.alpha * s.beta, 2);
        const double scale = 1.0 + std::max({std::abs(lhs), std::abs(rhs), std::abs(mid)});
        CHECK(std::abs(lhs - rhs) < 1e-10 * scale);
        CHECK(std::abs(lhs - mid) < 1e-10 * scale);
    }
}
