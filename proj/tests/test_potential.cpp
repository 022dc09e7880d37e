#include "optvol/potential.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "optvol/coloring.hpp"
#include "optvol/dilog.hpp"
#include "optvol/volume.hpp"
#include "test_helpers.hpp"

using namespace optvol;
using namespace optvol::testing;

namespace {

const double tol = 1e-9;
constexpr double pi = std::numbers::pi;

SolutionVector example_solution(const LinkDiagram& d, cplx t) {
    const auto colors = fig8_colors(t);
    const Fig8Regions r = fig8_regions(d);
    Config cfg;
    const ShadowColoring sc =
        select_generic(d, colors, {}, cfg, std::pair{r.w1, Parabolic{cplx(1.0), cplx(1.0)}},
                       Parabolic{cplx(2.0), cplx(1.0)});
    return construct_solution(d, sc, tol);
}

// random essential-ish values for property tests
SolutionVector random_values(const LinkDiagram& d, std::mt19937_64& rng) {
    for (;;) {
        std::map<int, cplx> vals;
        for (const auto& r : d.regions())
            vals[r.id] = rnd_cplx(rng, 2.0) + cplx(3.0, 0.0);
        SolutionVector w = make_solution(d, std::move(vals), 1e-3);
        if (w.essential)
            return w;
    }
}

// single positive crossing over four formal regions; not a planar diagram,
// only the formula matters
CrossingPotential lone_crossing(Sign sign) {
    CrossingPotential cp;
    cp.crossing = 1;
    cp.sign = sign;
    cp.region = {1, 2, 3, 4};
    return cp;
}

SolutionVector formal_values(cplx a, cplx b, cplx c, cplx d) {
    SolutionVector w;
    w.values = {{1, a}, {2, b}, {3, c}, {4, d}};
    return w;
}

} // namespace

TEST_CASE("potential records mirror the diagram") {
    LinkDiagram d = load_diagram("fig8.knot");
    const auto pot = build_potential(d);
    CHECK(pot.size() == 4);
    int neg = 0;
    for (const auto& cp : pot)
        if (cp.sign == Sign::negative)
            ++neg;
    CHECK(neg == 2);

    LinkDiagram kink = load_diagram("kink.knot");
    CHECK(build_potential(kink).size() == 1);

    // mirror flips every sign, keeps a and c, swaps b and d
    const auto mpot = build_potential(d.mirror());
    for (size_t i = 0; i < pot.size(); ++i) {
        CHECK(mpot[i].sign == flip(pot[i].sign));
        CHECK(mpot[i].at(RegionSlot::a) == pot[i].at(RegionSlot::a));
        CHECK(mpot[i].at(RegionSlot::c) == pot[i].at(RegionSlot::c));
        CHECK(mpot[i].at(RegionSlot::b) == pot[i].at(RegionSlot::d));
        CHECK(mpot[i].at(RegionSlot::d) == pot[i].at(RegionSlot::b));
    }
}

TEST_CASE("single-crossing potential evaluated two ways") {
    const auto cp = lone_crossing(Sign::positive);
    const auto w = formal_values(1.0, 2.0, 1.0, 2.0);
    const cplx direct = -li2(cplx(0.5)) - li2(cplx(0.5)) + li2(cplx(0.25)) + li2(cplx(2.0)) +
                        li2(cplx(2.0)) - cplx(pi * pi / 6.0) +
                        log_principal(cplx(2.0)) * log_principal(cplx(2.0));
    CHECK(std::abs(eval_W_crossing(cp, w) - direct) < 1e-13);
    CHECK(std::abs(eval_W({&cp, 1}, w) - direct) < 1e-13);
}

TEST_CASE("mirror negates the potential term by term") {
    LinkDiagram d = load_diagram("fig8.knot");
    const SolutionVector w = example_solution(d, root_t(true));
    const auto pot = build_potential(d);
    const auto mpot = build_potential(d.mirror());
    for (size_t i = 0; i < pot.size(); ++i)
        CHECK(std::abs(eval_W_crossing(pot[i], w) + eval_W_crossing(mpot[i], w)) < 1e-12);
    CHECK(std::abs(eval_W(pot, w) + eval_W(mpot, w)) < 1e-12);
}

TEST_CASE("potential is symmetric under swapping slots b and d") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 50; ++i) {
        const cplx a = rnd_cplx(rng) + cplx(3.0), b = rnd_cplx(rng) + cplx(3.0),
                   c = rnd_cplx(rng) + cplx(3.0), dd = rnd_cplx(rng) + cplx(3.0);
        for (Sign s : {Sign::positive, Sign::negative}) {
            const auto cp = lone_crossing(s);
            const cplx v1 = eval_W_crossing(cp, formal_values(a, b, c, dd));
            const cplx v2 = eval_W_crossing(cp, formal_values(a, dd, c, b));
            CHECK(std::abs(v1 - v2) < 1e-12 * (1.0 + std::abs(v1)));
        }
    }
}

TEST_CASE("corner weight closed form") {
    const auto cp = lone_crossing(Sign::positive);
    const auto w = formal_values(1.0, 2.0, 1.0, 2.0);
    CHECK(std::abs(corner_weight(cp, RegionSlot::a, w) - cplx(1.0 / 3.0)) < 1e-15);
    // negative crossing inverts the weight
    const auto cpn = lone_crossing(Sign::negative);
    CHECK(std::abs(corner_weight(cpn, RegionSlot::a, w) - cplx(3.0)) < 1e-15);
}

TEST_CASE("corner weights match exp of the crossing log-derivative") {
    // product over the four slots equals exp(sum of per-slot log terms),
    // including at symmetric values w_b = w_d
    std::mt19937_64 rng(32);
    LinkDiagram d = load_diagram("kink.knot");
    for (int i = 0; i < 200; ++i) {
        const cplx a = rnd_cplx(rng) + cplx(3.0), b = rnd_cplx(rng) + cplx(3.0),
                   c = rnd_cplx(rng) + cplx(3.0);
        for (Sign s : {Sign::positive, Sign::negative}) {
            const auto cp = lone_crossing(s);
            const auto w = i % 3 == 0 ? formal_values(a, b, c, b) // symmetric case
                                      : formal_values(a, b, c, rnd_cplx(rng) + cplx(3.0));
            cplx prod = 1.0;
            for (auto slot : {RegionSlot::a, RegionSlot::b, RegionSlot::c, RegionSlot::d})
                prod *= corner_weight(cp, slot, w);
            CHECK(std::isfinite(prod.real()));

            // direct finite difference of the crossing potential
            for (auto [slot, rid] :
                 {std::pair{RegionSlot::a, 1}, {RegionSlot::b, 2}, {RegionSlot::c, 3},
                  {RegionSlot::d, 4}}) {
                const double h = 1e-7;
                SolutionVector wp = w, wm = w;
                wp.values[rid] *= (1.0 + h);
                wm.values[rid] *= (1.0 - h);
                const cplx fd =
                    (eval_W_crossing(cp, wp) - eval_W_crossing(cp, wm)) / (2.0 * h);
                const cplx weight = corner_weight(cp, slot, w);
                CHECK(std::abs(std::exp(fd) - weight) < 1e-5 * (1.0 + std::abs(weight)));
            }
        }
    }
}

TEST_CASE("region equations hold at the example solution") {
    LinkDiagram d = load_diagram("fig8.knot");
    for (bool lower : {true, false}) {
        const SolutionVector w = example_solution(d, root_t(lower));
        const auto pot = build_potential(d);
        const VerifyReport rep = verify_solution(pot, d, w, tol);
        CHECK(rep.verified);
        CHECK(rep.max_residual < 1e-9);
        for (const auto& r : d.regions()) {
            const cplx ld = eval_log_derivative(pot, d, r.id, w);
            const double m = std::round(ld.imag() / (2.0 * pi));
            CHECK(std::abs(ld - cplx(0.0, 2.0 * pi * m)) < 1e-9);
        }
        // mirror diagram: same equations at the same values
        LinkDiagram md = d.mirror();
        const auto mpot = build_potential(md);
        const VerifyReport mrep = verify_solution(mpot, md, w, tol);
        CHECK(mrep.verified);
        for (const auto& [id, res] : rep.residuals)
            CHECK(std::abs(res - mrep.residuals.at(id)) < 1e-12);
    }
}

TEST_CASE("random values violate the equations") {
    LinkDiagram d = load_diagram("fig8.knot");
    std::mt19937_64 rng(33);
    const SolutionVector w = random_values(d, rng);
    const auto pot = build_potential(d);
    const VerifyReport rep = verify_solution(pot, d, w, tol);
    CHECK(!rep.verified);
    CHECK(rep.max_residual > 1e-3);
}

TEST_CASE("log-derivative matches finite differences of the full potential") {
    std::mt19937_64 rng(34);
    for (const char* name : {"fig8.knot", "trefoil.knot", "kink.knot"}) {
        LinkDiagram d = load_diagram(name);
        const auto pot = build_potential(d);
        for (int i = 0; i < 40; ++i) {
            const SolutionVector w = random_values(d, rng);
            for (const auto& r : d.regions()) {
                const cplx ld = eval_log_derivative(pot, d, r.id, w);
                const double h = 1e-7;
                SolutionVector wp = w, wm = w;
                wp.values[r.id] *= (1.0 + h);
                wm.values[r.id] *= (1.0 - h);
                const cplx fd = (eval_W(pot, wp) - eval_W(pot, wm)) / (2.0 * h);
                CHECK(std::abs(fd - ld) < 1e-5 * (1.0 + std::abs(ld)));
                // multiplicative route agrees with the exponential route
                const cplx prod = region_equation(pot, d, r.id, w);
                CHECK(std::abs(prod - std::exp(ld)) < 1e-11 * (1.0 + std::abs(prod)));
            }
        }
    }
}

TEST_CASE("mirror negates log-derivatives") {
    LinkDiagram d = load_diagram("fig8.knot");
    LinkDiagram md = d.mirror();
    const auto pot = build_potential(d);
    const auto mpot = build_potential(md);
    std::mt19937_64 rng(35);
    const SolutionVector w = random_values(d, rng);
    for (const auto& r : d.regions()) {
        const cplx ld = eval_log_derivative(pot, d, r.id, w);
        const cplx mld = eval_log_derivative(mpot, md, r.id, w);
        CHECK(std::abs(ld + mld) < 1e-11 * (1.0 + std::abs(ld)));
    }
}

// --- complex volume ---------------------------------------------------------

namespace {

// Gauss-Legendre nodes via Newton iteration on P_n
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(size_t(n), 0.0);
    w.assign(size_t(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16)
                break;
        }
        x[size_t(i)] = t;
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (t * p1 - p0) / (t * t - 1.0);
        w[size_t(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

// Cl2(theta) = -int_0^theta log|2 sin(t/2)| dt, with the log singularity at 0
// peeled off analytically
double clausen_by_quadrature(double theta) {
    std::vector<double> x, w;
    gauss_legendre(48, x, w);
    double smooth = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double t = 0.5 * theta * (x[i] + 1.0);
        smooth += 0.5 * theta * w[i] * std::log(2.0 * std::sin(t / 2.0) / t);
    }
    return -(theta * std::log(theta) - theta + smooth);
}

} // namespace

TEST_CASE("W0 reproduces the figure-eight complex volume") {
    const double vol_fig8 = 2.0 * clausen_by_quadrature(pi / 3.0);
    CHECK(std::abs(vol_fig8 - 2.029883212819307) < 1e-12);

    LinkDiagram d = load_diagram("fig8.knot");
    const auto pot = build_potential(d);
    Config cfg;
    for (bool lower : {true, false}) {
        const SolutionVector w = example_solution(d, root_t(lower));
        const ComplexVolume cv = eval_W0(pot, d, w, cfg);
        CHECK(cv.verified);
        const double expect = lower ? vol_fig8 : -vol_fig8;
        CHECK(std::abs(cv.vol - expect) < 1e-9);
        CHECK(std::abs(cv.cs) < 1e-9);
        CHECK(std::abs(cv.W0 - cplx(-cv.cs, cv.vol)) < 1e-6); // W0 = i(vol + i cs) mod pi^2
    }
    // unverified input is rejected
    std::mt19937_64 rng(36);
    const SolutionVector bad = random_values(d, rng);
    CHECK_THROWS_AS(eval_W0(pot, d, bad, cfg), numeric_error);
}

TEST_CASE("two generic colorings give the same complex volume") {
    LinkDiagram d = load_diagram("fig8.knot");
    const auto pot = build_potential(d);
    const auto colors = fig8_colors(root_t(true));
    Config cfg;
    cfg.seed = 5;
    const ShadowColoring sc1 = select_generic(d, colors, {}, cfg);
    cfg.seed = 6;
    const ShadowColoring sc2 = select_generic(d, colors, {}, cfg);
    const SolutionVector w1 = construct_solution(d, sc1, tol);
    const SolutionVector w2 = construct_solution(d, sc2, tol);
    bool differ = false;
    for (const auto& [id, v] : w1.values)
        if (std::abs(v - w2.at(id)) > 1e-6)
            differ = true;
    CHECK(differ);
    const ComplexVolume cv1 = eval_W0(pot, d, w1, cfg);
    const ComplexVolume cv2 = eval_W0(pot, d, w2, cfg);
    CHECK(std::abs(cv1.vol - cv2.vol) < 1e-8);
    const auto cmp = compare_mod_pi2(cv1.W0, cv2.W0, 1e-8);
    CHECK(cmp.equal);
}

TEST_CASE("mod pi^2 comparison") {
    const cplx x(1.25, -0.5);
    CHECK(compare_mod_pi2(x, x, 1e-12).equal);
    CHECK(compare_mod_pi2(x + cplx(pi * pi, 0.0), x, 1e-12).equal);
    CHECK(compare_mod_pi2(x - cplx(3.0 * pi * pi, 0.0), x, 1e-12).equal);
    CHECK(!compare_mod_pi2(x + cplx(0.5, 0.0), x, 1e-12).equal);
    CHECK(!compare_mod_pi2(x + cplx(0.0, pi * pi), x, 1e-12).equal);
}

TEST_CASE("corner weights are orientation independent") {
    // reversing one strand flips the sign and rotates the slot letters; the
    // weight at a fixed geometric corner is unchanged
    std::mt19937_64 rng(37);
    for (int i = 0; i < 200; ++i) {
        const cplx a = rnd_cplx(rng) + cplx(4.0), b = rnd_cplx(rng) + cplx(4.0),
                   c = rnd_cplx(rng) + cplx(4.0), d = rnd_cplx(rng) + cplx(4.0);
        const auto w = formal_values(a, b, c, d);
        const auto cp_pos = lone_crossing(Sign::positive);
        // reversed under-strand: letters (a,b,c,d) -> geometric (d,a,b,c)
        CrossingPotential cp_under = lone_crossing(Sign::negative);
        cp_under.region = {4, 1, 2, 3};
        // reversed over-strand: letters (a,b,c,d) -> geometric (b,c,d,a)
        CrossingPotential cp_over = lone_crossing(Sign::negative);
        cp_over.region = {2, 3, 4, 1};
        const std::pair<RegionSlot, RegionSlot> under_map[4] = {
            {RegionSlot::a, RegionSlot::b},
            {RegionSlot::b, RegionSlot::c},
            {RegionSlot::c, RegionSlot::d},
            {RegionSlot::d, RegionSlot::a}};
        const std::pair<RegionSlot, RegionSlot> over_map[4] = {
            {RegionSlot::a, RegionSlot::d},
            {RegionSlot::b, RegionSlot::a},
            {RegionSlot::c, RegionSlot::b},
            {RegionSlot::d, RegionSlot::c}};
        for (const auto& [geom, letter] : under_map) {
            const cplx w1 = corner_weight(cp_pos, geom, w);
            const cplx w2 = corner_weight(cp_under, letter, w);
            CHECK(std::abs(w1 - w2) < 1e-13 * (1.0 + std::abs(w1)));
        }
        for (const auto& [geom, letter] : over_map) {
            const cplx w1 = corner_weight(cp_pos, geom, w);
            const cplx w2 = corner_weight(cp_over, letter, w);
            CHECK(std::abs(w1 - w2) < 1e-13 * (1.0 + std::abs(w1)));
        }
    }
}

TEST_CASE("chern-simons normalization window") {
    CHECK(normalize_cs(0.0) == 0.0);
    CHECK(normalize_cs(0.75 * pi * pi) == doctest::Approx(-0.25 * pi * pi));
    CHECK(normalize_cs(-0.75 * pi * pi) == doctest::Approx(0.25 * pi * pi));
    CHECK(normalize_cs(0.5 * pi * pi) == doctest::Approx(0.5 * pi * pi));
    CHECK(normalize_cs(3.2 * pi * pi) == doctest::Approx(0.2 * pi * pi).epsilon(1e-9));
}
