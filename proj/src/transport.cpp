#include "optvol/transport.hpp"

#include "optvol/potential.hpp"

#include <cmath>

namespace optvol {

cplx transport_r1(cplx wa, cplx wb) { return 2.0 * wb - wa; }

cplx transport_r3(cplx wa, cplx wb, cplx wc, cplx wd, cplx we, cplx wf, cplx wg) {
    if (wa == cplx{})
        throw numeric_error("triangle relation: zero divisor");
    return (wd * wg - wc * we + wb * wf) / wa;
}

std::pair<cplx, cplx> transport_twist_forward(cplx wa, cplx wb, cplx wc, cplx wd, cplx we) {
    if (wd == cplx{})
        throw numeric_error("twist relation: zero divisor");
    const cplx wf = 2.0 * wa - wb;
    const cplx wg = (wf * wb - wa * wa + wc * we) / wd;
    return {wf, wg};
}

cplx transport_twist_reverse(cplx wa, cplx wf) { return 2.0 * wa - wf; }

namespace {

// degree <= 2 polynomial in the unknown bigon value
struct Poly {
    std::array<cplx, 3> c{cplx{0.0}, cplx{0.0}, cplx{0.0}};
    int deg = 0;
};

Poly poly_const(cplx v) {
    Poly p;
    p.c[0] = v;
    return p;
}

Poly poly_x() {
    Poly p;
    p.deg = 1;
    p.c[1] = 1.0;
    return p;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.deg + b.deg > 2)
        throw numeric_error("second-move site is too degenerate (equation degree > 2)");
    Poly r;
    r.deg = a.deg + b.deg;
    for (int i = 0; i <= a.deg; ++i)
        for (int j = 0; j <= b.deg; ++j)
            r.c[size_t(i + j)] += a.c[size_t(i)] * b.c[size_t(j)];
    return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r = a;
    for (int i = 0; i < 3; ++i)
        r.c[size_t(i)] -= b.c[size_t(i)];
    r.deg = std::max(a.deg, b.deg);
    while (r.deg > 0 && r.c[size_t(r.deg)] == cplx{})
        --r.deg;
    return r;
}

cplx poly_eval(const Poly& p, cplx x) { return p.c[0] + x * (p.c[1] + x * p.c[2]); }

std::vector<cplx> poly_roots(const Poly& p) {
    const cplx c0 = p.c[0], c1 = p.c[1], c2 = p.c[2];
    if (p.deg >= 2 && c2 != cplx{}) {
        const cplx disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
        return {(-c1 + disc) / (2.0 * c2), (-c1 - disc) / (2.0 * c2)};
    }
    if (c1 == cplx{})
        throw numeric_error("second-move equation is degenerate");
    return {-c0 / c1};
}

// corner weight as a rational function (num, den) of the unknown region value
std::pair<Poly, Poly> weight_linfrac(const CrossingPotential& cp, RegionSlot slot, int unknown,
                                     const std::map<int, cplx>& values) {
    std::array<Poly, 4> v;
    for (int i = 0; i < 4; ++i) {
        const int rid = cp.region[size_t(i)];
        v[size_t(i)] = rid == unknown ? poly_x() : poly_const(values.at(rid));
    }
    const Poly &a = v[0], &b = v[1], &c = v[2], &d = v[3];
    Poly num, den;
    switch (slot) {
    case RegionSlot::a:
        num = poly_mul(poly_sub(b, a), poly_sub(d, a));
        den = poly_sub(poly_mul(b, d), poly_mul(c, a));
        break;
    case RegionSlot::c:
        num = poly_mul(poly_sub(b, c), poly_sub(d, c));
        den = poly_sub(poly_mul(b, d), poly_mul(a, c));
        break;
    case RegionSlot::b:
        num = poly_sub(poly_mul(a, c), poly_mul(d, b));
        den = poly_mul(poly_sub(a, b), poly_sub(c, b));
        break;
    case RegionSlot::d:
        num = poly_sub(poly_mul(a, c), poly_mul(b, d));
        den = poly_mul(poly_sub(a, d), poly_sub(c, d));
        break;
    }
    if (cp.sign == Sign::negative)
        std::swap(num, den);
    return {num, den};
}

double residual_of_region(const LinkDiagram& d, std::span<const CrossingPotential> pot,
                          int region, const SolutionVector& w) {
    return std::abs(region_equation(pot, d, region, w) - 1.0);
}

} // namespace

cplx solve_r2_bigon(const LinkDiagram& after, const std::map<int, cplx>& values, int bigon,
                    int eq_region, double tol) {
    const auto pot = build_potential(after);
    Poly num = poly_const(1.0), den = poly_const(1.0);
    for (const auto& cr : after.region(eq_region).corners) {
        const Crossing& c = after.crossing(cr.crossing);
        const RegionSlot slot = c.slot_of_corner(cr.corner);
        const CrossingPotential* cp = nullptr;
        for (const auto& p : pot)
            if (p.crossing == cr.crossing)
                cp = &p;
        const auto [n, dd] = weight_linfrac(*cp, slot, bigon, values);
        num = poly_mul(num, n);
        den = poly_mul(den, dd);
    }
    const Poly eq = poly_sub(num, den); // product of weights = 1
    const auto roots = poly_roots(eq);
    if (roots.size() == 1)
        return roots[0];
    // a quadratic can only appear at degenerate sites; keep the root that
    // actually solves the equation best
    cplx best = roots[0];
    double best_res = 1e300;
    for (const cplx r : roots) {
        const double res = std::abs(poly_eval(num, r) / poly_eval(den, r) - 1.0);
        if (res < best_res) {
            best_res = res;
            best = r;
        }
    }
    if (best_res > tol * 10.0)
        throw numeric_error("second-move equation has no usable root");
    return best;
}

SolutionVector transport_values(const LinkDiagram& after, const MoveResult& res,
                                const SolutionVector& w, const Config& cfg) {
    std::map<int, cplx> values = w.values;
    auto scale = [&](cplx a, cplx b) { return std::max({1.0, std::abs(a), std::abs(b)}); };

    for (const auto& hint : res.hints) {
        if (const auto* h = std::get_if<R1Hints>(&hint)) {
            values[h->monogon] = transport_r1(values.at(h->other), values.at(h->doubled));
        } else if (const auto* h = std::get_if<R1InvHints>(&hint)) {
            const cplx expect = transport_r1(values.at(h->other), values.at(h->doubled));
            if (std::abs(values.at(h->monogon) - expect) >
                10.0 * cfg.tolerance * scale(values.at(h->monogon), expect))
                throw numeric_error("kink value does not satisfy 2b - a; cannot undo");
            values.erase(h->monogon);
        } else if (const auto* h = std::get_if<R2Hints>(&hint)) {
            values[h->piece_copy] = values.at(h->piece_kept);
            const cplx we = solve_r2_bigon(after, values, h->bigon, h->piece_kept,
                                           cfg.tolerance);
            values[h->bigon] = we;
            // the split copy's equation must pin the same value
            SolutionVector tmp;
            tmp.values = values;
            const auto pot = build_potential(after);
            const double cross = residual_of_region(after, pot, h->piece_copy, tmp);
            if (cross > 10.0 * cfg.tolerance)
                throw numeric_error("second-move cross-check failed (residual " +
                                    std::to_string(cross) + ")");
        } else if (const auto* h = std::get_if<R2InvHints>(&hint)) {
            const cplx vk = values.at(h->kept), vm = values.at(h->merged);
            if (std::abs(vk - vm) > 10.0 * cfg.tolerance * scale(vk, vm))
                throw numeric_error("split regions carry different values; cannot undo "
                                    "the second move");
            values.erase(h->merged);
            values.erase(h->bigon);
        } else if (const auto* h = std::get_if<R3Hints>(&hint)) {
            values[h->new_triangle] =
                transport_r3(values.at(h->e_mid), values.at(h->o_1), values.at(h->e_top),
                             values.at(h->o_star), values.at(h->e_bot), values.at(h->o_2),
                             values.at(h->old_triangle));
            values.erase(h->old_triangle);
        }
    }
    return make_solution(after, std::move(values), cfg.tolerance);
}

TransportOutcome transport_sequence(const LinkDiagram& d, const SolutionVector& w,
                                    std::span<const MoveDescriptor> plan, const Config& cfg) {
    TransportOutcome out;
    out.diagram = d;
    out.solution = w;
    int step_no = 0;
    for (const auto& m : plan) {
        ++step_no;
        MoveResult res = [&] {
            try {
                return apply_move(out.diagram, m);
            } catch (const validation_error& e) {
                throw validation_error("step " + std::to_string(step_no) + " (" +
                                       format_move(m) + "): " + e.what());
            }
        }();
        SolutionVector next = transport_values(res.diagram, res, out.solution, cfg);

        TransportStep step;
        step.move = m;
        step.corr = res.corr;
        for (const auto& [id, role] : res.corr.created)
            if (next.values.count(id))
                step.created_values[id] = next.values.at(id);

        const auto pot = build_potential(res.diagram);
        const VerifyReport rep = verify_solution(pot, res.diagram, next, 10.0 * cfg.tolerance);
        step.max_residual = rep.max_residual;
        step.essential = next.essential;
        if (!rep.verified)
            throw numeric_error("step " + std::to_string(step_no) + " (" + format_move(m) +
                                "): residual blow-up, max residual " +
                                std::to_string(rep.max_residual));
        if (!next.essential)
            throw numeric_error("step " + std::to_string(step_no) + " (" + format_move(m) +
                                "): essentialness lost; reselect the region coloring");
        Config vcfg = cfg;
        vcfg.tolerance = 10.0 * cfg.tolerance;
        step.volume = eval_W0(pot, res.diagram, next, vcfg);

        out.diagram = std::move(res.diagram);
        out.solution = std::move(next);
        out.steps.push_back(std::move(step));
    }
    return out;
}

} // namespace optvol
