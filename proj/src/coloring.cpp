#include "optvol/coloring.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <set>
#include <sstream>

namespace optvol {

namespace {

Parabolic arc_color(const ArcColors& colors, int arc) {
    auto it = colors.find(arc);
    if (it == colors.end())
        throw validation_error("missing color for arc " + std::to_string(arc));
    return it->second;
}

} // namespace

ColoringReport validate_arc_coloring(const LinkDiagram& d, const ArcColors& colors, double tol) {
    ColoringReport rep;
    for (const auto& c : d.crossings()) {
        const Parabolic over_in = arc_color(colors, c.arc[size_t(c.over_in_slot())]);
        const Parabolic over_out = arc_color(colors, c.arc[size_t(c.over_out_slot())]);
        const Parabolic under_in = arc_color(colors, c.arc[size_t(c.under_in_slot())]);
        const Parabolic under_out = arc_color(colors, c.arc[size_t(c.under_out_slot())]);

        if (!approx_equal(over_in, over_out, tol)) {
            if (approx_equal_up_to_sign(over_in, over_out, tol))
                rep.all_exact = false;
            else {
                rep.ok = false;
                rep.failures.push_back("crossing " + std::to_string(c.id) +
                                       ": over-strand color changes");
            }
        }
        const Parabolic expect = c.sign == Sign::positive ? star(under_in, over_in)
                                                          : star_inv(under_in, over_in);
        if (!approx_equal(under_out, expect, tol)) {
            if (approx_equal_up_to_sign(under_out, expect, tol))
                rep.all_exact = false;
            else {
                rep.ok = false;
                rep.failures.push_back("crossing " + std::to_string(c.id) +
                                       ": under-strand relation fails");
            }
        }
    }
    return rep;
}

std::map<int, Parabolic> propagate_regions(const LinkDiagram& d, const ArcColors& colors,
                                           int seed_region, const Parabolic& seed, double tol) {
    std::map<int, Parabolic> out;
    out[seed_region] = seed;
    std::queue<int> q;
    q.push(seed_region);
    while (!q.empty()) {
        const int rid = q.front();
        q.pop();
        for (const auto& a : d.arcs()) {
            const Parabolic x = arc_color(colors, a.id);
            int other = -1;
            Parabolic value;
            if (a.right_region == rid && !out.count(a.left_region)) {
                other = a.left_region;
                value = star(out[rid], x);
            } else if (a.left_region == rid && !out.count(a.right_region)) {
                other = a.right_region;
                value = star_inv(out[rid], x);
            }
            if (other != -1) {
                out[other] = value;
                q.push(other);
            }
        }
    }
    if (out.size() != d.regions().size())
        throw validation_error("region propagation did not reach every region");
    for (const auto& a : d.arcs()) {
        const Parabolic expect = star(out.at(a.right_region), arc_color(colors, a.id));
        if (!approx_equal(out.at(a.left_region), expect, tol))
            throw numeric_error("region colors are inconsistent across arc " +
                                std::to_string(a.id));
    }
    return out;
}

bool region_coloring_generic(const LinkDiagram& d, const ArcColors& colors,
                             const std::map<int, Parabolic>& regions, double tol) {
    for (const auto& a : d.arcs()) {
        const ExtendedPoint ha = hopf(arc_color(colors, a.id));
        const ExtendedPoint hl = hopf(regions.at(a.left_region));
        const ExtendedPoint hr = hopf(regions.at(a.right_region));
        if (chordal_distance(ha, hl) <= tol || chordal_distance(ha, hr) <= tol ||
            chordal_distance(hl, hr) <= tol)
            return false;
    }
    return true;
}

bool p_admissible(const Parabolic& p, const ArcColors& colors,
                  const std::map<int, Parabolic>& regions, double tol) {
    const ExtendedPoint hp = hopf(p);
    for (const auto& [id, c] : colors)
        if (chordal_distance(hp, hopf(c)) <= tol)
            return false;
    for (const auto& [id, s] : regions)
        if (chordal_distance(hp, hopf(s)) <= tol)
            return false;
    return true;
}

SolutionVector construct_solution(const LinkDiagram& d, const ShadowColoring& sc, double tol) {
    std::map<int, cplx> values;
    for (const auto& r : d.regions())
        values[r.id] = det2(sc.p, sc.regions.at(r.id));
    return make_solution(d, std::move(values), tol);
}

namespace {

struct PlanStage {
    LinkDiagram diagram;
    ArcColors colors;
};

// Diagrams and arc colors reached by the plan; region colors follow later
// from whichever seed is chosen.
std::vector<PlanStage> run_plan_diagrams(const LinkDiagram& d, const ArcColors& colors,
                                         std::span<const MoveDescriptor> plan) {
    std::vector<PlanStage> stages;
    stages.push_back({d, colors});
    for (const auto& m : plan) {
        ArcColors next;
        MoveResult res = apply_move(stages.back().diagram, m, &stages.back().colors, &next);
        stages.push_back({std::move(res.diagram), std::move(next)});
    }
    return stages;
}

// Carry a region color forward through a stage list by re-propagating from a
// surviving region at every step.
bool stages_generic_and_essential(const std::vector<PlanStage>& stages, int seed_region,
                                  const Parabolic& seed, const Parabolic& p, double tol) {
    int anchor = seed_region;
    Parabolic anchor_color = seed;
    for (size_t i = 0; i < stages.size(); ++i) {
        const auto& st = stages[i];
        if (!st.diagram.has_region(anchor))
            throw validation_error("plan deleted the anchor region");
        auto regions = propagate_regions(st.diagram, st.colors, anchor, anchor_color, tol);
        if (!region_coloring_generic(st.diagram, st.colors, regions, tol))
            return false;
        if (!p_admissible(p, st.colors, regions, tol))
            return false;
        std::map<int, cplx> values;
        for (const auto& r : st.diagram.regions())
            values[r.id] = det2(p, regions.at(r.id));
        if (!is_essential(st.diagram, values, tol))
            return false;
        if (i + 1 < stages.size()) {
            // re-anchor on a region surviving the next move
            const auto& next = stages[i + 1].diagram;
            int best = -1;
            for (const auto& r : st.diagram.regions())
                if (next.has_region(r.id)) {
                    best = r.id;
                    break;
                }
            if (best == -1)
                throw validation_error("no region survives the next move");
            anchor = best;
            anchor_color = regions.at(best);
        }
    }
    return true;
}

} // namespace

ShadowColoring select_generic(const LinkDiagram& d, const ArcColors& colors,
                              std::span<const MoveDescriptor> plan, const Config& cfg,
                              std::optional<std::pair<int, Parabolic>> seed_override,
                              std::optional<Parabolic> p_override) {
    const auto rep = validate_arc_coloring(d, colors, cfg.tolerance);
    if (!rep.ok)
        throw validation_error("arc coloring invalid: " +
                               (rep.failures.empty() ? "?" : rep.failures.front()));

    const std::vector<PlanStage> stages = run_plan_diagrams(d, colors, plan);
    const int default_seed_region = d.regions().front().id;

    std::mt19937_64 rng(cfg.seed);
    auto u01 = [&]() { return double(rng() >> 11) * 0x1.0p-53; };
    auto sample = [&]() {
        const double r = cfg.sample_radius * std::sqrt(u01());
        const double t = 2.0 * std::numbers::pi * u01();
        return Parabolic{cplx(r * std::cos(t), r * std::sin(t)), cplx(1.0, 0.0)};
    };

    const bool strict = seed_override.has_value() && p_override.has_value();
    const int attempts = strict ? 1 : cfg.retry_budget;
    for (int k = 0; k < attempts; ++k) {
        const int seed_region = seed_override ? seed_override->first : default_seed_region;
        const Parabolic s1 = seed_override ? seed_override->second : sample();
        const Parabolic p = p_override ? *p_override : sample();
        if (stages_generic_and_essential(stages, seed_region, s1, p, cfg.tolerance)) {
            ShadowColoring sc;
            sc.arcs = colors;
            sc.regions = propagate_regions(d, colors, seed_region, s1, cfg.tolerance);
            sc.p = p;
            return sc;
        }
        if (strict)
            throw numeric_error("explicit seed/p choice violates the genericity conditions");
    }
    throw numeric_error("could not find a generic region coloring within " +
                        std::to_string(cfg.retry_budget) + " attempts");
}

namespace {

Parabolic apply_sl2(const Parabolic& v, const std::array<cplx, 4>& m) {
    // row action (a b) . [[m0, m1], [m2, m3]]
    return {v.alpha * m[0] + v.beta * m[2], v.alpha * m[1] + v.beta * m[3]};
}

} // namespace

ShadowColoring reconstruct_coloring(const LinkDiagram& d, const ArcColors& colors,
                                    const SolutionVector& w, double tol) {
    if (!w.essential)
        throw numeric_error("reconstruction requires an essential solution");
    for (const auto& [id, c] : colors)
        if (std::abs(c.beta) <= tol)
            throw validation_error("arc " + std::to_string(id) +
                                   " has Hopf image at infinity; conjugate the colors first");

    // Region propagation is linear in the seed, so with basis propagations
    // E1, E2 the sought coloring is s_k = s1a E1_k + s1b E2_k and
    //   w_k = det(p, s_k) = det(A, E1_k) + det(B, E2_k)
    // is linear in the four unknowns A = s1a p, B = s1b p.
    const int r0 = d.regions().front().id;
    const auto E1 = propagate_regions(d, colors, r0, Parabolic{cplx(1.0), cplx(0.0)}, tol);
    const auto E2 = propagate_regions(d, colors, r0, Parabolic{cplx(0.0), cplx(1.0)}, tol);

    const size_t n = d.regions().size();
    std::vector<std::array<cplx, 5>> rows(n);
    {
        size_t i = 0;
        for (const auto& r : d.regions()) {
            const Parabolic& e1 = E1.at(r.id);
            const Parabolic& e2 = E2.at(r.id);
            rows[i] = {e1.beta, -e1.alpha, e2.beta, -e2.alpha, w.at(r.id)};
            ++i;
        }
    }
    // Gaussian elimination with partial pivoting; the system is consistent
    // exactly when some shadow-coloring generates w.
    std::array<int, 4> pivot_row{-1, -1, -1, -1};
    size_t next = 0;
    for (int col = 0; col < 4; ++col) {
        size_t best = next;
        double best_mag = 0.0;
        for (size_t i = next; i < n; ++i)
            if (std::abs(rows[i][size_t(col)]) > best_mag) {
                best_mag = std::abs(rows[i][size_t(col)]);
                best = i;
            }
        if (best_mag < 1e-12)
            throw numeric_error("reconstruction system is rank-deficient");
        std::swap(rows[next], rows[best]);
        const cplx inv = 1.0 / rows[next][size_t(col)];
        for (auto& v : rows[next])
            v *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == next)
                continue;
            const cplx f = rows[i][size_t(col)];
            if (f == cplx{})
                continue;
            for (int j = 0; j < 5; ++j)
                rows[i][size_t(j)] -= f * rows[next][size_t(j)];
        }
        pivot_row[size_t(col)] = int(next);
        ++next;
    }
    double scale = 0.0;
    for (const auto& r : d.regions())
        scale = std::max(scale, std::abs(w.at(r.id)));
    for (size_t i = next; i < n; ++i)
        if (std::abs(rows[i][4]) > 1e-7 * (1.0 + scale))
            throw numeric_error("no shadow-coloring generates the given solution");

    const Parabolic A{rows[size_t(pivot_row[0])][4], rows[size_t(pivot_row[1])][4]};
    const Parabolic B{rows[size_t(pivot_row[2])][4], rows[size_t(pivot_row[3])][4]};

    Parabolic p_found;
    cplx s1a, s1b;
    if (norm1(A) >= norm1(B)) {
        p_found = A;
        s1a = 1.0;
        s1b = std::abs(A.alpha) >= std::abs(A.beta) ? B.alpha / A.alpha : B.beta / A.beta;
    } else {
        p_found = B;
        s1b = 1.0;
        s1a = std::abs(B.alpha) >= std::abs(B.beta) ? A.alpha / B.alpha : A.beta / B.beta;
    }

    std::map<int, Parabolic> regions;
    for (const auto& r : d.regions()) {
        const Parabolic& e1 = E1.at(r.id);
        const Parabolic& e2 = E2.at(r.id);
        regions[r.id] = {s1a * e1.alpha + s1b * e2.alpha, s1a * e1.beta + s1b * e2.beta};
        const cplx check = det2(p_found, regions[r.id]);
        if (std::abs(check - w.at(r.id)) > 1e-7 * (1.0 + scale))
            throw numeric_error("reconstructed coloring does not reproduce the solution");
    }

    // conjugate the whole package so p becomes exactly (1, 0); each region
    // color then takes the special form with second component w_k
    std::array<cplx, 4> m0;
    if (std::abs(p_found.beta) > std::abs(p_found.alpha) * 1e-14) {
        m0 = {cplx(0.0), -p_found.beta, 1.0 / p_found.beta, p_found.alpha};
    } else {
        m0 = {1.0 / p_found.alpha, cplx(0.0), cplx(0.0), p_found.alpha};
    }

    ShadowColoring sc;
    for (const auto& [id, c] : colors)
        sc.arcs[id] = apply_sl2(c, m0);
    for (const auto& [id, s] : regions)
        sc.regions[id] = apply_sl2(s, m0);
    sc.p = Parabolic{cplx(1.0), cplx(0.0)};
    return sc;
}

} // namespace optvol
