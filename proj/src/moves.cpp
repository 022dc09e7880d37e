#include "optvol/moves.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace optvol {

namespace {

// 45-degree direction grid for the local rewrite charts: 0=E,1=NE,...,7=SE
constexpr int dir_dx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int dir_dy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

int opposite(int dir) { return (dir + 4) % 8; }

Sign crossing_sign(int over_dir, int under_dir) {
    const int det = dir_dx[over_dir] * dir_dy[under_dir] - dir_dy[over_dir] * dir_dx[under_dir];
    if (det == 0)
        throw validation_error("degenerate local chart");
    return det > 0 ? Sign::positive : Sign::negative;
}

int other_flank(const Arc& a, int region) {
    if (a.left_region == region && a.right_region != region)
        return a.right_region;
    if (a.right_region == region && a.left_region != region)
        return a.left_region;
    throw validation_error("arc " + std::to_string(a.id) + " does not border region " +
                           std::to_string(region) + " on exactly one side");
}

Parabolic under_out_color(Sign sign, const Parabolic& under_in, const Parabolic& over) {
    return sign == Sign::positive ? star(under_in, over) : star_inv(under_in, over);
}

Parabolic under_in_color(Sign sign, const Parabolic& under_out, const Parabolic& over) {
    return sign == Sign::positive ? star_inv(under_out, over) : star(under_out, over);
}

struct R1SlotPlan {
    Sign sign;
    std::array<int, 4> slots; // 0 = incoming segment, 1 = loop, 2 = outgoing segment
    int monogon_corner;
    int other_corner;
};

R1SlotPlan r1_plan(bool loop_right, bool pass_over) {
    if (loop_right && !pass_over)
        return {Sign::negative, {0, 1, 1, 2}, 1, 3};
    if (loop_right && pass_over)
        return {Sign::positive, {1, 1, 2, 0}, 0, 2};
    if (!loop_right && pass_over)
        return {Sign::negative, {1, 0, 2, 1}, 3, 1};
    return {Sign::positive, {0, 2, 1, 1}, 2, 0};
}

// --- R1 -------------------------------------------------------------------

MoveResult apply_r1(const LinkDiagram& d, const MoveDescriptor& m, const ArcColors* colors,
                    ArcColors* colors_out) {
    MoveResult res;
    res.diagram = d;
    LinkDiagram& nd = res.diagram;

    const Arc a = d.arc(m.arc);
    if (a.left_region == a.right_region)
        throw validation_error("kink site: arc borders the same region on both sides");
    const int doubled = m.loop_right ? a.right_region : a.left_region;
    const int other = m.loop_right ? a.left_region : a.right_region;

    const int xid = nd.fresh_crossing_id();
    const int loop_arc = nd.fresh_arc_id();
    const int out_arc = nd.fresh_arc_id();
    const int monogon = nd.fresh_region_id();

    const R1SlotPlan plan = r1_plan(m.loop_right, m.pass_over);
    Crossing c;
    c.id = xid;
    c.sign = plan.sign;
    const std::array<int, 3> seg{m.arc, loop_arc, out_arc};
    for (int s = 0; s < 4; ++s)
        c.arc[size_t(s)] = seg[size_t(plan.slots[size_t(s)])];
    for (int k = 0; k < 4; ++k) {
        if (k == plan.monogon_corner)
            c.region[size_t(k)] = monogon;
        else if (k == plan.other_corner)
            c.region[size_t(k)] = other;
        else
            c.region[size_t(k)] = doubled;
    }
    nd.crossing_mut(a.head.crossing).arc[size_t(a.head.slot)] = out_arc;
    nd.crossings_mut().push_back(c);
    nd.refresh_from_crossings();

    res.corr.created.push_back({monogon, "kink-monogon"});
    res.hints.push_back(R1Hints{xid, monogon, doubled, other});
    res.primitives.push_back(m);

    if (colors && colors_out) {
        *colors_out = *colors;
        (*colors_out)[loop_arc] = colors->at(m.arc);
        (*colors_out)[out_arc] = colors->at(m.arc);
        complete_colors(nd, *colors_out);
    }
    return res;
}

// --- R1 inverse -------------------------------------------------------------

struct KinkSite {
    int crossing;
    int corner;
    int loop_arc;
    int in_arc, out_arc;
    int doubled, other;
};

KinkSite find_kink(const LinkDiagram& d, int monogon) {
    const Region& r = d.region(monogon);
    if (r.corners.size() != 1)
        throw validation_error("region " + std::to_string(monogon) + " is not a monogon");
    const int cid = r.corners[0].crossing;
    const int k = r.corners[0].corner;
    const Crossing& c = d.crossing(cid);
    const int loop1 = c.arc[size_t(k)];
    const int loop2 = c.arc[size_t((k + 1) % 4)];
    if (loop1 != loop2)
        throw validation_error("monogon is not bounded by a single loop arc");
    const int doubled = c.region[size_t((k + 1) % 4)];
    if (doubled != c.region[size_t((k + 3) % 4)])
        throw validation_error("kink pattern mismatch: flanking corners differ");
    const int other = c.region[size_t((k + 2) % 4)];
    int in_arc = -1, out_arc = -1;
    for (int s = 0; s < 4; ++s) {
        if (c.arc[size_t(s)] == loop1)
            continue;
        if (c.incoming(s))
            in_arc = c.arc[size_t(s)];
        else
            out_arc = c.arc[size_t(s)];
    }
    if (in_arc == -1 || out_arc == -1)
        throw validation_error("kink pattern mismatch: loop slots");
    if (in_arc == out_arc)
        throw validation_error("removing the kink would leave a crossing-free component");
    return {cid, k, loop1, in_arc, out_arc, doubled, other};
}

MoveResult apply_r1_inv(const LinkDiagram& d, const MoveDescriptor& m, const ArcColors* colors,
                        ArcColors* colors_out) {
    const KinkSite site = find_kink(d, m.region);
    MoveResult res;
    res.diagram = d;
    LinkDiagram& nd = res.diagram;

    // splice: in_arc absorbs out_arc, kink crossing disappears
    auto& cs = nd.crossings_mut();
    for (auto& c : cs)
        for (int s = 0; s < 4; ++s)
            if (c.arc[size_t(s)] == site.out_arc)
                c.arc[size_t(s)] = site.in_arc;
    cs.erase(std::remove_if(cs.begin(), cs.end(),
                            [&](const Crossing& c) { return c.id == site.crossing; }),
             cs.end());
    if (cs.empty())
        throw validation_error("removing the kink would empty the diagram");
    nd.refresh_from_crossings();

    res.corr.deleted.push_back(m.region);
    res.hints.push_back(R1InvHints{m.region, site.doubled, site.other});
    res.primitives.push_back(m);

    if (colors && colors_out) {
        *colors_out = *colors;
        colors_out->erase(site.loop_arc);
        colors_out->erase(site.out_arc);
        complete_colors(nd, *colors_out);
    }
    return res;
}

// --- R2 ---------------------------------------------------------------------

enum class HalfRole { mu_in, mu_out, tau_mid, tau_far };
enum class R2Corner { region_f, bigon, far_moving, far_target };

R2Corner r2_corner_role(bool first_crossing, HalfRole x, HalfRole y) {
    auto pair_is = [&](HalfRole p, HalfRole q) { return (x == p && y == q) || (x == q && y == p); };
    if (pair_is(HalfRole::mu_in, HalfRole::tau_mid))
        return first_crossing ? R2Corner::far_moving : R2Corner::bigon;
    if (pair_is(HalfRole::tau_mid, HalfRole::mu_out))
        return first_crossing ? R2Corner::bigon : R2Corner::far_moving;
    if (pair_is(HalfRole::mu_out, HalfRole::tau_far))
        return first_crossing ? R2Corner::far_target : R2Corner::region_f;
    if (pair_is(HalfRole::tau_far, HalfRole::mu_in))
        return first_crossing ? R2Corner::region_f : R2Corner::far_target;
    throw validation_error("impossible corner pair in R2 chart");
}

MoveResult apply_r2(const LinkDiagram& d, const MoveDescriptor& m, const ArcColors* colors,
                    ArcColors* colors_out) {
    if (m.arc == m.target_arc)
        throw validation_error("R2 needs two distinct arcs");
    const Arc mu = d.arc(m.arc);
    const Arc tau = d.arc(m.target_arc);
    const int F = m.region;
    const int far_mu = other_flank(mu, F);
    const int far_tau = other_flank(tau, F);

    MoveResult res;
    res.diagram = d;
    LinkDiagram& nd = res.diagram;

    const bool mu_left = mu.left_region == F;     // F on the left of the moving strand
    const bool tau_left = tau.left_region == F;
    const int s = mu_left ? +1 : -1;              // chart: mu eastward along y = 0
    // tau runs along y = s facing F; its direction follows from its own side flag
    const bool tau_east = (s > 0) ? !tau_left : tau_left;

    const int x1 = nd.fresh_crossing_id();
    const int x2 = nd.fresh_crossing_id();
    const int mu_mid = nd.fresh_arc_id();
    const int mu_out2 = nd.fresh_arc_id();
    const int tau_mid = nd.fresh_arc_id();
    const int tau_out2 = nd.fresh_arc_id();
    const int bigon = nd.fresh_region_id();

    struct Half {
        int dir;
        HalfRole role;
        int arc;
        bool incoming;
    };

    const int mu_dir_x1 = (s > 0) ? 1 : 7; // travel direction of mu at each crossing
    const int mu_dir_x2 = (s > 0) ? 7 : 1;
    const int tau_dir = tau_east ? 0 : 4;

    auto build_crossing = [&](bool first) {
        const int cid = first ? x1 : x2;
        const int mu_dir = first ? mu_dir_x1 : mu_dir_x2;
        const int mid_dir = first ? 0 : 4; // toward the other crossing
        const bool tau_arrives_here_first = (tau_east == first);

        std::array<Half, 4> halves{};
        halves[0] = {opposite(mu_dir), HalfRole::mu_in, first ? mu.id : mu_mid, true};
        halves[1] = {mu_dir, HalfRole::mu_out, first ? mu_mid : mu_out2, false};
        // tau's segment names along its own direction: tau.id, tau_mid, tau_out2
        const int tau_in_arc = tau_arrives_here_first ? tau.id : tau_mid;
        const int tau_out_arc = tau_arrives_here_first ? tau_mid : tau_out2;
        const int tau_in_dir = opposite(tau_dir);
        halves[2] = {tau_in_dir, tau_in_dir == mid_dir ? HalfRole::tau_mid : HalfRole::tau_far,
                     tau_in_arc, true};
        halves[3] = {tau_dir, tau_dir == mid_dir ? HalfRole::tau_mid : HalfRole::tau_far,
                     tau_out_arc, false};

        const Sign sign = m.pass_over ? crossing_sign(mu_dir, tau_dir)
                                      : crossing_sign(tau_dir, mu_dir);
        const int under_in_dir = m.pass_over ? tau_in_dir : opposite(mu_dir);
        std::array<Half, 4> slots{};
        // counterclockwise from the under-strand's incoming half-edge
        std::sort(halves.begin(), halves.end(), [&](const Half& a, const Half& b) {
            return (a.dir - under_in_dir + 8) % 8 < (b.dir - under_in_dir + 8) % 8;
        });
        slots = halves;

        Crossing c;
        c.id = cid;
        c.sign = sign;
        for (int i = 0; i < 4; ++i)
            c.arc[size_t(i)] = slots[size_t(i)].arc;
        // sanity: the slot pattern must match the sign convention
        if (slots[0].incoming != true || slots[2].incoming != false ||
            slots[size_t(c.over_in_slot())].incoming != true ||
            slots[size_t(c.over_out_slot())].incoming != false)
            throw validation_error("R2 chart produced an inconsistent slot pattern");

        for (int i = 0; i < 4; ++i) {
            const R2Corner role = r2_corner_role(first, slots[size_t(i)].role,
                                                 slots[size_t((i + 1) % 4)].role);
            int rid = -1;
            switch (role) {
            case R2Corner::region_f: rid = F; break;
            case R2Corner::bigon: rid = bigon; break;
            case R2Corner::far_moving: rid = far_mu; break;
            case R2Corner::far_target: rid = far_tau; break;
            }
            c.region[size_t(i)] = rid;
        }
        return c;
    };

    const Crossing c1 = build_crossing(true);
    const Crossing c2 = build_crossing(false);
    nd.crossing_mut(mu.head.crossing).arc[size_t(mu.head.slot)] = mu_out2;
    nd.crossing_mut(tau.head.crossing).arc[size_t(tau.head.slot)] = tau_out2;
    nd.crossings_mut().push_back(c1);
    nd.crossings_mut().push_back(c2);
    const int piece_copy = nd.refresh_with_split(F);

    res.corr.created.push_back({piece_copy, "split-copy-of-" + std::to_string(F)});
    res.corr.created.push_back({bigon, "bigon"});
    res.hints.push_back(R2Hints{x1, x2, bigon, F, piece_copy, far_mu, far_tau});
    res.primitives.push_back(m);

    if (colors && colors_out) {
        *colors_out = *colors;
        (*colors_out)[mu_out2] = colors->at(mu.id);
        (*colors_out)[tau_out2] = colors->at(tau.id);
        if (m.pass_over)
            (*colors_out)[mu_mid] = colors->at(mu.id);
        else
            (*colors_out)[tau_mid] = colors->at(tau.id);
        complete_colors(nd, *colors_out);
    }
    return res;
}

// --- R2 inverse ---------------------------------------------------------------

struct BigonSite {
    int cx, cy;                 // the two crossings
    int over_arc, under_arc;    // bigon edges
    int keep_region, merge_region;
};

BigonSite find_bigon(const LinkDiagram& d, int bigon) {
    const Region& r = d.region(bigon);
    if (r.corners.size() != 2)
        throw validation_error("region " + std::to_string(bigon) + " is not a bigon");
    const auto [c0, k0] = r.corners[0];
    const auto [c1, k1] = r.corners[1];
    if (c0 == c1)
        throw validation_error("bigon has both corners at one crossing");
    std::set<int> edges;
    for (auto [cid, k] : {std::pair{c0, k0}, std::pair{c1, k1}}) {
        const Crossing& c = d.crossing(cid);
        edges.insert(c.arc[size_t(k)]);
        edges.insert(c.arc[size_t((k + 1) % 4)]);
    }
    if (edges.size() != 2)
        throw validation_error("bigon is not bounded by exactly two arcs");
    auto role_at = [&](int arc_id, int cid) {
        const Crossing& c = d.crossing(cid);
        return arc_id == c.arc[size_t(c.over_in_slot())] ||
               arc_id == c.arc[size_t(c.over_out_slot())];
    };
    int over_arc = -1, under_arc = -1;
    for (int e : edges) {
        const bool o0 = role_at(e, c0), o1 = role_at(e, c1);
        if (o0 && o1)
            over_arc = e;
        else if (!o0 && !o1)
            under_arc = e;
    }
    if (over_arc == -1 || under_arc == -1)
        throw validation_error("bigon strands are clasped; not a second-move site");
    const int rx = d.crossing(c0).region[size_t((k0 + 2) % 4)];
    const int ry = d.crossing(c1).region[size_t((k1 + 2) % 4)];
    if (rx == ry || rx == bigon || ry == bigon)
        throw validation_error("bigon opposite regions do not form a second-move site");
    return {c0, c1, over_arc, under_arc, std::min(rx, ry), std::max(rx, ry)};
}

MoveResult apply_r2_inv(const LinkDiagram& d, const MoveDescriptor& m, const ArcColors* colors,
                        ArcColors* colors_out) {
    const BigonSite site = find_bigon(d, m.region);
    MoveResult res;
    res.diagram = d;
    LinkDiagram& nd = res.diagram;

    // per strand: pre absorbs mid and post
    std::map<int, int> rename;
    std::set<int> dropped;
    for (int mid_arc : {site.over_arc, site.under_arc}) {
        const Arc mid = d.arc(mid_arc);
        const Crossing& cfirst = d.crossing(mid.tail.crossing);
        const Crossing& csecond = d.crossing(mid.head.crossing);
        const bool over = mid_arc == site.over_arc;
        const int in_slot = over ? cfirst.over_in_slot() : cfirst.under_in_slot();
        const int out_slot = over ? csecond.over_out_slot() : csecond.under_out_slot();
        const int pre = cfirst.arc[size_t(in_slot)];
        const int post = csecond.arc[size_t(out_slot)];
        if (pre == post || pre == mid_arc)
            throw validation_error("undoing this bigon would leave a crossing-free component");
        rename[mid_arc] = pre;
        rename[post] = pre;
        dropped.insert(mid_arc);
        dropped.insert(post);
    }
    auto resolve = [&](int id) {
        int guard = 0;
        while (rename.count(id)) {
            id = rename[id];
            if (++guard > 8)
                throw validation_error("undoing this bigon would close a strand onto itself");
        }
        return id;
    };

    auto& cs = nd.crossings_mut();
    cs.erase(std::remove_if(cs.begin(), cs.end(),
                            [&](const Crossing& c) { return c.id == site.cx || c.id == site.cy; }),
             cs.end());
    if (cs.empty())
        throw validation_error("undoing the bigon would empty the diagram");
    for (auto& c : cs)
        for (int s = 0; s < 4; ++s) {
            c.arc[size_t(s)] = resolve(c.arc[size_t(s)]);
            if (c.region[size_t(s)] == site.merge_region)
                c.region[size_t(s)] = site.keep_region;
        }
    nd.refresh_from_crossings();

    res.corr.deleted.push_back(m.region);
    res.corr.merged.push_back({site.merge_region, site.keep_region});
    res.hints.push_back(R2InvHints{m.region, site.keep_region, site.merge_region});
    res.primitives.push_back(m);

    if (colors && colors_out) {
        *colors_out = *colors;
        for (int a : dropped)
            colors_out->erase(a);
        complete_colors(nd, *colors_out);
    }
    return res;
}

// --- R3 -------------------------------------------------------------------

struct TriangleSite {
    std::array<int, 3> crossings;
    std::array<int, 3> corners;   // triangle corner index at each crossing
    std::array<int, 3> edges;     // edge arcs (mid segments), aligned with strand order
    int cross_star;               // crossing of top and bottom strands
    int o_star, e_mid, e_top, e_bot, o_1, o_2;
};

TriangleSite find_triangle(const LinkDiagram& d, int tri) {
    const Region& r = d.region(tri);
    if (r.corners.size() != 3)
        throw validation_error("region " + std::to_string(tri) + " is not a triangle");
    TriangleSite site{};
    std::set<int> cross_set;
    std::set<int> edge_set;
    for (int i = 0; i < 3; ++i) {
        site.crossings[size_t(i)] = r.corners[size_t(i)].crossing;
        site.corners[size_t(i)] = r.corners[size_t(i)].corner;
        cross_set.insert(r.corners[size_t(i)].crossing);
        const Crossing& c = d.crossing(r.corners[size_t(i)].crossing);
        edge_set.insert(c.arc[size_t(r.corners[size_t(i)].corner)]);
        edge_set.insert(c.arc[size_t((r.corners[size_t(i)].corner + 1) % 4)]);
    }
    if (cross_set.size() != 3)
        throw validation_error("triangle corners are not at three distinct crossings");
    if (edge_set.size() != 3)
        throw validation_error("triangle is not bounded by three distinct arcs");

    // classify each edge strand by its over/under pattern at its two ends
    auto is_over_at = [&](int arc_id, int cid) {
        const Crossing& c = d.crossing(cid);
        return arc_id == c.arc[size_t(c.over_in_slot())] ||
               arc_id == c.arc[size_t(c.over_out_slot())];
    };
    int top = -1, bottom = -1, middle = -1;
    for (int e : edge_set) {
        const Arc& a = d.arc(e);
        if (!cross_set.count(a.tail.crossing) || !cross_set.count(a.head.crossing) ||
            a.tail.crossing == a.head.crossing)
            throw validation_error("triangle edge does not join two triangle crossings");
        const bool o1 = is_over_at(e, a.tail.crossing);
        const bool o2 = is_over_at(e, a.head.crossing);
        if (o1 && o2)
            top = e;
        else if (!o1 && !o2)
            bottom = e;
        else
            middle = e;
    }
    if (top == -1 || bottom == -1 || middle == -1)
        throw validation_error("triangle strands are cyclically layered; third move "
                               "does not apply");
    site.edges = {top, middle, bottom};

    // the special crossing is the one the middle strand misses
    const Arc& mid_arc = d.arc(middle);
    for (int c : cross_set)
        if (c != mid_arc.tail.crossing && c != mid_arc.head.crossing)
            site.cross_star = c;

    auto corner_at = [&](int cid) {
        for (int i = 0; i < 3; ++i)
            if (site.crossings[size_t(i)] == cid)
                return site.corners[size_t(i)];
        throw validation_error("triangle corner lookup failed");
    };
    auto opposite_region = [&](int cid) {
        const Crossing& c = d.crossing(cid);
        return c.region[size_t((corner_at(cid) + 2) % 4)];
    };
    site.o_star = opposite_region(site.cross_star);
    site.e_mid = other_flank(d.arc(middle), tri);
    site.e_top = other_flank(d.arc(top), tri);
    site.e_bot = other_flank(d.arc(bottom), tri);
    site.o_1 = opposite_region(mid_arc.tail.crossing);
    site.o_2 = opposite_region(mid_arc.head.crossing);
    for (int n : {site.o_star, site.e_mid, site.e_top, site.e_bot, site.o_1, site.o_2})
        if (n == tri)
            throw validation_error("triangle wraps onto itself; third move does not apply");
    return site;
}

MoveResult apply_r3(const LinkDiagram& d, const MoveDescriptor& m, const ArcColors* colors,
                    ArcColors* colors_out) {
    const TriangleSite site = find_triangle(d, m.region);
    MoveResult res;
    res.diagram = d;
    LinkDiagram& nd = res.diagram;
    const int new_tri = nd.fresh_region_id();

    // batched arc rewiring: each strand's two visits swap order
    struct Write {
        int crossing, slot, arc;
    };
    std::vector<Write> writes;
    for (int e : site.edges) {
        const Arc mid = d.arc(e);
        const int c1 = mid.tail.crossing, c2 = mid.head.crossing;
        const Crossing& x1 = d.crossing(c1);
        const Crossing& x2 = d.crossing(c2);
        const bool over1 = mid.tail.slot == x1.over_out_slot();
        const bool over2 = mid.head.slot == x2.over_in_slot();
        const int in1 = over1 ? x1.over_in_slot() : x1.under_in_slot();
        const int out2 = over2 ? x2.over_out_slot() : x2.under_out_slot();
        const int pre = x1.arc[size_t(in1)];
        const int post = x2.arc[size_t(out2)];
        writes.push_back({c2, mid.head.slot, pre});
        writes.push_back({c2, out2, e});
        writes.push_back({c1, in1, e});
        writes.push_back({c1, mid.tail.slot, post});
    }

    // corner relabeling (uses the pre-rewire arcs)
    for (int i = 0; i < 3; ++i) {
        const int cid = site.crossings[size_t(i)];
        const int k = site.corners[size_t(i)];
        const Crossing& c = d.crossing(cid);
        const int arc_k = c.arc[size_t(k)];
        const int arc_k1 = c.arc[size_t((k + 1) % 4)];
        auto reached = [&](int arc_id) {
            const Arc& a = d.arc(arc_id);
            return a.tail.crossing == cid ? a.head.crossing : a.tail.crossing;
        };
        auto opp_of = [&](int ccid) {
            for (int j = 0; j < 3; ++j)
                if (site.crossings[size_t(j)] == ccid) {
                    const Crossing& cc = d.crossing(ccid);
                    return cc.region[size_t((site.corners[size_t(j)] + 2) % 4)];
                }
            throw validation_error("triangle neighbour lookup failed");
        };
        int e_missing = -1;
        for (int e : site.edges)
            if (e != arc_k && e != arc_k1)
                e_missing = other_flank(d.arc(e), m.region);
        Crossing& cm = nd.crossing_mut(cid);
        cm.region[size_t(k)] = e_missing;
        cm.region[size_t((k + 2) % 4)] = new_tri;
        cm.region[size_t((k + 1) % 4)] = opp_of(reached(arc_k1));
        cm.region[size_t((k + 3) % 4)] = opp_of(reached(arc_k));
    }

    for (const auto& w : writes)
        nd.crossing_mut(w.crossing).arc[size_t(w.slot)] = w.arc;
    nd.refresh_from_crossings();

    res.corr.deleted.push_back(m.region);
    res.corr.created.push_back({new_tri, "triangle"});
    R3Hints h;
    h.old_triangle = m.region;
    h.new_triangle = new_tri;
    h.cross_star = site.cross_star;
    h.o_star = site.o_star;
    h.e_mid = site.e_mid;
    h.e_top = site.e_top;
    h.e_bot = site.e_bot;
    h.o_1 = site.o_1;
    h.o_2 = site.o_2;
    res.hints.push_back(h);
    res.primitives.push_back(m);

    if (colors && colors_out) {
        *colors_out = *colors;
        for (int e : site.edges)
            colors_out->erase(e); // mid segment colors change; recompute
        complete_colors(nd, *colors_out);
    }
    return res;
}

} // namespace

void complete_colors(const LinkDiagram& d, ArcColors& colors) {
    const int max_passes = int(d.arcs().size()) + 4;
    for (int pass = 0; pass < max_passes; ++pass) {
        bool progress = false;
        for (const auto& c : d.crossings()) {
            const int oi = c.arc[size_t(c.over_in_slot())];
            const int oo = c.arc[size_t(c.over_out_slot())];
            const int ui = c.arc[size_t(c.under_in_slot())];
            const int uo = c.arc[size_t(c.under_out_slot())];
            auto have = [&](int a) { return colors.count(a) > 0; };
            // kink: the loop arc carries the strand's own color
            if (oi == uo && have(ui) && !have(oi)) {
                colors[oi] = colors[ui];
                progress = true;
            }
            if (oo == ui && have(oi) && !have(oo)) {
                colors[oo] = colors[oi];
                progress = true;
            }
            if (have(oi) && !have(oo)) {
                colors[oo] = colors[oi];
                progress = true;
            }
            if (have(oo) && !have(oi)) {
                colors[oi] = colors[oo];
                progress = true;
            }
            if (have(ui) && have(oi) && !have(uo)) {
                colors[uo] = under_out_color(c.sign, colors[ui], colors[oi]);
                progress = true;
            }
            if (have(uo) && have(oi) && !have(ui)) {
                colors[ui] = under_in_color(c.sign, colors[uo], colors[oi]);
                progress = true;
            }
        }
        if (!progress)
            break;
    }
    for (const auto& a : d.arcs())
        if (!colors.count(a.id))
            throw validation_error("could not derive a color for arc " + std::to_string(a.id));
}

MoveResult apply_move(const LinkDiagram& d, const MoveDescriptor& m, const ArcColors* colors,
                      ArcColors* colors_out) {
    if (!d.regions_computed())
        throw validation_error("regions must be computed before applying moves");
    switch (m.kind) {
    case MoveKind::r1:
        return apply_r1(d, m, colors, colors_out);
    case MoveKind::r1_inv:
        return apply_r1_inv(d, m, colors, colors_out);
    case MoveKind::r2:
        return apply_r2(d, m, colors, colors_out);
    case MoveKind::r2_inv:
        return apply_r2_inv(d, m, colors, colors_out);
    case MoveKind::r3:
        return apply_r3(d, m, colors, colors_out);
    case MoveKind::twist: {
        // kink first, then slide the triangle that grew from the far flank
        MoveResult first = apply_r1(d, m, colors, colors_out);
        const auto& h1 = std::get<R1Hints>(first.hints[0]);
        if (d.region(h1.other).corners.size() != 2)
            throw validation_error("twist needs the region behind the kink to be a bigon");
        MoveDescriptor r3m;
        r3m.kind = MoveKind::r3;
        r3m.region = h1.other;
        ArcColors mid_colors;
        MoveResult second =
            apply_r3(first.diagram, r3m, colors_out && colors ? colors_out : nullptr,
                     colors_out && colors ? &mid_colors : nullptr);
        if (colors_out && colors)
            *colors_out = mid_colors;
        MoveResult res;
        res.diagram = second.diagram;
        res.corr = first.corr;
        res.corr.deleted.insert(res.corr.deleted.end(), second.corr.deleted.begin(),
                                second.corr.deleted.end());
        res.corr.created.insert(res.corr.created.end(), second.corr.created.begin(),
                                second.corr.created.end());
        res.hints = {first.hints[0], second.hints[0]};
        res.primitives = {first.primitives[0], second.primitives[0]};
        return res;
    }
    case MoveKind::twist_inv: {
        MoveDescriptor r3m;
        r3m.kind = MoveKind::r3;
        r3m.region = m.region;
        ArcColors mid_colors;
        MoveResult first = apply_r3(d, r3m, colors, colors ? &mid_colors : nullptr);
        MoveDescriptor r1m;
        r1m.kind = MoveKind::r1_inv;
        r1m.region = m.monogon;
        MoveResult second = apply_r1_inv(first.diagram, r1m, colors ? &mid_colors : nullptr,
                                         colors_out);
        MoveResult res;
        res.diagram = second.diagram;
        res.corr = first.corr;
        res.corr.deleted.insert(res.corr.deleted.end(), second.corr.deleted.begin(),
                                second.corr.deleted.end());
        res.hints = {first.hints[0], second.hints[0]};
        res.primitives = {first.primitives[0], second.primitives[0]};
        return res;
    }
    }
    throw validation_error("unknown move kind");
}

std::vector<MoveDescriptor> enumerate_moves(const LinkDiagram& d) {
    std::vector<MoveDescriptor> out;
    for (const auto& a : d.arcs()) {
        if (a.left_region == a.right_region)
            continue;
        for (bool right : {false, true})
            for (bool over : {false, true}) {
                MoveDescriptor m;
                m.kind = MoveKind::r1;
                m.arc = a.id;
                m.loop_right = right;
                m.pass_over = over;
                out.push_back(m);
            }
    }
    for (const auto& r : d.regions()) {
        if (r.corners.size() == 1 && d.crossings().size() > 1) {
            MoveDescriptor m;
            m.kind = MoveKind::r1_inv;
            m.region = r.id;
            try {
                find_kink(d, r.id);
                out.push_back(m);
            } catch (const validation_error&) {
            }
        }
        if (r.corners.size() == 2 && d.crossings().size() > 2) {
            MoveDescriptor m;
            m.kind = MoveKind::r2_inv;
            m.region = r.id;
            try {
                find_bigon(d, r.id);
                out.push_back(m);
            } catch (const validation_error&) {
            }
        }
        if (r.corners.size() == 3) {
            MoveDescriptor m;
            m.kind = MoveKind::r3;
            m.region = r.id;
            try {
                find_triangle(d, r.id);
                out.push_back(m);
            } catch (const validation_error&) {
            }
        }
        // R2 pushes between pairs of boundary edges
        std::vector<int> edges;
        for (const auto& a : d.arcs())
            if ((a.left_region == r.id) != (a.right_region == r.id))
                edges.push_back(a.id);
        for (size_t i = 0; i < edges.size(); ++i)
            for (size_t j = i + 1; j < edges.size(); ++j)
                for (bool over : {false, true}) {
                    MoveDescriptor m;
                    m.kind = MoveKind::r2;
                    m.arc = edges[i];
                    m.target_arc = edges[j];
                    m.region = r.id;
                    m.pass_over = over;
                    out.push_back(m);
                }
    }
    return out;
}

std::string move_kind_name(MoveKind k) {
    switch (k) {
    case MoveKind::r1: return "R1";
    case MoveKind::r1_inv: return "R1inv";
    case MoveKind::r2: return "R2";
    case MoveKind::r2_inv: return "R2inv";
    case MoveKind::r3: return "R3";
    case MoveKind::twist: return "twist";
    case MoveKind::twist_inv: return "twistinv";
    }
    return "?";
}

std::string format_move(const MoveDescriptor& m) {
    std::ostringstream os;
    os << move_kind_name(m.kind) << " @";
    switch (m.kind) {
    case MoveKind::r1:
    case MoveKind::twist:
        os << " arc=" << m.arc << " side=" << (m.loop_right ? "right" : "left")
           << " pass=" << (m.pass_over ? "over" : "under");
        break;
    case MoveKind::r2:
        os << " arc=" << m.arc << " target=" << m.target_arc << " region=" << m.region
           << " pass=" << (m.pass_over ? "over" : "under");
        break;
    case MoveKind::r1_inv:
    case MoveKind::r2_inv:
    case MoveKind::r3:
        os << " region=" << m.region;
        break;
    case MoveKind::twist_inv:
        os << " region=" << m.region << " monogon=" << m.monogon;
        break;
    }
    return os.str();
}

MoveDescriptor parse_move_line(const std::string& line) {
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind))
        throw parse_error("empty move line");
    MoveDescriptor m;
    if (kind == "R1")
        m.kind = MoveKind::r1;
    else if (kind == "R1inv")
        m.kind = MoveKind::r1_inv;
    else if (kind == "R2")
        m.kind = MoveKind::r2;
    else if (kind == "R2inv")
        m.kind = MoveKind::r2_inv;
    else if (kind == "R3")
        m.kind = MoveKind::r3;
    else if (kind == "twist")
        m.kind = MoveKind::twist;
    else if (kind == "twistinv")
        m.kind = MoveKind::twist_inv;
    else
        throw parse_error("unknown move kind '" + kind + "'");
    std::string tok;
    while (ls >> tok) {
        if (tok == "@")
            continue;
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw parse_error("bad move token '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "arc")
            m.arc = std::stoi(val);
        else if (key == "target")
            m.target_arc = std::stoi(val);
        else if (key == "region")
            m.region = std::stoi(val);
        else if (key == "monogon")
            m.monogon = std::stoi(val);
        else if (key == "side")
            m.loop_right = val == "right";
        else if (key == "pass")
            m.pass_over = val == "over";
        else
            throw parse_error("unknown move key '" + key + "'");
    }
    return m;
}

} // namespace optvol
