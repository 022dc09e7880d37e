#include "optvol/diagram.hpp"

#include <doctest.h>

#include <set>

#include "optvol/io.hpp"
#include "test_helpers.hpp"

using namespace optvol;
using namespace optvol::testing;

TEST_CASE("parse figure-eight") {
    LinkDiagram d = load_diagram("fig8.knot");
    CHECK(d.crossings().size() == 4);
    CHECK(d.arcs().size() == 8);
    CHECK(d.regions().size() == 6);
    CHECK(d.component_count() == 1);

    // the worked example's region incidences, one check per region
    const Fig8Regions r = fig8_regions(d);
    const std::set<int> all{r.w1, r.w2, r.w3, r.w4, r.w5, r.w6};
    CHECK(all.size() == 6);
    CHECK(d.region(r.w1).corners.size() == 3);
    CHECK(d.region(r.w2).corners.size() == 2);
    CHECK(d.region(r.w3).corners.size() == 3);
    CHECK(d.region(r.w4).corners.size() == 3);
    CHECK(d.region(r.w5).corners.size() == 2);
    CHECK(d.region(r.w6).corners.size() == 3);
    CHECK(d.region_at(2, RegionSlot::a) == r.w1);
    CHECK(d.region_at(4, RegionSlot::b) == r.w1);
    CHECK(d.region_at(2, RegionSlot::b) == r.w2);
    CHECK(d.region_at(2, RegionSlot::c) == r.w3);
    CHECK(d.region_at(3, RegionSlot::b) == r.w3);
    CHECK(d.region_at(3, RegionSlot::c) == r.w4);
    CHECK(d.region_at(4, RegionSlot::a) == r.w4);
    CHECK(d.region_at(4, RegionSlot::d) == r.w5);
    CHECK(d.region_at(3, RegionSlot::a) == r.w6);
    CHECK(d.region_at(4, RegionSlot::c) == r.w6);
}

TEST_CASE("parse one-crossing kink and trefoil") {
    LinkDiagram k = load_diagram("kink.knot");
    CHECK(k.crossings().size() == 1);
    CHECK(k.arcs().size() == 2);
    CHECK(k.regions().size() == 3);

    LinkDiagram t = load_diagram("trefoil.knot");
    CHECK(t.crossings().size() == 3);
    CHECK(t.regions().size() == 5);
    CHECK(t.component_count() == 1);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(LinkDiagram::parse(""), parse_error);
    CHECK_THROWS_AS(LinkDiagram::parse("# only a comment\n"), parse_error);
    CHECK_THROWS_AS(LinkDiagram::parse("Y+ 1 2 3 4\n"), parse_error);
    CHECK_THROWS_AS(LinkDiagram::parse("X+ 1 2 3\n"), parse_error);
    CHECK_THROWS_AS(LinkDiagram::parse("X+ 1 2 3 4 5\n"), parse_error);
    // arc 9 used once
    CHECK_THROWS_AS(LinkDiagram::parse("X- 4 7 5 9\nX- 8 3 1 4\nX+ 2 6 3 5\nX+ 6 2 7 1\n"),
                    parse_error);
}

TEST_CASE("validation rejects forbidden diagrams") {
    // split link: two disjoint kinks
    CHECK_THROWS_AS(
        [] {
            LinkDiagram d = LinkDiagram::parse("X+ 1 1 2 2\nX+ 3 3 4 4\n");
            d.compute_regions();
        }(),
        validation_error);
    // clasp where one component only crosses over
    CHECK_THROWS_AS(
        [] {
            LinkDiagram d = LinkDiagram::parse("X+ 1 3 2 4\nX+ 2 4 1 3\n");
            d.compute_regions();
        }(),
        validation_error);
}

TEST_CASE("every corner lies in exactly one region") {
    for (const char* name : {"fig8.knot", "trefoil.knot", "kink.knot"}) {
        LinkDiagram d = load_diagram(name);
        CHECK(d.regions().size() == d.crossings().size() + 2);
        std::set<std::pair<int, int>> seen;
        size_t total = 0;
        for (const auto& r : d.regions()) {
            for (const auto& c : r.corners) {
                CHECK(!seen.count({c.crossing, c.corner}));
                seen.insert({c.crossing, c.corner});
                CHECK(d.crossing(c.crossing).region[size_t(c.corner)] == r.id);
            }
            total += r.corners.size();
        }
        CHECK(total == 4 * d.crossings().size());
    }
}

TEST_CASE("mirror is an involution that only flips signs") {
    for (const char* name : {"fig8.knot", "trefoil.knot", "kink.knot"}) {
        LinkDiagram d = load_diagram(name);
        LinkDiagram m = d.mirror();
        CHECK(m.regions().size() == d.regions().size());
        for (const auto& c : d.crossings()) {
            CHECK(m.crossing(c.id).sign == flip(c.sign));
            // region ids at the lettered slots are preserved with b and d swapped
            CHECK(m.region_at(c.id, RegionSlot::a) == d.region_at(c.id, RegionSlot::a));
            CHECK(m.region_at(c.id, RegionSlot::c) == d.region_at(c.id, RegionSlot::c));
            CHECK(m.region_at(c.id, RegionSlot::b) == d.region_at(c.id, RegionSlot::d));
            CHECK(m.region_at(c.id, RegionSlot::d) == d.region_at(c.id, RegionSlot::b));
        }
        LinkDiagram mm = m.mirror();
        for (const auto& c : d.crossings()) {
            CHECK(mm.crossing(c.id).sign == c.sign);
            CHECK(mm.crossing(c.id).arc == c.arc);
            CHECK(mm.crossing(c.id).region == c.region);
        }
    }
}

TEST_CASE("isomorphism is label-independent") {
    LinkDiagram d = load_diagram("fig8.knot");
    // same diagram with arcs renamed and lines permuted
    LinkDiagram e = LinkDiagram::parse("X+ 12 16 13 15\nX- 14 17 15 18\nX+ 16 12 17 11\n"
                                       "X- 18 13 11 14\n");
    e.compute_regions();
    CHECK(d.isomorphic_to(e));
    LinkDiagram t = load_diagram("trefoil.knot");
    CHECK(!d.isomorphic_to(t));
    CHECK(d.isomorphic_to(d.mirror().mirror()));
}

TEST_CASE("slot assignment survives reparsing") {
    LinkDiagram d = load_diagram("fig8.knot");
    LinkDiagram e = LinkDiagram::parse(format_diagram(d));
    e.compute_regions();
    for (const auto& c : d.crossings())
        CHECK(e.crossing(c.id).region == c.region);
}
