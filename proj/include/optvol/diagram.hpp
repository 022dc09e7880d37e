#ifndef OPTVOL_DIAGRAM_HPP
#define OPTVOL_DIAGRAM_HPP

#include "optvol/config.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace optvol {

enum class Sign : int { positive = +1, negative = -1 };

inline Sign flip(Sign s) { return s == Sign::positive ? Sign::negative : Sign::positive; }

/// Region slot letters around a crossing. Slot a is the region between the
/// two outgoing strand ends; b, c, d follow counterclockwise.
enum class RegionSlot : int { a = 0, b = 1, c = 2, d = 3 };

/// Crossing with arcs in rotation slots 0..3 (counterclockwise, slot 0 =
/// incoming under-strand) and region ids at corners (corner i lies between
/// rotation slots i and i+1).
///
/// positive: slot1 = outgoing over, slot2 = outgoing under, slot3 = incoming over
/// negative: slot1 = incoming over, slot2 = outgoing under, slot3 = outgoing over
struct Crossing {
    int id = 0;
    Sign sign = Sign::positive;
    std::array<int, 4> arc{-1, -1, -1, -1};
    std::array<int, 4> region{-1, -1, -1, -1};

    int under_in_slot() const { return 0; }
    int under_out_slot() const { return 2; }
    int over_in_slot() const { return sign == Sign::positive ? 3 : 1; }
    int over_out_slot() const { return sign == Sign::positive ? 1 : 3; }
    bool incoming(int slot) const { return slot == 0 || slot == over_in_slot(); }

    /// corner index holding the region at a given slot letter
    int corner_of(RegionSlot s) const {
        static constexpr int pos[4] = {1, 2, 3, 0}; // a,b,c,d
        static constexpr int neg[4] = {2, 3, 0, 1};
        return sign == Sign::positive ? pos[int(s)] : neg[int(s)];
    }
    RegionSlot slot_of_corner(int corner) const {
        for (int s = 0; s < 4; ++s)
            if (corner_of(RegionSlot(s)) == corner)
                return RegionSlot(s);
        throw validation_error("bad corner index");
    }
    int region_slot(RegionSlot s) const { return region[size_t(corner_of(s))]; }
};

struct ArcEnd {
    int crossing = -1;
    int slot = -1;
    bool operator==(const ArcEnd&) const = default;
};

/// Directed arc (edge of the diagram, cut at every crossing passage).
struct Arc {
    int id = 0;
    ArcEnd tail, head;
    int left_region = -1;  // face on the left of the direction of travel
    int right_region = -1;
};

struct CornerRef {
    int crossing = -1;
    int corner = -1;
    bool operator==(const CornerRef&) const = default;
};

struct Region {
    int id = 0;
    std::vector<CornerRef> corners; // in face-walk order
};

class LinkDiagram {
  public:
    LinkDiagram() = default;

    /// Parse the crossing-list source format: one crossing per line,
    /// `X<sign> a b c d` with arc labels counterclockwise from the incoming
    /// under-strand; `#` starts a comment. Regions are not yet computed.
    static LinkDiagram parse(const std::string& text);

    /// Trace faces and assign canonical region ids (sorted by smallest
    /// incident crossing id, then slot letter). Validates the diagram.
    void compute_regions();

    /// Rebuild arcs/regions after a rewrite. Corner region ids must already
    /// be assigned; face tracing re-derives the corner lists and validates
    /// that every traced face carries exactly one region id.
    void refresh_from_crossings();

    /// Like refresh_from_crossings, but expects exactly two traced faces to
    /// carry `split_region`'s id; the face holding its lexicographically
    /// smallest corner keeps the id, the other gets a fresh id (returned).
    int refresh_with_split(int split_region);

    const std::vector<Crossing>& crossings() const { return crossings_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const std::vector<Region>& regions() const { return regions_; }
    int component_count() const { return component_count_; }
    bool regions_computed() const { return !regions_.empty(); }

    const Crossing& crossing(int id) const;
    Crossing& crossing_mut(int id);
    const Arc& arc(int id) const;
    const Region& region(int id) const;
    bool has_region(int id) const;

    int region_at(int crossing_id, RegionSlot s) const;

    /// Pairs of distinct regions sharing an arc, each pair once per arc.
    std::vector<std::pair<int, int>> adjacent_region_pairs() const;

    /// Map from current region ids to the ids a fresh parse of the same
    /// source would assign (canonical order).
    std::map<int, int> canonical_region_ids() const;

    LinkDiagram mirror() const;

    bool isomorphic_to(const LinkDiagram& other) const;

    std::string describe() const;

    // id allocation for rewrites
    int fresh_crossing_id() { return next_crossing_id_++; }
    int fresh_arc_id() { return next_arc_id_++; }
    int fresh_region_id() { return next_region_id_++; }

    std::vector<Crossing>& crossings_mut() { return crossings_; }

  private:
    std::vector<Crossing> crossings_;
    std::vector<Arc> arcs_;
    std::vector<Region> regions_;
    int component_count_ = 0;
    int next_crossing_id_ = 1;
    int next_arc_id_ = 1;
    int next_region_id_ = 1;

    void build_arcs();
    int trace_faces(bool assign_canonical, int split_region = -1);
    void validate_components();
    void validate_connected() const;
    std::string canonical_signature() const;
};

} // namespace optvol

#endif
