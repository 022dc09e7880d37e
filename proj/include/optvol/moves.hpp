#ifndef OPTVOL_MOVES_HPP
#define OPTVOL_MOVES_HPP

#include "optvol/diagram.hpp"
#include "optvol/quandle.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace optvol {

using ArcColors = std::map<int, Parabolic>;

enum class MoveKind { r1, r1_inv, r2, r2_inv, r3, twist, twist_inv };

std::string move_kind_name(MoveKind k);

/// Where and how a move applies. Which fields are read depends on the kind:
///   r1:        arc, loop_right, pass_over
///   r1_inv:    region (the kink monogon)
///   r2:        arc (moving strand), target_arc, region (the region pushed
///              through), pass_over (moving strand passes over)
///   r2_inv:    region (the bigon)
///   r3:        region (the triangle)
///   twist:     arc, loop_right, pass_over (kink, then triangle slide)
///   twist_inv: region (the triangle), monogon (the kink to remove after)
struct MoveDescriptor {
    MoveKind kind = MoveKind::r1;
    int arc = -1;
    int target_arc = -1;
    int region = -1;
    int monogon = -1;
    bool loop_right = true;
    bool pass_over = false;
};

struct RegionCorrespondence {
    std::vector<int> deleted;
    std::vector<std::pair<int, std::string>> created; // id, role
    std::vector<std::pair<int, int>> merged;          // from -> into
};

struct R1Hints {
    int crossing = -1;
    int monogon = -1, doubled = -1, other = -1;
};
struct R1InvHints {
    int monogon = -1, doubled = -1, other = -1;
};
struct R2Hints {
    int cross_first = -1, cross_second = -1;
    int bigon = -1;
    int piece_kept = -1; // keeps the split region's id
    int piece_copy = -1; // fresh id, same value
    int far_moving = -1, far_target = -1;
};
struct R2InvHints {
    int bigon = -1, kept = -1, merged = -1;
};
struct R3Hints {
    int old_triangle = -1, new_triangle = -1;
    int cross_star = -1; // crossing of the top and bottom strands
    int o_star = -1;     // region opposite the triangle there
    int e_mid = -1;      // region across the middle strand's edge
    int e_top = -1, e_bot = -1;
    int o_1 = -1, o_2 = -1; // opposite regions at the middle strand's crossings
};

using MoveHints = std::variant<R1Hints, R1InvHints, R2Hints, R2InvHints, R3Hints>;

struct MoveResult {
    LinkDiagram diagram;
    RegionCorrespondence corr;
    std::vector<MoveHints> hints; // one per primitive move (twist expands to two)
    std::vector<MoveDescriptor> primitives;
};

/// Rewrite the diagram under one move. When `colors` is given, arc colors
/// are carried across the rewrite (new arcs receive colors derived from the
/// crossing relations) and returned through `colors_out`.
MoveResult apply_move(const LinkDiagram& d, const MoveDescriptor& m,
                      const ArcColors* colors = nullptr, ArcColors* colors_out = nullptr);

/// All primitive move sites applicable to the diagram.
std::vector<MoveDescriptor> enumerate_moves(const LinkDiagram& d);

/// Fill in colors for newly created arcs from the crossing relations.
void complete_colors(const LinkDiagram& d, ArcColors& colors);

std::string format_move(const MoveDescriptor& m);
MoveDescriptor parse_move_line(const std::string& line);

} // namespace optvol

#endif
