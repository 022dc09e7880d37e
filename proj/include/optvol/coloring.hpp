#ifndef OPTVOL_COLORING_HPP
#define OPTVOL_COLORING_HPP

#include "optvol/moves.hpp"
#include "optvol/solution.hpp"

#include <optional>
#include <span>

namespace optvol {

/// Arc colors (one parabolic element per arc, induced by the representation),
/// region colors (determined by one seed up to the propagation rule) and the
/// auxiliary element p.
struct ShadowColoring {
    ArcColors arcs;
    std::map<int, Parabolic> regions;
    Parabolic p;
};

struct ColoringReport {
    bool ok = true;
    bool all_exact = true;
    std::vector<std::string> failures;
};

/// Check a_out = +-(a_in * a_over) at every crossing, and that the over
/// strand keeps its color across the crossing (up to sign).
ColoringReport validate_arc_coloring(const LinkDiagram& d, const ArcColors& colors, double tol);

/// Region-color propagation: across an arc with color x the region on the
/// left equals (region on the right) * x. Consistency is checked on every
/// arc once the breadth-first sweep completes.
std::map<int, Parabolic> propagate_regions(const LinkDiagram& d, const ArcColors& colors,
                                           int seed_region, const Parabolic& seed, double tol);

/// The genericity condition at every arc: the Hopf images of the arc color
/// and its two flanking region colors are pairwise distinct.
bool region_coloring_generic(const LinkDiagram& d, const ArcColors& colors,
                             const std::map<int, Parabolic>& regions, double tol);

/// h(p) must avoid every arc-color and region-color Hopf image.
bool p_admissible(const Parabolic& p, const ArcColors& colors,
                  const std::map<int, Parabolic>& regions, double tol);

/// Choose a region coloring and p by seeded sampling so that genericity and
/// essentialness hold on the diagram and on every diagram reached by the
/// optional move plan. Explicit overrides are validated instead of sampled.
ShadowColoring select_generic(const LinkDiagram& d, const ArcColors& colors,
                              std::span<const MoveDescriptor> plan, const Config& cfg,
                              std::optional<std::pair<int, Parabolic>> seed_override = {},
                              std::optional<Parabolic> p_override = {});

/// w_k = det(p, s_k).
SolutionVector construct_solution(const LinkDiagram& d, const ShadowColoring& sc, double tol);

/// Rebuild a shadow-coloring from an essential solution, with p = (1, 0).
/// Arc colors must already be normalized so that no Hopf image is infinite.
ShadowColoring reconstruct_coloring(const LinkDiagram& d, const ArcColors& colors,
                                    const SolutionVector& w, double tol);

} // namespace optvol

#endif
