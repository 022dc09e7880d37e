#ifndef OPTVOL_TRANSPORT_HPP
#define OPTVOL_TRANSPORT_HPP

#include "optvol/moves.hpp"
#include "optvol/solution.hpp"
#include "optvol/volume.hpp"

#include <span>

namespace optvol {

/// Kink relation: the new region value is 2 w_b - w_a, where w_b is the
/// region doubled around the kink and w_a the region behind the strand.
cplx transport_r1(cplx wa, cplx wb);

/// Triangle relation w_d w_g - w_c w_e = w_a w_h - w_b w_f solved for w_h.
cplx transport_r3(cplx wa, cplx wb, cplx wc, cplx wd, cplx we, cplx wf, cplx wg);

/// Twisting move: forward creates w_f = 2 w_a - w_b and w_g with
/// w_d w_g - w_c w_e = w_f w_b - w_a^2; reverse restores w_b = 2 w_a - w_f.
std::pair<cplx, cplx> transport_twist_forward(cplx wa, cplx wb, cplx wc, cplx wd, cplx we);
cplx transport_twist_reverse(cplx wa, cplx wf);

/// Solve the bigon value created by a second move from the equation of the
/// region `eq_region` on the post-move diagram; every region value except
/// the bigon's must be present.
cplx solve_r2_bigon(const LinkDiagram& after, const std::map<int, cplx>& values, int bigon,
                    int eq_region, double tol);

/// Carry a solution across one applied move (values only; no verification).
SolutionVector transport_values(const LinkDiagram& after, const MoveResult& res,
                                const SolutionVector& w, const Config& cfg);

struct TransportStep {
    MoveDescriptor move;
    RegionCorrespondence corr;
    std::map<int, cplx> created_values;
    double max_residual = 0.0;
    bool essential = false;
    ComplexVolume volume;
};

struct TransportOutcome {
    LinkDiagram diagram;
    SolutionVector solution;
    std::vector<TransportStep> steps;
};

/// Apply the plan move by move, transporting the solution and verifying the
/// region equations and essentialness after every step.
TransportOutcome transport_sequence(const LinkDiagram& d, const SolutionVector& w,
                                    std::span<const MoveDescriptor> plan, const Config& cfg);

} // namespace optvol

#endif
