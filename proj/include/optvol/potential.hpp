#ifndef OPTVOL_POTENTIAL_HPP
#define OPTVOL_POTENTIAL_HPP

#include "optvol/diagram.hpp"
#include "optvol/solution.hpp"

#include <map>
#include <span>
#include <vector>

namespace optvol {

/// Per-crossing term of the potential function: five dilogarithms, a
/// constant and a log product in the four region variables at slots a..d.
struct CrossingPotential {
    int crossing = 0;
    Sign sign = Sign::positive;
    std::array<int, 4> region{}; // region ids at slots a, b, c, d
    int at(RegionSlot s) const { return region[size_t(int(s))]; }
};

std::vector<CrossingPotential> build_potential(const LinkDiagram& d);

/// Value of the full potential function at the given region values.
cplx eval_W(std::span<const CrossingPotential> pot, const SolutionVector& w);

/// Value of the single crossing term.
cplx eval_W_crossing(const CrossingPotential& cp, const SolutionVector& w);

/// Closed-form corner weight at one slot of one crossing; the product of
/// these over a region's corners is exp(w_k dW/dw_k).
cplx corner_weight(const CrossingPotential& cp, RegionSlot s, const SolutionVector& w);

/// Product of corner weights over every corner of region k.
cplx region_equation(std::span<const CrossingPotential> pot, const LinkDiagram& d, int k,
                     const SolutionVector& w);

/// Principal-branch value of w_k dW/dw_k as a sum of log terms.
cplx eval_log_derivative(std::span<const CrossingPotential> pot, const LinkDiagram& d, int k,
                         const SolutionVector& w);

struct VerifyReport {
    std::map<int, double> residuals; // region -> |product - 1|
    double max_residual = 0.0;
    bool verified = false;
};

VerifyReport verify_solution(std::span<const CrossingPotential> pot, const LinkDiagram& d,
                             const SolutionVector& w, double tol);

} // namespace optvol

#endif
