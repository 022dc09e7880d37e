#ifndef OPTVOL_VOLUME_HPP
#define OPTVOL_VOLUME_HPP

#include "optvol/potential.hpp"

namespace optvol {

/// Complex volume extracted from W0 = W - sum_k (w_k dW/dw_k) log w_k:
/// vol = Im W0 and cs = -Re W0 reported mod pi^2, normalized into
/// (-pi^2/2, pi^2/2].
struct ComplexVolume {
    double vol = 0.0;
    double cs = 0.0;
    cplx W0{};
    double residual_max = 0.0;
    bool verified = false;
    std::map<int, long> flattening; // region -> m_k with w_k dW/dw_k = 2 pi i m_k
};

/// Evaluate W0 at a solution. Throws numeric_error if the solution does not
/// satisfy the region equations within tolerance.
ComplexVolume eval_W0(std::span<const CrossingPotential> pot, const LinkDiagram& d,
                      const SolutionVector& w, const Config& cfg);

struct ModPi2 {
    bool equal = false;
    double deviation = 0.0;
};

/// True iff x - y is within tolerance of an integer multiple of pi^2
/// (imaginary parts compared directly).
ModPi2 compare_mod_pi2(cplx x, cplx y, double tol);

double normalize_cs(double cs);

} // namespace optvol

#endif
