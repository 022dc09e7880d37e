#include "optvol/volume.hpp"

#include "optvol/dilog.hpp"

#include <cmath>
#include <numbers>

namespace optvol {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double pi_sq = pi * pi;
constexpr double two_pi = 2.0 * pi;
} // namespace

double normalize_cs(double cs) {
    double r = std::fmod(cs, pi_sq);
    if (r <= -pi_sq / 2.0)
        r += pi_sq;
    else if (r > pi_sq / 2.0)
        r -= pi_sq;
    return r;
}

ComplexVolume eval_W0(std::span<const CrossingPotential> pot, const LinkDiagram& d,
                      const SolutionVector& w, const Config& cfg) {
    const VerifyReport rep = verify_solution(pot, d, w, cfg.tolerance);
    ComplexVolume cv;
    cv.residual_max = rep.max_residual;
    cv.verified = rep.verified;
    if (!rep.verified)
        throw numeric_error("solution does not satisfy the region equations (max residual " +
                            std::to_string(rep.max_residual) + ")");

    cplx correction = 0.0;
    for (const auto& r : d.regions()) {
        const cplx ld = eval_log_derivative(pot, d, r.id, w);
        const long m = std::lround(ld.imag() / two_pi);
        // at a solution the log-derivative is exactly 2 pi i m_k; rounding
        // suppresses accumulated floating-point noise in the correction
        if (std::abs(ld - cplx(0.0, two_pi * double(m))) > 1e-6)
            throw numeric_error("log-derivative of region " + std::to_string(r.id) +
                                " is not close to 2 pi i Z");
        cv.flattening[r.id] = m;
        correction += cplx(0.0, two_pi * double(m)) * log_principal(w.at(r.id));
    }
    cv.W0 = eval_W(pot, w) - correction;
    cv.vol = cv.W0.imag();
    cv.cs = normalize_cs(-cv.W0.real());
    return cv;
}

ModPi2 compare_mod_pi2(cplx x, cplx y, double tol) {
    const cplx diff = x - y;
    const double k = std::round(diff.real() / pi_sq);
    const double re_dev = std::abs(diff.real() - k * pi_sq);
    const double im_dev = std::abs(diff.imag());
    ModPi2 out;
    out.deviation = std::max(re_dev, im_dev);
    out.equal = out.deviation < tol;
    return out;
}

} // namespace optvol
