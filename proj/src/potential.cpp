#include "optvol/potential.hpp"

#include "optvol/dilog.hpp"

#include <cmath>
#include <numbers>

namespace optvol {

namespace {

constexpr double pi2_over_6 = std::numbers::pi * std::numbers::pi / 6.0;

struct SlotValues {
    cplx a, b, c, d;
};

SlotValues slot_values(const CrossingPotential& cp, const SolutionVector& w) {
    return {w.at(cp.at(RegionSlot::a)), w.at(cp.at(RegionSlot::b)),
            w.at(cp.at(RegionSlot::c)), w.at(cp.at(RegionSlot::d))};
}

void require_nonzero(const SlotValues& v) {
    if (v.a == cplx{} || v.b == cplx{} || v.c == cplx{} || v.d == cplx{})
        throw numeric_error("region value is zero (solution not essential)");
}

} // namespace

bool is_essential(const LinkDiagram& d, const std::map<int, cplx>& values, double tol) {
    for (const auto& r : d.regions()) {
        auto it = values.find(r.id);
        if (it == values.end())
            return false;
        if (std::abs(it->second) <= tol)
            return false;
    }
    for (const auto& [p, q] : d.adjacent_region_pairs()) {
        const cplx wp = values.at(p), wq = values.at(q);
        const double scale = std::max({1.0, std::abs(wp), std::abs(wq)});
        if (std::abs(wp - wq) <= tol * scale)
            return false;
    }
    return true;
}

SolutionVector make_solution(const LinkDiagram& d, std::map<int, cplx> values, double tol) {
    SolutionVector s;
    s.values = std::move(values);
    s.essential = is_essential(d, s.values, tol);
    return s;
}

std::vector<CrossingPotential> build_potential(const LinkDiagram& d) {
    if (!d.regions_computed())
        throw validation_error("regions not computed");
    std::vector<CrossingPotential> out;
    for (const auto& c : d.crossings()) {
        CrossingPotential cp;
        cp.crossing = c.id;
        cp.sign = c.sign;
        for (int s = 0; s < 4; ++s)
            cp.region[size_t(s)] = c.region_slot(RegionSlot(s));
        out.push_back(cp);
    }
    return out;
}

cplx eval_W_crossing(const CrossingPotential& cp, const SolutionVector& w) {
    const auto [a, b, c, d] = slot_values(cp, w);
    require_nonzero({a, b, c, d});
    const cplx value = -li2(c / b) - li2(c / d) + li2(a * c / (b * d)) + li2(b / a) +
                       li2(d / a) - pi2_over_6 +
                       log_principal(b / a) * log_principal(d / a);
    return cp.sign == Sign::positive ? value : -value;
}

cplx eval_W(std::span<const CrossingPotential> pot, const SolutionVector& w) {
    cplx sum = 0.0;
    for (const auto& cp : pot) // canonical crossing order keeps runs reproducible
        sum += eval_W_crossing(cp, w);
    return sum;
}

cplx corner_weight(const CrossingPotential& cp, RegionSlot s, const SolutionVector& w) {
    const auto [a, b, c, d] = slot_values(cp, w);
    cplx num, den;
    switch (s) {
    case RegionSlot::a:
        num = (b - a) * (d - a);
        den = b * d - c * a;
        break;
    case RegionSlot::c:
        num = (b - c) * (d - c);
        den = b * d - a * c;
        break;
    case RegionSlot::b:
        num = a * c - d * b;
        den = (a - b) * (c - b);
        break;
    case RegionSlot::d:
        num = a * c - b * d;
        den = (a - d) * (c - d);
        break;
    }
    if (cp.sign == Sign::negative)
        std::swap(num, den);
    if (den == cplx{})
        throw numeric_error("degenerate corner weight denominator (solution not essential)");
    return num / den;
}

cplx region_equation(std::span<const CrossingPotential> pot, const LinkDiagram& d, int k,
                     const SolutionVector& w) {
    cplx prod = 1.0;
    for (const auto& cr : d.region(k).corners) {
        for (const auto& cp : pot) {
            if (cp.crossing != cr.crossing)
                continue;
            const RegionSlot s = d.crossing(cr.crossing).slot_of_corner(cr.corner);
            prod *= corner_weight(cp, s, w);
        }
    }
    return prod;
}

cplx eval_log_derivative(std::span<const CrossingPotential> pot, const LinkDiagram& d, int k,
                         const SolutionVector& w) {
    // termwise differentiation of the crossing potential,
    // d Li2(z)/dz = -log(1-z)/z
    cplx sum = 0.0;
    for (const auto& cr : d.region(k).corners) {
        for (const auto& cp : pot) {
            if (cp.crossing != cr.crossing)
                continue;
            const RegionSlot s = d.crossing(cr.crossing).slot_of_corner(cr.corner);
            const auto [a, b, c, d_] = slot_values(cp, w);
            require_nonzero({a, b, c, d_});
            const cplx cross = a * c / (b * d_);
            cplx term;
            switch (s) {
            case RegionSlot::a:
                term = -log_principal(1.0 - cross) + log_principal(1.0 - b / a) +
                       log_principal(1.0 - d_ / a) - log_principal(b / a) -
                       log_principal(d_ / a);
                break;
            case RegionSlot::b:
                term = log_principal(1.0 - cross) - log_principal(1.0 - c / b) -
                       log_principal(1.0 - b / a) + log_principal(d_ / a);
                break;
            case RegionSlot::c:
                term = log_principal(1.0 - c / b) + log_principal(1.0 - c / d_) -
                       log_principal(1.0 - cross);
                break;
            case RegionSlot::d:
                term = log_principal(1.0 - cross) - log_principal(1.0 - c / d_) -
                       log_principal(1.0 - d_ / a) + log_principal(b / a);
                break;
            }
            sum += cp.sign == Sign::positive ? term : -term;
        }
    }
    return sum;
}

VerifyReport verify_solution(std::span<const CrossingPotential> pot, const LinkDiagram& d,
                             const SolutionVector& w, double tol) {
    VerifyReport rep;
    for (const auto& r : d.regions()) {
        const cplx prod = region_equation(pot, d, r.id, w);
        const double res = std::abs(prod - 1.0);
        rep.residuals[r.id] = res;
        rep.max_residual = std::max(rep.max_residual, res);
    }
    rep.verified = rep.max_residual < tol;
    return rep;
}

} // namespace optvol
