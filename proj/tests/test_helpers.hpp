#ifndef OPTVOL_TEST_HELPERS_HPP
#define OPTVOL_TEST_HELPERS_HPP

#include "optvol/coloring.hpp"
#include "optvol/diagram.hpp"
#include "optvol/io.hpp"

#include <cmath>
#include <random>
#include <string>

namespace optvol::testing {

inline std::string data_path(const std::string& name) {
    return std::string(OPTVOL_DATA_DIR) + "/" + name;
}

inline LinkDiagram load_diagram(const std::string& name) {
    LinkDiagram d = LinkDiagram::parse(read_file(data_path(name)));
    d.compute_regions();
    return d;
}

// two roots of t^2 + t + 1 = 0
inline cplx root_t(bool lower) {
    const double s = std::sqrt(3.0) / 2.0;
    return {-0.5, lower ? -s : s};
}

// figure-eight arc colors of the example representation at a given root
inline ArcColors fig8_colors(cplx t) {
    const Parabolic a1{cplx(0.0), t};
    const Parabolic a2{cplx(1.0), cplx(0.0)};
    const Parabolic a3{-t, 1.0 + t};
    const Parabolic a4{-t, t};
    return {{1, a1}, {2, a1}, {3, a2}, {4, a2}, {5, a3}, {6, a3}, {7, a4}, {8, a4}};
}

inline ArcColors trefoil_colors() {
    const Parabolic x{cplx(0.0), cplx(1.0)};
    const Parabolic y{cplx(1.0), cplx(0.0)};
    const Parabolic z{cplx(-1.0), cplx(1.0)};
    return {{1, z}, {2, z}, {3, y}, {4, y}, {5, x}, {6, x}};
}

inline ArcColors kink_colors() {
    const Parabolic x{cplx(1.0), cplx(1.0)};
    return {{1, x}, {2, x}};
}

// the regions the worked example labels w_1..w_6, found by their slots
struct Fig8Regions {
    int w1, w2, w3, w4, w5, w6;
};

inline Fig8Regions fig8_regions(const LinkDiagram& d) {
    Fig8Regions r;
    r.w3 = d.region_at(1, RegionSlot::a);
    r.w2 = d.region_at(1, RegionSlot::b);
    r.w1 = d.region_at(1, RegionSlot::c);
    r.w4 = d.region_at(1, RegionSlot::d);
    r.w6 = d.region_at(2, RegionSlot::d);
    r.w5 = d.region_at(3, RegionSlot::d);
    return r;
}

inline double rnd_uniform(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

inline cplx rnd_cplx(std::mt19937_64& rng, double radius = 3.0) {
    return {radius * (2.0 * rnd_uniform(rng) - 1.0), radius * (2.0 * rnd_uniform(rng) - 1.0)};
}

inline Parabolic rnd_parabolic(std::mt19937_64& rng) {
    for (;;) {
        Parabolic p{rnd_cplx(rng), rnd_cplx(rng)};
        if (std::abs(p.alpha) + std::abs(p.beta) > 0.3)
            return p;
    }
}

} // namespace optvol::testing

#endif
