#ifndef OPTVOL_SOLUTION_HPP
#define OPTVOL_SOLUTION_HPP

#include "optvol/config.hpp"
#include "optvol/diagram.hpp"

#include <map>

namespace optvol {

/// Region-indexed complex values, a candidate solution of the region
/// equations. `essential` means: all values nonzero and values differ on
/// every pair of regions adjacent across an arc.
struct SolutionVector {
    std::map<int, cplx> values;
    bool essential = false;

    cplx at(int region) const {
        auto it = values.find(region);
        if (it == values.end())
            throw validation_error("no value for region " + std::to_string(region));
        return it->second;
    }
};

bool is_essential(const LinkDiagram& d, const std::map<int, cplx>& values, double tol);

SolutionVector make_solution(const LinkDiagram& d, std::map<int, cplx> values, double tol);

} // namespace optvol

#endif
