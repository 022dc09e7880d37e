#ifndef OPTVOL_DILOG_HPP
#define OPTVOL_DILOG_HPP

#include "optvol/config.hpp"

namespace optvol {

/// Principal-branch complex logarithm, imaginary part in (-pi, pi].
/// Inputs on the negative real axis are taken from above the cut.
cplx log_principal(cplx z);

/// Complex dilogarithm Li2 on the principal branch (cut along [1, inf),
/// approached from above). Total function; Li2(1) = pi^2/6.
cplx li2(cplx z);

} // namespace optvol

#endif
