#ifndef OPTVOL_CONFIG_HPP
#define OPTVOL_CONFIG_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace optvol {

using cplx = std::complex<double>;

/// Run-wide numeric and reproducibility settings.
struct Config {
    double tolerance = 1e-9;     // equality / residual tolerance
    std::uint64_t seed = 1;      // RNG seed for region-color selection
    int retry_budget = 64;       // resampling attempts in select_generic
    double sample_radius = 10.0; // disk radius for Hopf-image sampling
};

// Error taxonomy maps onto CLI exit codes: parse/validation -> 2, numeric -> 3.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& m) : std::runtime_error(m) {}
};
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& m) : std::runtime_error(m) {}
};
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& m) : std::runtime_error(m) {}
};

} // namespace optvol

#endif
