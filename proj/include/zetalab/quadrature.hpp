#ifndef ZETALAB_QUADRATURE_HPP
#define ZETALAB_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "zetalab/types.hpp"

namespace zetalab::quad {

using integrand = std::function<cx(double)>;

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    // Upper bound on |d(phase)/dx| of the integrand, if known. Above 50 per
    // unit length the interval is pre-split so each panel carries at most
    // `phase_per_panel` radians of phase.
    double phase_derivative_bound = 0.0;
    double phase_per_panel = 0.78539816339744830962; // pi/4
    std::int64_t max_panels = 4'000'000;
    // Split the initial panel evaluation across threads (results are merged
    // in panel order, so the value is thread-count independent).
    bool parallel_presplit = false;
    // Extra interior points the panel structure must respect.
    std::vector<double> split_points{};
};

/// Adaptive Gauss-Kronrod (7,15) integration of a complex integrand on [a,b].
/// Throws quadrature_error (carrying the best estimate) if the subdivision
/// limit is reached before the tolerance.
QuadResult integrate(const integrand& f, double a, double b, const Options& opt = {});

/// Cauchy principal value of integral_a^b f, where f has (at worst) a simple
/// pole at c in (a,b). Realized by the symmetric pairing
///   int_0^h [f(c+u) + f(c-u)] du + remainder,  h = min(c-a, b-c).
QuadResult integrate_pv(const integrand& f, double a, double b, double c,
                        const Options& opt = {});

} // namespace zetalab::quad

#endif
