#ifndef ZETALAB_SPECIAL_FUNCTIONS_HPP
#define ZETALAB_SPECIAL_FUNCTIONS_HPP

#include "zetalab/types.hpp"

namespace zetalab::sf {

/// Principal branch of ln Gamma(z), via recurrence-lifted Stirling series.
/// Accurate to ~1e-13 relative for |z| up to 1e9 away from the poles.
cx log_gamma(cx z);

/// Digamma Psi(z) = Gamma'(z)/Gamma(z).
cx digamma(cx z);

/// Trigamma Psi'(z).
cx trigamma(cx z);

/// Leading Stirling approximation of Gamma(sigma + i*xi) for xi > 0:
///   sqrt(2*pi) xi^{sigma-1/2} e^{-pi*xi/2} e^{-i*pi/4} e^{-i*xi} xi^{i*xi} e^{i*pi*sigma/2}
/// With `conjugate` set, the complex-conjugate form (argument sigma - i*xi).
/// No error term is included.
cx stirling_gamma(double sigma, double xi, bool conjugate = false);

struct ZetaOptions {
    // Euler-Maclaurin truncation: N = max(min_terms, ceil(term_factor*|Im s|)).
    int min_terms = 50;
    double term_factor = 2.0;
    std::int64_t max_terms = 5'000'000;
    int bernoulli_terms = 15; // corrections up to B_30
    // Optional Riemann-Siegel main sum + two correction terms, used for
    // sigma = 1/2 and |Im s| above the threshold when enabled.
    bool use_riemann_siegel = false;
    double riemann_siegel_threshold = 1e5;
};

/// Riemann zeta via Euler-Maclaurin; valid on the strip and for moderate
/// negative real parts. s = 1 is a pole (throws domain_error near it).
cx zeta(cx s, const ZetaOptions& opt = {});

/// |zeta(sigma + i t)|^2.
double zeta_abs_sq(const StripPoint& p, const ZetaOptions& opt = {});

/// Modified Hurwitz function zeta_1(s, alpha) = sum_{n>=1} (n+alpha)^{-s},
/// continued in s. alpha = 0 reduces to zeta(s).
cx hurwitz_zeta1(cx s, double alpha, const ZetaOptions& opt = {});

/// Riemann-Siegel theta function (asymptotic form, good for t >~ 10).
double riemann_siegel_theta(double t);

/// Z(t) from the Riemann-Siegel formula, main sum plus C0 and C1 terms.
double riemann_siegel_z(double t);

} // namespace zetalab::sf

#endif
