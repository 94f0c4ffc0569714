#ifndef ZETALAB_ASYMPTOTICS_HPP
#define ZETALAB_ASYMPTOTICS_HPP

#include <functional>

#include "zetalab/contour.hpp"
#include "zetalab/expsums.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/types.hpp"

namespace zetalab::asym {

// ---------------------------------------------------------------------------
// The oscillatory window integral J3 and its asymptotic pieces.
// ---------------------------------------------------------------------------

/// J3 = (t/pi) int_{t^{d2-1}}^{1-t^{d3-1}} Gamma(it-it*tau)/Gamma(sigma+it)
///        * Gamma(sigma+it*tau) * lambda^{i tau t} dtau,
/// by direct quadrature of the exact gamma-ratio integrand.
QuadResult J3_numeric(const StripPoint& p, double d2, double d3, double lambda, double tol);

/// The reduced form int G(sigma,tau) e^{i t F(tau,lambda)} dtau over the same
/// window, with G = (1-tau)^{-1/2} tau^{sigma-1/2} and
/// F = (1-tau)ln(1-tau) + tau ln(tau) + tau ln(lambda).
QuadResult J3_reduced(const StripPoint& p, double d2, double d3, double lambda, double tol);

/// Location and curvature of the reduced phase: F' = 0 at tau = 1/(1+lambda).
double J3_stationary_point(double lambda);
double J3_phase_at_stationary(double lambda);        // F(tau1) = -ln(1+1/lambda)
double J3_phase_curvature(double lambda);            // F_tt(tau1) = (1+lambda)^2/lambda

struct StationaryTerm {
    cx value{0.0, 0.0};
    bool applicable = false; // stationary point inside the window
};

/// Leading stationary-phase term sqrt(2 pi/t) e^{i pi/4} lambda^{it}/(1+lambda)^{sigma+it}.
/// `applicable` is false when the stationary point falls outside
/// (1/(t^{1-d3}-1), t^{1-d2}-1); the value is then absent from the asymptotics.
StationaryTerm J3_S(const StripPoint& p, double d2, double d3, double lambda);

/// Upper-endpoint integration-by-parts term. Throws transition_zone_error if
/// the stationary point sits within three Fresnel widths of the endpoint.
cx J3_U(const StripPoint& p, double d3, double lambda);

/// Lower-endpoint term, same transition handling.
cx J3_L(const StripPoint& p, double d2, double lambda);

struct I3Parts {
    cx total{0.0, 0.0};
    cx band_sum_part{0.0, 0.0};     // 2 Re of the shifted-denominator band sum
    cx endpoint_sum_part{0.0, 0.0}; // assembled upper-endpoint double sum
    std::int64_t excluded_pairs = 0;
};

/// Sum-assembled leading form of the third window integral: the mid-band sum
/// minus the upper-endpoint double sum (transition-band pairs excluded).
I3Parts I3_tilde(const StripPoint& p, double d2, double d3, double band_width_c = 1.0,
                 const sums::SumConfig& cfg = {});

// ---------------------------------------------------------------------------
// The digamma-reflection series and the closed fourth-window forms.
// ---------------------------------------------------------------------------

struct ReflectionPair {
    cx series_value{0.0, 0.0};
    cx closed_value{0.0, 0.0};
};

/// S = (1/2pi) sum_k (1/(k+1-b) - 1/(k+b)), b = 1/4 - (i/2pi) ln A, evaluated
/// as a truncated series with an O(k^-2) tail correction, against the closed
/// form (i/2)(-1 + 2/(1-iA)).
ReflectionPair S_reflection(cx A, std::int64_t terms);

/// Principal-value quadrature of
///   int_{-t^{d4}}^{t^{d3}} e^{pi x/2} A^{ix} / (e^{-pi x} - e^{pi x})
///       (1-x/t)^{sigma-1/2} e^{ix} (1-x/t)^{i(t-x)} dx.
/// With `reduced_kernel` the slowly-varying (1-x/t) factors are dropped; that
/// is the integrand whose closed evaluation J4_tilde_closed reproduces exactly
/// (the full form differs from it by a genuine O(t^{2 max(d3,d4) - 1}) term).
QuadResult J4_tilde_numeric(const StripPoint& p, double d3, double d4, cx A, double tol,
                            bool reduced_kernel = false);

/// Leading closed form (i/2)(-1+2/(1-iA)) + e^{i t^{d3} ln A} e^{-pi t^{d3}/2}/(pi/2 - i ln A).
cx J4_tilde_closed(double t, double d3, cx A);

// ---------------------------------------------------------------------------
// E4: the Hankel-contour steepest-descent factor.
// ---------------------------------------------------------------------------

/// The Hankel integral
///   E4(t, d3, M) = (1/pi) int_H e^z/z
///       e^{i t^{d3} ln(M z) - pi t^{d3}/2} / (pi/2 - i ln(M z)) dz
/// over the radius-1 contour in z (equivalently radius t^{-d3} in the scaled
/// variable). Computed on a Cauchy-equivalent saddle-adapted path (stable in
/// double precision for large t^{d3}), with the residue crossing accounted
/// exactly. Throws if the integrand pole sits on the contour (M = 1).
QuadResult E4_numeric(double t, double d3, double M, double tol);

/// Literal Hankel quadrature of the scaled form on a circle of the given
/// radius (1 or t^{-d3}); usable at desk scale t where the lip growth
/// e^{t^{d3} pi/2} is still representable. Deformation invariance between the
/// two radii against the residue term is a direct check of the contour logic.
QuadResult E4_hankel_raw(double t, double d3, double M, double radius, double tol);

/// Leading steepest-descent value of the E4 factor.
cx E4_sd_leading(double t, double d3, double M);

struct E4Parts {
    cx total{0.0, 0.0};
    cx pole_term{0.0, 0.0};
    cx sd_term{0.0, 0.0};
    bool pole_present = false;
};

/// Pole + steepest-descent decomposition: pole term 2 e^{-i/M} present iff
/// m1/m2 = M t lies in (t^{1-d3}, t); sd term is the leading saddle value.
/// Throws transition_zone_error when the pole is within `band_factor` saddle
/// widths (t^{-d3/2}) of the saddle.
E4Parts E4_decomposed(double t, double d3, double M, double band_factor = 3.0);

/// Direct PV quadrature of the fourth-window kernel transform
///   (1/pi) int_{-t^{d4}}^{t^{d3}} Gamma(ix) Gamma(sigma+it-ix)/Gamma(sigma+it) r^{ix} dx,
/// r = m1/m2, for spot checks against the -1 + E4 form.
QuadResult J4_direct(const StripPoint& p, double d3, double d4, double ratio, double tol);

struct I4Parts {
    cx total{0.0, 0.0};
    cx plain_sum_part{0.0, 0.0};
    cx pole_sum_part{0.0, 0.0};
    cx sd_sum_part{0.0, 0.0};
    std::int64_t excluded_pairs = 0;
};

/// Sum-assembled leading form of the fourth window integral.
I4Parts I4_tilde(const StripPoint& p, double d3, double d4, double band_width_c = 1.0,
                 const sums::SumConfig& cfg = {});

// ---------------------------------------------------------------------------
// Generic stationary phase.
// ---------------------------------------------------------------------------

struct PhaseProblem {
    std::function<double(double, double)> amplitude; // g(t, tau)
    std::function<double(double)> phase;             // f(tau)
    std::function<double(double)> phase_d1;          // f'
    std::function<double(double)> phase_d2;          // f''
    double lambda = 1.0;                             // F = f + tau*ln(lambda)
    double window_a = 0.0, window_b = 1.0;
};

struct StationaryPhaseResult {
    cx value{0.0, 0.0};
    double tau1 = 0.0;
    bool found = false;        // interior stationary point exists
    double endpoint_a_term = 0.0; // |g(a)/(t F'(a))| diagnostics
    double endpoint_b_term = 0.0;
};

/// Leading term sqrt(2pi/(t|F''|)) g(t,tau1) e^{i t F(tau1) + i pi/4 sgn F''}
/// for int g e^{itF}; endpoint first-order magnitudes returned as diagnostics.
StationaryPhaseResult stationary_phase_generic(const PhaseProblem& prob, double t);

} // namespace zetalab::asym

#endif
