#ifndef ZETALAB_KERNEL_IE_HPP
#define ZETALAB_KERNEL_IE_HPP

#include <array>

#include "zetalab/quadrature.hpp"
#include "zetalab/special_functions.hpp"
#include "zetalab/types.hpp"

namespace zetalab::kernel {

/// K(sigma, t, tau) = Gamma(it - i tau t) Gamma(sigma + i tau t) / Gamma(sigma + i t),
/// formed from log-gamma differences. Near tau = 1 (|t(1-tau)| < 1/2) a Taylor
/// form keeps Re{K} accurate where the direct exponential loses it.
cx kernel_K(const StripPoint& p, double tau);

/// Exact forcing term of the integral equation. Away from sigma = 1/2 the
/// gamma-ratio/zeta expression is used; at sigma = 1/2 the digamma form.
double G_exact(const StripPoint& p);

/// Leading large-t form of the forcing term, no error terms.
double G_asym(const StripPoint& p);

/// Both sides of the windowed integral equation at one strip point:
///   lhs = (t/pi) * int_{-t^{d1-1}}^{1+t^{d4-1}} Re{K} |zeta(sigma + i tau t)|^2 dtau
///   rhs = -G_exact
/// The quadrature phase budget is scaled with `tol` so the reported residual
/// tracks the requested tolerance until the window-tail floor takes over.
ResidualReport ie_residual(const StripPoint& p, const DeltaWindow& w, double tol);

/// The same integral split over the four subintervals
///   [-t^{d1-1}, 1/t], [1/t, t^{d2-1}], [t^{d2-1}, 1-t^{d3-1}], [1-t^{d3-1}, 1+t^{d4-1}].
std::array<QuadResult, 4> I_split(const StripPoint& p, const DeltaWindow& w, double tol);

/// One subinterval of the split (index 0..3). The first two windows stay
/// cheap even at large t, where the third would price in zeta evaluations at
/// heights up to t.
QuadResult I_window(const StripPoint& p, const DeltaWindow& w, double tol, int index);

/// Second moment int_1^T |zeta(1/2 + i rho)|^2 d rho by adaptive quadrature.
double atkinson_moment(double T, double tol = 1e-7);

/// Second-moment variant off the critical line, same integration machinery.
double second_moment(double sigma, double T, double tol = 1e-7);

} // namespace zetalab::kernel

#endif
