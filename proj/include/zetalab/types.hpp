#ifndef ZETALAB_TYPES_HPP
#define ZETALAB_TYPES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace zetalab {

using cx = std::complex<double>;

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// Evaluation point on the critical strip: s = sigma + i*t, 0 < sigma < 1, t > 0.
struct StripPoint {
    double sigma;
    double t;

    cx s() const { return {sigma, t}; }
    cx s_bar() const { return {sigma, -t}; }

    void validate() const {
        if (!(sigma > 0.0 && sigma < 1.0))
            throw std::domain_error("StripPoint: sigma must lie in (0,1), got " +
                                    std::to_string(sigma));
        if (!(t > 0.0))
            throw std::domain_error("StripPoint: t must be positive, got " + std::to_string(t));
    }
};

/// Window exponents (d1..d4) controlling the t-dependent cutoffs t^{d-1}
/// that localize the kernel support and split it into the four subintervals.
struct DeltaWindow {
    double d1 = 0.45;
    double d2 = 0.5;
    double d3 = 0.5;
    double d4 = 0.45;

    void validate(double t) const {
        for (double d : {d1, d2, d3, d4})
            if (!(d > 0.0 && d < 1.0))
                throw std::domain_error("DeltaWindow: deltas must lie in (0,1)");
        // the middle interval [t^{d2-1}, 1-t^{d3-1}] must be nonempty
        if (!(std::pow(t, d2 - 1.0) < 1.0 - std::pow(t, d3 - 1.0)))
            throw std::domain_error("DeltaWindow: t^{d2-1} < 1 - t^{d3-1} fails at t = " +
                                    std::to_string(t));
    }
};

/// Value of a numerical integral together with an error estimate and the
/// number of integrand evaluations spent.
struct QuadResult {
    cx value{0.0, 0.0};
    double abs_error_estimate = 0.0;
    std::int64_t evaluations = 0;
};

/// Value of a finite (double) sum: exact up to rounding. `compensation`
/// is the residual of the compensated accumulation, a cheap bound on the
/// rounding left on the table.
struct SumValue {
    cx value{0.0, 0.0};
    std::int64_t terms = 0;
    double compensation = 0.0;
};

/// Two sides of an identity plus their absolute and relative discrepancy.
struct ResidualReport {
    cx lhs{0.0, 0.0};
    cx rhs{0.0, 0.0};
    double abs_err = 0.0;
    double rel_err = 0.0;
};

inline ResidualReport make_residual(cx lhs, cx rhs) {
    ResidualReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_err = std::abs(lhs - rhs);
    double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    r.rel_err = r.abs_err / scale;
    return r;
}

/// Thrown when adaptive integration hits its subdivision limit; carries the
/// best estimate obtained so far.
class quadrature_error : public std::runtime_error {
  public:
    quadrature_error(const std::string& what, QuadResult best)
        : std::runtime_error(what), best_estimate(best) {}
    QuadResult best_estimate;
};

/// Thrown when an asymptotic formula is requested inside a transition zone
/// (stationary point at an endpoint, pole at a saddle) where it is invalid.
class transition_zone_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

} // namespace zetalab

#endif
