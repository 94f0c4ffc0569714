#include "zetalab/special_functions.hpp"

#include <array>
#include <cmath>

namespace zetalab::sf {

namespace {

constexpr double pi = 3.14159265358979323846264338327950288;

// B_2, B_4, ..., B_30
constexpr std::array<double, 15> bernoulli2k = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

bool near_nonpositive_integer(cx z, double tol = 1e-12) {
    if (z.real() > 0.5) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < tol && std::abs(z.imag()) < tol;
}

// Stirling series for ln Gamma(w); caller guarantees |w| large enough and
// |arg w| <= pi/2 + small (recurrence lifting keeps us off the negative axis).
cx stirling_series(cx w) {
    cx lw = std::log(w);
    cx r = (w - 0.5) * lw - w + 0.5 * std::log(2.0 * pi);
    cx w2 = w * w;
    cx wp = w;
    for (std::size_t k = 0; k < bernoulli2k.size(); ++k) {
        double n = 2.0 * double(k + 1);
        r += bernoulli2k[k] / (n * (n - 1.0)) / wp;
        wp *= w2;
    }
    return r;
}

} // namespace

cx log_gamma(cx z) {
    if (near_nonpositive_integer(z))
        throw std::domain_error("log_gamma: pole at non-positive integer z");
    // Shift right until the Stirling series is safe. Large |Im z| needs no
    // shift: the series handles |arg| ~ pi/2 once |z| is moderately big.
    cx acc{0.0, 0.0};
    cx w = z;
    while (w.real() < 10.0 && std::abs(w) < 1e8) {
        acc += std::log(w);
        w += 1.0;
    }
    return stirling_series(w) - acc;
}

cx digamma(cx z) {
    if (near_nonpositive_integer(z))
        throw std::domain_error("digamma: pole at non-positive integer z");
    cx acc{0.0, 0.0};
    cx w = z;
    while (w.real() < 10.0 && std::abs(w) < 1e8) {
        acc += 1.0 / w;
        w += 1.0;
    }
    // Psi(w) ~ ln w - 1/(2w) - sum B_2k / (2k w^{2k})
    cx r = std::log(w) - 0.5 / w;
    cx w2 = w * w;
    cx wp = w2;
    for (std::size_t k = 0; k < bernoulli2k.size(); ++k) {
        r -= bernoulli2k[k] / (2.0 * double(k + 1)) / wp;
        wp *= w2;
    }
    return r - acc;
}

cx trigamma(cx z) {
    if (near_nonpositive_integer(z))
        throw std::domain_error("trigamma: pole at non-positive integer z");
    cx acc{0.0, 0.0};
    cx w = z;
    while (w.real() < 10.0 && std::abs(w) < 1e8) {
        acc += 1.0 / (w * w);
        w += 1.0;
    }
    // Psi'(w) ~ 1/w + 1/(2w^2) + sum B_2k / w^{2k+1}
    cx r = 1.0 / w + 0.5 / (w * w);
    cx w2 = w * w;
    cx wp = w * w2;
    for (std::size_t k = 0; k < bernoulli2k.size(); ++k) {
        r += bernoulli2k[k] / wp;
        wp *= w2;
    }
    return r + acc;
}

cx stirling_gamma(double sigma, double xi, bool conjugate) {
    if (!(xi > 0.0)) throw std::domain_error("stirling_gamma: xi must be positive");
    double lx = std::log(xi);
    double mod_log = 0.5 * std::log(2.0 * pi) + (sigma - 0.5) * lx - 0.5 * pi * xi;
    double phase = -pi / 4.0 - xi + xi * lx + 0.5 * pi * sigma;
    if (conjugate) phase = -phase;
    return std::exp(cx{mod_log, phase});
}

namespace {

// Euler-Maclaurin core shared by zeta and the modified Hurwitz function:
//   sum_{n>=1} (n+alpha)^{-s}
// = sum_{n=1}^{N} (n+alpha)^{-s} + (N+alpha)^{1-s}/(s-1) - (N+alpha)^{-s}/2
//   + sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * (N+alpha)^{-s-2k+1}
cx euler_maclaurin(cx s, double alpha, const ZetaOptions& opt) {
    double target = std::ceil(opt.term_factor * std::abs(s.imag()));
    std::int64_t n_terms = std::max<std::int64_t>(opt.min_terms, std::int64_t(target));
    n_terms = std::min(n_terms, opt.max_terms);

    cx sum{0.0, 0.0};
    cx comp{0.0, 0.0};
    for (std::int64_t n = 1; n <= n_terms; ++n) {
        cx term = std::exp(-s * std::log(double(n) + alpha));
        cx y = term - comp;
        cx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    double base = double(n_terms) + alpha;
    double lb = std::log(base);
    cx tail = std::exp((1.0 - s) * lb) / (s - 1.0);
    tail -= 0.5 * std::exp(-s * lb);

    // Bernoulli corrections; factorial and Pochhammer built incrementally.
    cx poch = s;                       // s(s+1)...(s+2k-2)
    double fact = 2.0;                 // (2k)!
    cx powb = std::exp((-s - 1.0) * lb); // (N+alpha)^{-s-2k+1}
    double base2 = base * base;
    int kmax = std::min<int>(opt.bernoulli_terms, int(bernoulli2k.size()));
    for (int k = 1; k <= kmax; ++k) {
        tail += bernoulli2k[k - 1] / fact * poch * powb;
        poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
        fact *= double(2 * k + 1) * double(2 * k + 2);
        powb /= base2;
    }
    return sum + tail;
}

} // namespace

cx zeta(cx s, const ZetaOptions& opt) {
    if (std::abs(s - cx{1.0, 0.0}) < 1e-12)
        throw std::domain_error("zeta: pole at s = 1");
    if (opt.use_riemann_siegel && std::abs(s.real() - 0.5) < 1e-15 &&
        std::abs(s.imag()) > opt.riemann_siegel_threshold) {
        double t = std::abs(s.imag());
        double z = riemann_siegel_z(t);
        cx v = z * std::exp(cx{0.0, -riemann_siegel_theta(t)});
        return s.imag() > 0 ? v : std::conj(v);
    }
    if (s.imag() < 0.0) return std::conj(euler_maclaurin(std::conj(s), 0.0, opt));
    return euler_maclaurin(s, 0.0, opt);
}

double zeta_abs_sq(const StripPoint& p, const ZetaOptions& opt) {
    p.validate();
    return std::norm(zeta(p.s(), opt));
}

cx hurwitz_zeta1(cx s, double alpha, const ZetaOptions& opt) {
    if (alpha < 0.0) throw std::domain_error("hurwitz_zeta1: alpha must be >= 0");
    if (std::abs(s - cx{1.0, 0.0}) < 1e-12)
        throw std::domain_error("hurwitz_zeta1: pole at s = 1");
    if (s.imag() < 0.0) return std::conj(euler_maclaurin(std::conj(s), alpha, opt));
    return euler_maclaurin(s, alpha, opt);
}

double riemann_siegel_theta(double t) {
    // theta(t) = t/2 ln(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760 t^3) + ...
    double x = t / (2.0 * pi);
    return 0.5 * t * std::log(x) - 0.5 * t - pi / 8.0 + 1.0 / (48.0 * t) +
           7.0 / (5760.0 * t * t * t);
}

namespace {

double rs_c0(double p) {
    return std::cos(2.0 * pi * (p * p - p - 1.0 / 16.0)) / std::cos(2.0 * pi * p);
}

// C1 = C0'''/(96 pi^2), third derivative by central differences.
double rs_c1(double p) {
    const double h = 5e-3;
    double d3 = (rs_c0(p + 2 * h) - 2.0 * rs_c0(p + h) + 2.0 * rs_c0(p - h) -
                 rs_c0(p - 2 * h)) /
                (2.0 * h * h * h);
    return d3 / (96.0 * pi * pi);
}

} // namespace

double riemann_siegel_z(double t) {
    if (!(t > 2.0 * pi)) throw std::domain_error("riemann_siegel_z: t too small");
    double a = std::sqrt(t / (2.0 * pi));
    std::int64_t nu = std::int64_t(std::floor(a));
    double p = a - double(nu);
    double theta = riemann_siegel_theta(t);

    double sum = 0.0;
    for (std::int64_t n = 1; n <= nu; ++n)
        sum += std::cos(theta - t * std::log(double(n))) / std::sqrt(double(n));
    double corr = rs_c0(p) + rs_c1(p) / a;
    double sign = (nu % 2 == 0) ? -1.0 : 1.0;
    return 2.0 * sum + sign * corr / std::sqrt(a);
}

} // namespace zetalab::sf
