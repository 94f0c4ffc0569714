#include "zetalab/asymptotics.hpp"

#include <cmath>

#include "zetalab/parallel.hpp"
#include "zetalab/special_functions.hpp"

namespace zetalab::asym {

namespace {

constexpr double pi = 3.14159265358979323846264338327950288;
const cx I{0.0, 1.0};

double window_lo(double t, double d2) { return std::pow(t, d2 - 1.0); }
double window_hi(double t, double d3) { return 1.0 - std::pow(t, d3 - 1.0); }

void check_window(double t, double d2, double d3) {
    if (!(window_lo(t, d2) < window_hi(t, d3)))
        throw std::domain_error("J3: window [t^{d2-1}, 1-t^{d3-1}] is empty at this t");
}

} // namespace

QuadResult J3_numeric(const StripPoint& p, double d2, double d3, double lambda, double tol) {
    p.validate();
    check_window(p.t, d2, d3);
    if (!(lambda > 0.0)) throw std::domain_error("J3_numeric: lambda must be positive");
    double t = p.t;
    cx lg_denom = sf::log_gamma(p.s());
    double llam = std::log(lambda);
    auto f = [&](double tau) -> cx {
        cx lg1 = sf::log_gamma(cx{0.0, t * (1.0 - tau)});
        cx lg2 = sf::log_gamma(cx{p.sigma, t * tau});
        return std::exp(lg1 + lg2 - lg_denom + I * (tau * t * llam));
    };
    quad::Options o;
    o.abs_tol = tol * pi / t; // J3 carries a t/pi prefactor
    o.rel_tol = tol;
    o.phase_derivative_bound = t * (2.0 * std::log(t) + std::abs(llam) + 4.0);
    QuadResult q = quad::integrate(f, window_lo(t, d2), window_hi(t, d3), o);
    q.value *= t / pi;
    q.abs_error_estimate *= t / pi;
    return q;
}

QuadResult J3_reduced(const StripPoint& p, double d2, double d3, double lambda, double tol) {
    p.validate();
    check_window(p.t, d2, d3);
    if (!(lambda > 0.0)) throw std::domain_error("J3_reduced: lambda must be positive");
    double t = p.t;
    double llam = std::log(lambda);
    double sm = p.sigma - 0.5;
    auto f = [&](double tau) -> cx {
        double l1m = std::log1p(-tau);
        double lt = std::log(tau);
        double amp = -0.5 * l1m + sm * lt;
        double phase = t * ((1.0 - tau) * l1m + tau * lt + tau * llam);
        return std::exp(cx{amp, phase});
    };
    quad::Options o;
    o.abs_tol = tol * std::sqrt(2.0 * pi / t);
    o.rel_tol = tol;
    o.phase_derivative_bound = t * ((1.0 - std::min(d2, d3)) * std::log(t) + std::abs(llam) + 2.0);
    o.parallel_presplit = true;
    return quad::integrate(f, window_lo(t, d2), window_hi(t, d3), o);
}

double J3_stationary_point(double lambda) { return 1.0 / (1.0 + lambda); }

double J3_phase_at_stationary(double lambda) { return -std::log1p(1.0 / lambda); }

double J3_phase_curvature(double lambda) {
    return (1.0 + lambda) * (1.0 + lambda) / lambda;
}

StationaryTerm J3_S(const StripPoint& p, double d2, double d3, double lambda) {
    p.validate();
    if (!(lambda > 0.0)) throw std::domain_error("J3_S: lambda must be positive");
    double t = p.t;
    StationaryTerm out;
    double lo = 1.0 / (std::pow(t, 1.0 - d3) - 1.0);
    double hi = std::pow(t, 1.0 - d2) - 1.0;
    out.applicable = (lambda > lo && lambda < hi);
    // sqrt(2 pi / t) e^{i pi/4} lambda^{it} / (1+lambda)^{sigma+it}
    cx expo = cx{0.5 * std::log(2.0 * pi / t), pi / 4.0} + I * (t * std::log(lambda)) -
              (p.s() * std::log1p(lambda));
    out.value = std::exp(expo);
    return out;
}

namespace {

// three Fresnel widths: |tau1 - endpoint| < 3 / sqrt(t |F''(tau1)|)
void check_endpoint_transition(double t, double lambda, double endpoint, const char* which) {
    double tau1 = J3_stationary_point(lambda);
    double width = 3.0 / std::sqrt(t * J3_phase_curvature(lambda));
    if (std::abs(tau1 - endpoint) < width)
        throw transition_zone_error(std::string("J3 endpoint term (") + which +
                                    "): stationary point within the transition band");
}

} // namespace

cx J3_U(const StripPoint& p, double d3, double lambda) {
    p.validate();
    if (!(lambda > 0.0)) throw std::domain_error("J3_U: lambda must be positive");
    double t = p.t;
    double p3 = std::pow(t, d3);
    double denom = std::log(lambda * (std::pow(t, 1.0 - d3) - 1.0));
    if (std::abs(denom) < 1e-12)
        throw transition_zone_error("J3_U: log factor vanishes (stationary point at endpoint)");
    check_endpoint_transition(t, lambda, 1.0 - std::pow(t, d3 - 1.0), "upper");

    double l1m = std::log1p(-std::pow(t, d3 - 1.0)); // ln(1 - t^{d3-1})
    double amp = -0.5 * d3 * std::log(t) - 0.5 * std::log(t) + (p.sigma - 0.5) * l1m;
    double phase = (d3 - 1.0) * p3 * std::log(t) + (t - p3) * l1m + (t - p3) * std::log(lambda);
    return I * std::exp(cx{amp, phase}) / denom;
}

cx J3_L(const StripPoint& p, double d2, double lambda) {
    p.validate();
    if (!(lambda > 0.0)) throw std::domain_error("J3_L: lambda must be positive");
    double t = p.t;
    double p2 = std::pow(t, d2);
    double denom = std::log(lambda / (std::pow(t, 1.0 - d2) - 1.0));
    if (std::abs(denom) < 1e-12)
        throw transition_zone_error("J3_L: log factor vanishes (stationary point at endpoint)");
    check_endpoint_transition(t, lambda, std::pow(t, d2 - 1.0), "lower");

    double l1m = std::log1p(-std::pow(t, d2 - 1.0));
    double amp = d2 * (p.sigma - 0.5) * std::log(t) - (p.sigma + 0.5) * std::log(t) - 0.5 * l1m;
    double phase = (t - p2) * l1m + p2 * std::log(lambda) + (d2 - 1.0) * p2 * std::log(t);
    return I * std::exp(cx{amp, phase}) / denom;
}

I3Parts I3_tilde(const StripPoint& p, double d2, double d3, double band_width_c,
                 const sums::SumConfig& cfg) {
    p.validate();
    double t = p.t;
    I3Parts out;

    sums::IndexSetSpec mid{sums::IndexKind::mid_band, t, 0.0, d2, d3};
    out.band_sum_part = 2.0 * sums::sum_over(mid, sums::Weight::sm, p, cfg).value.real();

    // Upper-endpoint double sum over the square minus the transition band
    // around m2/m1 = t^{d3-1}.
    std::int64_t tN = std::int64_t(sums::guarded_floor(t, cfg));
    std::vector<double> lg = sums::log_table(tN);
    double p3 = std::pow(t, d3);
    double lo_inv = std::pow(t, 1.0 - d3) - 1.0; // ln term: ln(m2/m1 * (t^{1-d3}-1))
    double band_ctr = std::pow(t, d3 - 1.0);
    double band_w = band_width_c * std::pow(t, -0.5 * d3);
    double l1m = std::log1p(-std::pow(t, d3 - 1.0));
    cx prefactor = std::sqrt(2.0 / pi) *
                   std::exp(cx{(p.sigma - 0.5) * l1m - 0.5 * d3 * std::log(t),
                               pi / 4.0 + (d3 - 1.0) * p3 * std::log(t) + (t - p3) * l1m});

    KahanSum acc;
    std::int64_t excluded = 0;
    double tp = t - p3;
    for (std::int64_t m1 = 1; m1 <= tN; ++m1) {
        double l1 = lg[std::size_t(m1)];
        for (std::int64_t m2 = 1; m2 <= tN; ++m2) {
            double l2 = lg[std::size_t(m2)];
            double ratio = double(m2) / double(m1);
            if (std::abs(ratio / band_ctr - 1.0) <= band_w) {
                ++excluded;
                continue;
            }
            double denom = l2 - l1 + std::log(lo_inv);
            // m1^{-s + i t^{d3}} m2^{-sbar - i t^{d3}}
            acc.add(std::polar(std::exp(-p.sigma * (l1 + l2)), -tp * (l1 - l2)) / denom);
        }
    }
    out.endpoint_sum_part = (prefactor * acc.sum).real();
    out.excluded_pairs = excluded;
    out.total = out.band_sum_part - out.endpoint_sum_part;
    return out;
}

ReflectionPair S_reflection(cx A, std::int64_t terms) {
    if (std::abs(A + I) < 1e-12)
        throw std::domain_error("S_reflection: singular at A = -i");
    if (A.real() == 0.0 && A.imag() == 0.0)
        throw std::domain_error("S_reflection: A = 0 is on the log branch point");
    cx b = 0.25 - I / (2.0 * pi) * std::log(A);
    ReflectionPair out;
    KahanSum acc;
    for (std::int64_t k = 0; k < terms; ++k) {
        double kd = double(k);
        acc.add(1.0 / (kd + 1.0 - b) - 1.0 / (kd + b));
    }
    // remaining terms are (2b-1)/((k+b)(k+1-b)) ~ (2b-1)/(k+1/2)^2
    cx tail = (2.0 * b - 1.0) / (double(terms) + 0.5);
    out.series_value = (acc.sum + tail) / (2.0 * pi);
    out.closed_value = 0.5 * I * (-1.0 + 2.0 / (1.0 - I * A));
    return out;
}

QuadResult J4_tilde_numeric(const StripPoint& p, double d3, double d4, cx A, double tol,
                            bool reduced_kernel) {
    p.validate();
    if (std::abs(A) == 0.0) throw std::domain_error("J4_tilde_numeric: A must be nonzero");
    double t = p.t;
    double hi = std::pow(t, d3);
    double lo = -std::pow(t, d4);
    cx lnA = std::log(A);
    double sm = p.sigma - 0.5;
    auto f = [&](double x) -> cx {
        cx expo = 0.5 * pi * x + I * x * lnA;
        if (!reduced_kernel) {
            double l1m = std::log1p(-x / t);
            expo += cx{sm * l1m, x + (t - x) * l1m};
        }
        return std::exp(expo) / (-2.0 * std::sinh(pi * x));
    };
    quad::Options o;
    o.abs_tol = std::max(tol, 1e-14);
    o.rel_tol = tol;
    o.phase_derivative_bound = std::max(52.0, std::abs(lnA) + 5.0);
    return quad::integrate_pv(f, lo, hi, 0.0, o);
}

cx J4_tilde_closed(double t, double d3, cx A) {
    if (std::abs(A + I) < 1e-12) throw std::domain_error("J4_tilde_closed: singular at A = -i");
    double p3 = std::pow(t, d3);
    cx lnA = std::log(A);
    cx first = 0.5 * I * (-1.0 + 2.0 / (1.0 - I * A));
    cx second = std::exp(I * p3 * lnA - 0.5 * pi * p3) / (0.5 * pi - I * lnA);
    return first + second;
}

// ---------------------------------------------------------------------------
// E4 machinery.
// ---------------------------------------------------------------------------

namespace {

// Integrand of the scaled Hankel form: f(w) = e^{g(w)} / (pi w (pi/2 - i ln(W w))),
// g(w) = t^{d3} (w - pi/2 + i ln(W w)),  W = M t^{d3}.
struct E4Integrand {
    double td3; // t^{d3}
    double W;

    cx operator()(cx w) const {
        cx lw = std::log(W * w);
        cx g = td3 * (w - 0.5 * pi + I * lw);
        cx denom = pi * w * (0.5 * pi - I * lw);
        return std::exp(g) / denom;
    }
};

// Straight-line segment helper.
quad::Segment line_segment(cx a, cx b, double phase_bound) {
    quad::Segment s;
    s.pos = [a, b](double u) { return a + u * (b - a); };
    s.deriv = [a, b](double) { return b - a; };
    s.phase_derivative_bound = phase_bound;
    return s;
}

quad::Segment arc_segment(double radius, double th0, double th1, double phase_bound) {
    quad::Segment s;
    s.pos = [radius, th0, th1](double u) {
        double th = th0 + u * (th1 - th0);
        return radius * cx{std::cos(th), std::sin(th)};
    };
    s.deriv = [radius, th0, th1](double u) {
        double th = th0 + u * (th1 - th0);
        return (th1 - th0) * radius * cx{-std::sin(th), std::cos(th)};
    };
    s.phase_derivative_bound = phase_bound;
    return s;
}

// Saddle-adapted path equivalent to the radius-rho Hankel contour: the lip
// growth e^{t^{d3}(pi/2 - r)} is avoided by leaving the arc at the saddle ray
// and descending into the lower-left quadrant, where the exponent is <= 0 up
// to a mild bump. No pole is crossed: the swept region stays strictly left of
// the negative imaginary axis, where the integrand pole lives.
QuadResult e4_stable_path(double t, double d3, double M, double rho, double tol) {
    double td3 = std::pow(t, d3);
    E4Integrand f{td3, M * td3};

    const double beta = 0.25; // descent-ray tilt off the saddle ray
    double reach = 0.5 * pi + 50.0 / td3;
    // Descent ray from -i rho: long enough that the exponent has dropped to
    // ~e^{-50} and the lip pickup point sits past the e^{t^{d3}(pi/2 - r)}
    // growth region.
    double L = 1.0;
    {
        auto ray_at = [&](double u) { return -I * rho + u * std::exp(-I * (0.5 * pi + beta)); };
        auto h = [&](double u) {
            cx w = ray_at(u);
            return td3 * (w.real() - std::arg(w) - 0.5 * pi);
        };
        while ((h(L) > -50.0 || std::abs(ray_at(L)) < reach) && L < 1e4) L *= 1.4;
    }
    cx ray_end = -I * rho + L * std::exp(-I * (0.5 * pi + beta));
    double Rd = std::max(std::abs(ray_end), reach);
    double T = Rd + 90.0 / td3 + 1.0;
    double th_end = std::arg(ray_end);
    // the outer arc sits at radius |ray_end|
    double Ra = std::abs(ray_end);

    double ph_arc = td3 * (rho + 1.0) * 2.0 * pi;
    double ph_ray = td3 * (1.0 + 1.0 / rho) * L;
    double ph_lip = td3 * (T - Ra) * 1.2 + 10.0;

    std::vector<quad::Segment> segs;
    // 1. lower lip, inbound below the cut
    segs.push_back(line_segment(cx{-T, -0.0}, cx{-Ra, -0.0}, ph_lip));
    // 2. outer arc from -pi up to the ray end
    segs.push_back(arc_segment(Ra, -pi, th_end, td3 * (Ra + 1.0) * (pi - std::abs(th_end))));
    // 3. ascent into the saddle
    segs.push_back(line_segment(ray_end, -I * rho, ph_ray));
    // 4. main arc through/around the saddle to the upper lip
    segs.push_back(arc_segment(rho, -0.5 * pi, pi, ph_arc));
    // 5. upper lip, outbound above the cut
    segs.push_back(line_segment(cx{-rho, +0.0}, cx{-T, +0.0}, ph_lip));

    quad::ContourPath path(segs);
    quad::Options o;
    o.abs_tol = std::max(tol, 1e-13);
    o.rel_tol = tol;
    return quad::integrate_contour([&f](cx w) { return f(w); }, path, o);
}

} // namespace

QuadResult E4_hankel_raw(double t, double d3, double M, double radius, double tol) {
    if (!(M > 0.0)) throw std::domain_error("E4_hankel_raw: M must be positive");
    double td3 = std::pow(t, d3);
    E4Integrand f{td3, M * td3};
    double wp = 1.0 / (M * td3); // |pole|
    if (std::abs(wp - radius) < 1e-9 * radius)
        throw std::domain_error("E4_hankel_raw: pole on the contour");
    double T = radius + (0.5 * pi + 90.0 / td3) + 1.0;
    quad::ContourPath path = quad::hankel(radius, T);
    quad::Options o;
    o.abs_tol = std::max(tol, 1e-13);
    o.rel_tol = tol;
    // lips and circle all oscillate at ~t^{d3} per unit
    quad::ContourPath tuned = [&] {
        std::vector<quad::Segment> segs = path.segments();
        segs[0].phase_derivative_bound = td3 * (T - radius) * 1.5 + 60.0;
        segs[1].phase_derivative_bound = td3 * (radius + 1.0) * 2.0 * pi + 60.0;
        segs[2].phase_derivative_bound = td3 * (T - radius) * 1.5 + 60.0;
        return quad::ContourPath(segs);
    }();
    return quad::integrate_contour([&f](cx w) { return f(w); }, tuned, o);
}

QuadResult E4_numeric(double t, double d3, double M, double tol) {
    if (!(M > 0.0)) throw std::domain_error("E4_numeric: M must be positive");
    if (std::abs(M - 1.0) < 1e-9)
        throw std::domain_error("E4_numeric: pole on the contour (m1/m2 = t)");
    double td3 = std::pow(t, d3);
    double wp = 1.0 / (M * td3); // pole modulus in the scaled variable

    double rho = 1.0;
    if (std::abs(wp - 1.0) < 0.15) rho = (wp < 1.0) ? std::min(1.3, wp * 1.3) : wp / 1.3;
    rho = std::clamp(rho, 0.6, 1.3);

    QuadResult q = e4_stable_path(t, d3, M, rho, tol);
    if (wp > std::pow(t, -d3) && wp < rho)
        q.value += 2.0 * std::exp(-I / M);
    return q;
}

cx E4_sd_leading(double t, double d3, double M) {
    double td3 = std::pow(t, d3);
    double lnW = std::log(M * td3);
    if (std::abs(lnW) < 1e-12)
        throw transition_zone_error("E4_sd_leading: pole at the saddle (ln(M t^{d3}) = 0)");
    // -sqrt(2/pi) e^{i pi/4} t^{-d3/2} e^{i t^{d3}(ln(M t^{d3}) - 1)} / ln(M t^{d3});
    // sign fixed against the contour integral: the saddle at -i is crossed in
    // the +e^{i pi/4} direction and the prefactor there is -1/(pi ln(M t^{d3})).
    cx expo{-0.5 * d3 * std::log(t), pi / 4.0 + td3 * (lnW - 1.0)};
    return -std::sqrt(2.0 / pi) * std::exp(expo) / lnW;
}

E4Parts E4_decomposed(double t, double d3, double M, double band_factor) {
    if (!(M > 0.0)) throw std::domain_error("E4_decomposed: M must be positive");
    double td3 = std::pow(t, d3);
    double wp = 1.0 / (M * td3);
    if (std::abs(wp - 1.0) < band_factor * std::pow(t, -0.5 * d3))
        throw transition_zone_error("E4_decomposed: pole within the saddle transition band");
    E4Parts out;
    out.pole_present = (M > std::pow(t, -d3) && M < 1.0);
    if (out.pole_present) out.pole_term = 2.0 * std::exp(-I / M);
    out.sd_term = E4_sd_leading(t, d3, M);
    out.total = out.pole_term + out.sd_term;
    return out;
}

QuadResult J4_direct(const StripPoint& p, double d3, double d4, double ratio, double tol) {
    p.validate();
    if (!(ratio > 0.0)) throw std::domain_error("J4_direct: ratio must be positive");
    double t = p.t;
    cx lg_denom = sf::log_gamma(p.s());
    double lr = std::log(ratio);
    auto f = [&](double x) -> cx {
        cx lg1 = sf::log_gamma(cx{0.0, x});
        cx lg2 = sf::log_gamma(cx{p.sigma, t - x});
        return std::exp(lg1 + lg2 - lg_denom + I * (x * lr));
    };
    quad::Options o;
    o.abs_tol = std::max(tol, 1e-13);
    o.rel_tol = tol;
    o.phase_derivative_bound = std::max(52.0, std::abs(lr) + std::log(t) + 5.0);
    QuadResult q = quad::integrate_pv(f, -std::pow(t, d4), std::pow(t, d3), 0.0, o);
    q.value /= pi;
    q.abs_error_estimate /= pi;
    return q;
}

I4Parts I4_tilde(const StripPoint& p, double d3, double d4, double band_width_c,
                 const sums::SumConfig& cfg) {
    p.validate();
    (void)d4; // the leading assembly depends on d3 only
    double t = p.t;
    I4Parts out;

    sums::IndexSetSpec sq{sums::IndexKind::full_square, t, 0.0, 0.0, 0.0};
    out.plain_sum_part = -sums::sum_over(sq, sums::Weight::plain, p, cfg).value;

    sums::IndexSetSpec pole{sums::IndexKind::pole_band, t, 0.0, 0.0, d3};
    out.pole_sum_part = 2.0 * sums::sum_over(pole, sums::Weight::s4_pole, p, cfg).value.real();

    std::int64_t tN = std::int64_t(sums::guarded_floor(t, cfg));
    std::vector<double> lg = sums::log_table(tN);
    double band_ctr = std::pow(t, d3 - 1.0); // saddle hits the pole at m2/m1 = t^{d3-1}
    double band_w = band_width_c * std::pow(t, -0.5 * d3);
    double td3 = std::pow(t, d3);
    double lt = std::log(t);

    KahanSum acc;
    std::int64_t excluded = 0;
    double sd_amp = std::sqrt(2.0 / pi) * std::pow(t, -0.5 * d3);
    for (std::int64_t m1 = 1; m1 <= tN; ++m1) {
        double l1 = lg[std::size_t(m1)];
        for (std::int64_t m2 = 1; m2 <= tN; ++m2) {
            double l2 = lg[std::size_t(m2)];
            double ratio = double(m2) / double(m1);
            if (std::abs(ratio / band_ctr - 1.0) <= band_w) {
                ++excluded;
                continue;
            }
            double lnW = l1 - l2 + (d3 - 1.0) * lt; // ln(M t^{d3}), M = m1/(m2 t)
            cx plain = std::polar(std::exp(-p.sigma * (l1 + l2)), -t * (l1 - l2));
            cx sd = -std::polar(sd_amp, pi / 4.0 + td3 * (lnW - 1.0)) / lnW;
            acc.add(plain * sd);
        }
    }
    out.sd_sum_part = acc.sum.real();
    out.excluded_pairs = excluded;
    out.total = out.plain_sum_part + out.pole_sum_part + out.sd_sum_part;
    return out;
}

StationaryPhaseResult stationary_phase_generic(const PhaseProblem& prob, double t) {
    if (!(prob.window_a < prob.window_b))
        throw std::domain_error("stationary_phase_generic: empty window");
    double llam = std::log(prob.lambda);
    auto Fp = [&](double tau) { return prob.phase_d1(tau) + llam; };
    auto F = [&](double tau) { return prob.phase(tau) + tau * llam; };

    StationaryPhaseResult out;
    double a = prob.window_a, b = prob.window_b;
    out.endpoint_a_term = std::abs(prob.amplitude(t, a) / (t * Fp(a)));
    out.endpoint_b_term = std::abs(prob.amplitude(t, b) / (t * Fp(b)));

    double fa = Fp(a), fb = Fp(b);
    if (fa == 0.0 || fb == 0.0 || fa * fb > 0.0) {
        out.found = false;
        return out;
    }
    // bisection; the phase derivatives in play are monotone enough
    double lo = a, hi = b, flo = fa;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = Fp(mid);
        if (fm == 0.0) {
            lo = hi = mid;
            break;
        }
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
        if (hi - lo < 1e-15 * (b - a)) break;
    }
    double tau1 = 0.5 * (lo + hi);
    double f2 = prob.phase_d2(tau1);
    if (f2 == 0.0)
        throw std::domain_error("stationary_phase_generic: degenerate stationary point");
    out.found = true;
    out.tau1 = tau1;
    double sgn = (f2 > 0.0) ? 1.0 : -1.0;
    out.value = std::sqrt(2.0 * pi / (t * std::abs(f2))) * prob.amplitude(t, tau1) *
                std::exp(I * (t * F(tau1) + sgn * pi / 4.0));
    return out;
}

} // namespace zetalab::asym
