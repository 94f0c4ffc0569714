#include "zetalab/contour.hpp"

#include <cmath>

namespace zetalab::quad {

namespace {
constexpr double pi = 3.14159265358979323846264338327950288;
}

ContourPath::ContourPath(std::vector<Segment> segments) : segs_(std::move(segments)) {
    if (segs_.empty()) throw std::domain_error("ContourPath: no segments");
    for (std::size_t k = 0; k + 1 < segs_.size(); ++k) {
        cx e = segs_[k].pos(1.0);
        cx s = segs_[k + 1].pos(0.0);
        if (std::abs(e - s) > 1e-12 * std::max(1.0, std::abs(e)))
            throw std::domain_error("ContourPath: segments " + std::to_string(k) + " and " +
                                    std::to_string(k + 1) + " do not join");
    }
}

ContourPath hankel(double radius, double truncation) {
    if (!(radius > 0.0)) throw std::domain_error("hankel: radius must be positive");
    if (!(truncation > radius)) throw std::domain_error("hankel: truncation must exceed radius");
    double R = radius, T = truncation;

    Segment lower;
    lower.pos = [T, R](double u) { return cx{-(T + (R - T) * u), -0.0}; };
    lower.deriv = [T, R](double) { return cx{T - R, 0.0}; };

    Segment circle;
    circle.pos = [R](double u) {
        double th = -pi + 2.0 * pi * u;
        return R * cx{std::cos(th), std::sin(th)};
    };
    circle.deriv = [R](double u) {
        double th = -pi + 2.0 * pi * u;
        return 2.0 * pi * R * cx{-std::sin(th), std::cos(th)};
    };

    Segment upper;
    upper.pos = [T, R](double u) { return cx{-(R + (T - R) * u), +0.0}; };
    upper.deriv = [T, R](double) { return cx{R - T, 0.0}; };

    return ContourPath({lower, circle, upper});
}

QuadResult integrate_contour(const std::function<cx(cx)>& f, const ContourPath& path,
                             const Options& opt) {
    QuadResult out;
    Options seg_opt = opt;
    seg_opt.abs_tol = std::max(1e-300, opt.abs_tol / double(path.segments().size()));
    for (const Segment& seg : path.segments()) {
        seg_opt.phase_derivative_bound = seg.phase_derivative_bound;
        auto g = [&f, &seg](double u) { return f(seg.pos(u)) * seg.deriv(u); };
        QuadResult r = integrate(g, 0.0, 1.0, seg_opt);
        out.value += r.value;
        out.abs_error_estimate += r.abs_error_estimate;
        out.evaluations += r.evaluations;
    }
    return out;
}

} // namespace zetalab::quad
