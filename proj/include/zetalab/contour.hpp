#ifndef ZETALAB_CONTOUR_HPP
#define ZETALAB_CONTOUR_HPP

#include <functional>
#include <vector>

#include "zetalab/quadrature.hpp"
#include "zetalab/types.hpp"

namespace zetalab::quad {

/// One smooth piece of a path: u in [0,1] -> position, with its derivative.
struct Segment {
    std::function<cx(double)> pos;
    std::function<cx(double)> deriv;
    // Hint for oscillatory integrands: bound on |d(phase)/du| along this
    // segment, forwarded to the quadrature pre-splitter. 0 = unknown.
    double phase_derivative_bound = 0.0;
};

/// Piecewise-smooth parameterized path. Consecutive segments must join to
/// within 1e-12.
class ContourPath {
  public:
    ContourPath() = default;
    explicit ContourPath(std::vector<Segment> segments);

    const std::vector<Segment>& segments() const { return segs_; }
    cx start() const { return segs_.front().pos(0.0); }
    cx end() const { return segs_.back().pos(1.0); }

  private:
    std::vector<Segment> segs_;
};

/// Hankel contour around the negative real axis: inbound along the lower lip
/// from truncation*e^{-i pi} to radius*e^{-i pi}, circle of the given radius
/// from -pi to +pi, outbound along the upper lip to truncation*e^{+i pi}.
/// Lip points carry signed-zero imaginary parts so that a principal-branch
/// log evaluates on the lip's own side of the cut.
ContourPath hankel(double radius, double truncation = 40.0);

/// Integral of f along the path, by pullback to the segment parameters.
QuadResult integrate_contour(const std::function<cx(cx)>& f, const ContourPath& path,
                             const Options& opt = {});

} // namespace zetalab::quad

#endif
