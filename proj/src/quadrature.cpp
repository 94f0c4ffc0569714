#include "zetalab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "zetalab/parallel.hpp"

namespace zetalab::quad {

namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1,1] (QUADPACK values).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    cx value;
    double err;
};

Panel gk15(const integrand& f, double a, double b) {
    double hl = 0.5 * (b - a);
    double c = 0.5 * (a + b);
    cx fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - hl * xgk[j]);
        fv[14 - j] = f(c + hl * xgk[j]);
    }
    fv[7] = f(c);
    cx resk{0.0, 0.0}, resg{0.0, 0.0};
    for (int j = 0; j < 7; ++j) {
        resk += wgk[j] * (fv[j] + fv[14 - j]);
        if (j % 2 == 1) resg += wg[j / 2] * (fv[j] + fv[14 - j]);
    }
    resk += wgk[7] * fv[7];
    resg += wg[3] * fv[7];
    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * hl;
    p.err = std::abs((resk - resg) * hl);
    return p;
}

struct ErrOrder {
    bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

} // namespace

QuadResult integrate(const integrand& f, double a, double b, const Options& opt) {
    if (!(a < b)) throw std::domain_error("integrate: requires a < b");
    if (!(opt.abs_tol > 0.0) && !(opt.rel_tol > 0.0))
        throw std::domain_error("integrate: tolerance must be positive");

    // Edges: user split points, then phase pre-splitting per sub-interval.
    std::vector<double> edges{a, b};
    for (double s : opt.split_points)
        if (s > a && s < b) edges.push_back(s);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<double> nodes;
    nodes.push_back(edges.front());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double lo = edges[i], hi = edges[i + 1];
        std::int64_t n = 1;
        if (opt.phase_derivative_bound > 50.0) {
            double phase = opt.phase_derivative_bound * (hi - lo);
            n = std::max<std::int64_t>(1, std::int64_t(std::ceil(phase / opt.phase_per_panel)));
            n = std::min<std::int64_t>(n, opt.max_panels);
        }
        for (std::int64_t k = 1; k <= n; ++k)
            nodes.push_back(lo + (hi - lo) * double(k) / double(n));
    }

    std::int64_t n_init = std::int64_t(nodes.size()) - 1;
    std::vector<Panel> init(n_init);
    if (opt.parallel_presplit && n_init > 256) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n_init; ++i)
            init[i] = gk15(f, nodes[i], nodes[i + 1]);
    } else {
        for (std::int64_t i = 0; i < n_init; ++i)
            init[i] = gk15(f, nodes[i], nodes[i + 1]);
    }

    std::int64_t evals = 15 * n_init;

    // Settle panels that already meet their error share; refine the rest.
    auto tolerance_for = [&](cx total) {
        return std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    };
    cx total{0.0, 0.0};
    double err_total = 0.0;
    for (const Panel& p : init) {
        total += p.value;
        err_total += p.err;
    }

    std::priority_queue<Panel, std::vector<Panel>, ErrOrder> active;
    KahanSum settled;
    double settled_err = 0.0;
    double share = tolerance_for(total) / std::max<double>(1, double(2 * n_init));
    for (const Panel& p : init) {
        if (p.err <= share) {
            settled.add(p.value);
            settled_err += p.err;
        } else {
            active.push(p);
        }
    }
    init.clear();
    init.shrink_to_fit();

    std::int64_t n_panels = n_init;
    double active_err = err_total - settled_err;
    cx active_val = total - settled.sum;

    while (settled_err + active_err > tolerance_for(settled.sum + active_val) &&
           !active.empty()) {
        if (n_panels >= opt.max_panels) {
            QuadResult best;
            best.value = settled.sum + active_val;
            best.abs_error_estimate = settled_err + active_err;
            best.evaluations = evals;
            throw quadrature_error("integrate: subdivision limit reached", best);
        }
        Panel worst = active.top();
        active.pop();
        active_err -= worst.err;
        active_val -= worst.value;
        double mid = 0.5 * (worst.a + worst.b);
        Panel l = gk15(f, worst.a, mid);
        Panel r = gk15(f, mid, worst.b);
        evals += 30;
        ++n_panels;
        for (const Panel& p : {l, r}) {
            if (p.err <= 1e-3 * share) {
                settled.add(p.value);
                settled_err += p.err;
            } else {
                active.push(p);
                active_err += p.err;
                active_val += p.value;
            }
        }
    }

    // Drain the queue in position order for a deterministic final sum.
    std::vector<Panel> rest;
    while (!active.empty()) {
        rest.push_back(active.top());
        active.pop();
    }
    std::sort(rest.begin(), rest.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    QuadResult out;
    KahanSum final_sum = settled;
    double final_err = settled_err;
    for (const Panel& p : rest) {
        final_sum.add(p.value);
        final_err += p.err;
    }
    out.value = final_sum.sum;
    out.abs_error_estimate = final_err;
    out.evaluations = evals;
    return out;
}

QuadResult integrate_pv(const integrand& f, double a, double b, double c,
                        const Options& opt) {
    if (!(a < c && c < b)) throw std::domain_error("integrate_pv: need a < c < b");
    double h = std::min(c - a, b - c);

    integrand paired = [&f, c](double u) { return f(c + u) + f(c - u); };

    // Divergence guard: the paired integrand stays bounded for a simple pole
    // but keeps blowing up for higher orders.
    double p1 = std::abs(paired(h * 1e-3));
    double p2 = std::abs(paired(h * 1e-6));
    if (!std::isfinite(p2) || p2 > 1e4 * (p1 + 1e-300))
        throw std::domain_error("integrate_pv: non-simple singularity at c");

    QuadResult core = integrate(paired, 0.0, h, opt);

    QuadResult rest;
    double tiny = 1e-14 * (b - a); // rounding can leave a zero-width remainder
    if (c - h - a > tiny) {
        rest = integrate(f, a, c - h, opt);
    } else if (b - (c + h) > tiny) {
        rest = integrate(f, c + h, b, opt);
    }
    QuadResult out;
    out.value = core.value + rest.value;
    out.abs_error_estimate = core.abs_error_estimate + rest.abs_error_estimate;
    out.evaluations = core.evaluations + rest.evaluations + 2; // probe pair
    return out;
}

} // namespace zetalab::quad
