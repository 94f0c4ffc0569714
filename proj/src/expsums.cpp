#include "zetalab/expsums.hpp"

#include <algorithm>
#include <cmath>

#include "zetalab/parallel.hpp"

namespace zetalab::sums {

namespace {

constexpr double tie_eps = 1e-9;

void check_desk_cap(std::int64_t n, const SumConfig& cfg, const char* who) {
    if (n > cfg.full_square_cap)
        throw std::domain_error(std::string(who) + ": [t] = " + std::to_string(n) +
                                " exceeds the desk-scale cap " +
                                std::to_string(cfg.full_square_cap));
}

std::int64_t int_part(double x, const SumConfig& cfg) {
    double r = std::round(x);
    if (std::abs(x - r) < tie_eps)
        return cfg.round_near_integer ? std::int64_t(r) : std::int64_t(std::floor(x));
    return std::int64_t(std::floor(x));
}

// smallest integer m2 with m2 >= x, treating near-integer x as exact
std::int64_t ceil_guarded(double x) {
    double r = std::round(x);
    if (std::abs(x - r) < tie_eps) return std::int64_t(r);
    return std::int64_t(std::ceil(x));
}

// largest integer m2 with m2 <= x, treating near-integer x as exact
std::int64_t floor_guarded(double x) {
    double r = std::round(x);
    if (std::abs(x - r) < tie_eps) return std::int64_t(r);
    return std::int64_t(std::floor(x));
}

struct BandBounds {
    double upper = 0.0;   // high_band: m2/m1 >= upper
    double low_inv = 0.0; // low_band:  m2 * low_inv <= m1
};

BandBounds band_bounds(double t, double d2, double d3) {
    BandBounds b;
    b.upper = std::pow(t, 1.0 - d2) - 1.0;
    b.low_inv = std::pow(t, 1.0 - d3) - 1.0;
    return b;
}

// m2-range of a band for a fixed m1, clipped to [1, tN]; hi < lo means empty.
struct Range {
    std::int64_t lo = 1, hi = 0;
};

// Closed complements: first integer inside the upper band, last inside the
// lower band. The middle band is whatever is left in between.
std::int64_t high_band_lo(std::int64_t m1, const BandBounds& b) {
    return ceil_guarded(b.upper * double(m1));
}
std::int64_t low_band_hi(std::int64_t m1, const BandBounds& b) {
    return floor_guarded(double(m1) / b.low_inv);
}

Range band_range(IndexKind kind, std::int64_t m1, std::int64_t tN, const IndexSetSpec& spec,
                 const SumConfig& cfg) {
    (void)cfg;
    Range r;
    switch (kind) {
        case IndexKind::full_square:
            r.lo = 1;
            r.hi = tN;
            break;
        case IndexKind::high_band: {
            BandBounds b = band_bounds(spec.t, spec.d2, spec.d3);
            r.lo = std::max<std::int64_t>(1, high_band_lo(m1, b));
            r.hi = tN;
            break;
        }
        case IndexKind::low_band: {
            BandBounds b = band_bounds(spec.t, spec.d2, spec.d3);
            r.lo = 1;
            r.hi = std::min(tN, low_band_hi(m1, b));
            // the upper band has priority where the cuts cross
            r.hi = std::min(r.hi, std::max<std::int64_t>(0, high_band_lo(m1, b) - 1));
            break;
        }
        case IndexKind::mid_band: {
            BandBounds b = band_bounds(spec.t, spec.d2, spec.d3);
            r.lo = std::max<std::int64_t>(1, low_band_hi(m1, b) + 1);
            r.hi = std::min(tN, high_band_lo(m1, b) - 1);
            break;
        }
        case IndexKind::pole_band: {
            // m1/m2 in (t^{1-d3}, t), open: enumerated per m2 elsewhere;
            // as an m2-range for fixed m1: m1/t < m2 < m1/t^{1-d3}
            double lo_b = double(m1) / spec.t;
            double hi_b = double(m1) / std::pow(spec.t, 1.0 - spec.d3);
            r.lo = std::max<std::int64_t>(1, floor_guarded(lo_b) + 1);
            r.hi = std::min(tN, ceil_guarded(hi_b) - 1);
            break;
        }
        case IndexKind::wide_band: {
            double lo_b = (std::pow(spec.t, 1.0 - spec.d2) - 1.0) * double(m1);
            double hi_b = (std::pow(spec.t, 1.0 - spec.d1) - 1.0) * double(m1);
            r.lo = std::max<std::int64_t>(1, floor_guarded(lo_b) + 1);
            r.hi = std::min(tN, ceil_guarded(hi_b) - 1);
            break;
        }
        case IndexKind::small_band: {
            double lo_b = std::pow(spec.t, spec.d1 - 1.0) * double(m1);
            double hi_b = std::pow(spec.t, spec.d2 - 1.0) * double(m1);
            r.lo = std::max<std::int64_t>(1, floor_guarded(lo_b) + 1);
            r.hi = std::min(tN, ceil_guarded(hi_b) - 1);
            break;
        }
        case IndexKind::edge_strip:
            r.lo = tN + 1;
            r.hi = tN + m1;
            break;
    }
    return r;
}

template <Weight W>
cx term_value(std::int64_t m1, std::int64_t m2, double sigma, double t,
              const std::vector<double>& lg) {
    double l1 = lg[std::size_t(m1)];
    double l2 = lg[std::size_t(m2)];
    if constexpr (W == Weight::plain) {
        return std::polar(std::exp(-sigma * (l1 + l2)), -t * (l1 - l2));
    } else if constexpr (W == Weight::sm) {
        double l12 = lg[std::size_t(m1 + m2)];
        return std::polar(std::exp(-sigma * (l2 + l12)), t * (l2 - l12));
    } else {
        double ang = -t * (l1 - l2) - t * double(m2) / double(m1);
        return std::polar(std::exp(-sigma * (l1 + l2)), ang);
    }
}

template <Weight W>
SumValue sum_engine(const IndexSetSpec& spec, const StripPoint& p, const SumConfig& cfg,
                    bool parallel) {
    std::int64_t tN = int_part(spec.t, cfg);
    if (tN < 1) return {};
    check_desk_cap(tN, cfg, "sum_over");
    std::int64_t max_index = tN;
    if (spec.kind == IndexKind::edge_strip) max_index += tN; // m2 reaches 2[t]
    if (W == Weight::sm) max_index += tN;                    // m1+m2 on top
    std::vector<double> lg = log_table(max_index);

    std::int64_t chunk = std::max<std::int64_t>(1, cfg.chunk_rows);
    std::int64_t n_chunks = (tN + chunk - 1) / chunk;
    std::vector<cx> chunk_vals(static_cast<std::size_t>(n_chunks));
    std::vector<double> chunk_comp(std::size_t(n_chunks), 0.0);
    std::vector<std::int64_t> chunk_terms(std::size_t(n_chunks), 0);

#pragma omp parallel for schedule(static) if (parallel && n_chunks > 1)
    for (std::int64_t ci = 0; ci < n_chunks; ++ci) {
        std::int64_t lo = ci * chunk + 1;
        std::int64_t hi = std::min(tN, lo + chunk - 1);
        KahanSum acc;
        std::int64_t n_terms = 0;
        for (std::int64_t m1 = lo; m1 <= hi; ++m1) {
            Range r = band_range(spec.kind, m1, tN, spec, cfg);
            for (std::int64_t m2 = r.lo; m2 <= r.hi; ++m2) {
                acc.add(term_value<W>(m1, m2, p.sigma, p.t, lg));
                ++n_terms;
            }
        }
        chunk_vals[std::size_t(ci)] = acc.sum;
        chunk_comp[std::size_t(ci)] = acc.compensation();
        chunk_terms[std::size_t(ci)] = n_terms;
    }

    SumValue out;
    out.value = pairwise_merge(chunk_vals);
    for (std::int64_t ci = 0; ci < n_chunks; ++ci) {
        out.compensation += chunk_comp[std::size_t(ci)];
        out.terms += chunk_terms[std::size_t(ci)];
    }
    return out;
}

SumValue dispatch(const IndexSetSpec& spec, Weight w, const StripPoint& p,
                  const SumConfig& cfg, bool parallel) {
    p.validate();
    switch (w) {
        case Weight::plain:
            return sum_engine<Weight::plain>(spec, p, cfg, parallel);
        case Weight::sm:
            return sum_engine<Weight::sm>(spec, p, cfg, parallel);
        default:
            return sum_engine<Weight::s4_pole>(spec, p, cfg, parallel);
    }
}

} // namespace

std::vector<double> log_table(std::int64_t n) {
    std::vector<double> lg(std::size_t(n) + 1, 0.0);
    for (std::int64_t m = 1; m <= n; ++m) lg[std::size_t(m)] = std::log(double(m));
    return lg;
}

double guarded_floor(double x, const SumConfig& cfg) { return double(int_part(x, cfg)); }

cx partial_sum(cx w, std::int64_t count) {
    KahanSum acc;
    for (std::int64_t m = 1; m <= count; ++m)
        acc.add(std::exp(-w * std::log(double(m))));
    return acc.sum;
}

SumValue sum_over(const IndexSetSpec& spec, Weight weight, const StripPoint& p,
                  const SumConfig& cfg) {
    return dispatch(spec, weight, p, cfg, cfg.parallel);
}

SumValue sum_over_serial(const IndexSetSpec& spec, Weight weight, const StripPoint& p,
                         const SumConfig& cfg) {
    return dispatch(spec, weight, p, cfg, false);
}

SumValue sum_SR(const StripPoint& p, const SumConfig& cfg) {
    p.validate();
    std::int64_t tN = int_part(p.t, cfg);
    SumValue out;
    if (tN < 1) return out;
    cx ps = partial_sum(p.s(), tN);
    out.value = ps * std::conj(ps);
    out.terms = tN;
    out.compensation = 0.0;
    return out;
}

SumValue sum_g(const StripPoint& p, const SumConfig& cfg) {
    p.validate();
    std::int64_t tN = int_part(p.t, cfg);
    SumValue out;
    if (tN < 1) return out;
    check_desk_cap(tN, cfg, "sum_g");
    std::vector<double> lg = log_table(2 * tN);
    KahanSum acc;
    for (std::int64_t m = 1; m <= tN; ++m) {
        double lm = lg[std::size_t(m)];
        for (std::int64_t n = tN + 1; n <= tN + m; ++n) {
            double ln = lg[std::size_t(n)];
            // m^{-sbar} n^{-s}
            acc.add(std::polar(std::exp(-p.sigma * (lm + ln)), p.t * (lm - ln)));
            ++out.terms;
        }
    }
    out.value = acc.sum;
    out.compensation = acc.compensation();
    return out;
}

namespace {

cx f_sum(cx u, cx v, std::int64_t N, const std::vector<double>& lg) {
    KahanSum acc;
    for (std::int64_t m2 = 1; m2 <= N; ++m2)
        for (std::int64_t m1 = 1; m1 <= N; ++m1)
            acc.add(std::exp(-u * lg[std::size_t(m2)] - v * lg[std::size_t(m1 + m2)]));
    return acc.sum;
}

cx g_sum(cx u, cx v, std::int64_t N, const std::vector<double>& lg) {
    KahanSum acc;
    for (std::int64_t m = 1; m <= N; ++m)
        for (std::int64_t n = N + 1; n <= N + m; ++n)
            acc.add(std::exp(-u * lg[std::size_t(m)] - v * lg[std::size_t(n)]));
    return acc.sum;
}

} // namespace

ResidualReport check_fg_identity(cx u, cx v, std::int64_t N) {
    if (N < 1) throw std::domain_error("check_fg_identity: N >= 1 required");
    check_desk_cap(N, {}, "check_fg_identity");
    std::vector<double> lg = log_table(2 * N);
    cx fuv = f_sum(u, v, N, lg);
    cx fvu = f_sum(v, u, N, lg);
    KahanSum diag, pu, pv;
    for (std::int64_t m = 1; m <= N; ++m) {
        diag.add(std::exp(-(u + v) * lg[std::size_t(m)]));
        pu.add(std::exp(-u * lg[std::size_t(m)]));
        pv.add(std::exp(-v * lg[std::size_t(m)]));
    }
    cx lhs = fuv + fvu + diag.sum;
    cx rhs = pu.sum * pv.sum + g_sum(u, v, N, lg) + g_sum(v, u, N, lg);
    return make_residual(lhs, rhs);
}

ResidualReport check_SR_SM_relation(const StripPoint& p, const SumConfig& cfg) {
    p.validate();
    std::int64_t tN = int_part(p.t, cfg);
    IndexSetSpec sq{IndexKind::full_square, p.t, 0, 0, 0};
    cx sm_full = sum_over(sq, Weight::sm, p, cfg).value;
    double sr = sum_SR(p, cfg).value.real();
    double diag = partial_sum(cx{2.0 * p.sigma, 0.0}, tN).real();
    cx g = sum_g(p, cfg).value;
    cx lhs = 2.0 * sm_full.real();
    cx rhs = sr - diag + 2.0 * g.real();
    return make_residual(lhs, rhs);
}

CoverReport check_index_cover(double t, double d2, double d3, const SumConfig& cfg) {
    std::int64_t tN = int_part(t, cfg);
    check_desk_cap(tN, cfg, "check_index_cover");
    IndexSetSpec mid{IndexKind::mid_band, t, 0, d2, d3};
    IndexSetSpec high{IndexKind::high_band, t, 0, d2, d3};
    IndexSetSpec low{IndexKind::low_band, t, 0, d2, d3};
    for (std::int64_t m1 = 1; m1 <= tN; ++m1) {
        Range rm = band_range(IndexKind::mid_band, m1, tN, mid, cfg);
        Range rh = band_range(IndexKind::high_band, m1, tN, high, cfg);
        Range rl = band_range(IndexKind::low_band, m1, tN, low, cfg);
        for (std::int64_t m2 = 1; m2 <= tN; ++m2) {
            int hits = 0;
            hits += (m2 >= rm.lo && m2 <= rm.hi);
            hits += (m2 >= rh.lo && m2 <= rh.hi);
            hits += (m2 >= rl.lo && m2 <= rl.hi);
            if (hits != 1) return {false, m1, m2, hits};
        }
    }
    return {};
}

SumValue sum_eq130(double t, double d2, const SumConfig& cfg) {
    if (!(t >= 4.0)) throw std::domain_error("sum_eq130: t >= 4 required");
    if (!(d2 > 0.0 && d2 < 1.0)) throw std::domain_error("sum_eq130: d2 in (0,1) required");
    std::int64_t tN = int_part(t, cfg);
    check_desk_cap(tN, cfg, "sum_eq130");
    std::int64_t m_lo = int_part(std::pow(t, 1.0 - d2), cfg);
    m_lo = std::max<std::int64_t>(1, m_lo);
    double growth = 1.0 + std::pow(t, d2 - 1.0);

    std::int64_t upper_n = int_part(double(tN) * growth, cfg);
    std::vector<double> lg = log_table(std::max(tN, upper_n));

    SumValue out;
    KahanSum acc;
    for (std::int64_t m = m_lo; m <= tN; ++m) {
        std::int64_t n_hi = int_part(double(m) * growth, cfg);
        for (std::int64_t n = m + 1; n <= n_hi; ++n) {
            double lm = lg[std::size_t(m)];
            double ln = lg[std::size_t(n)];
            // n^{-1/2-it} m^{-1/2+it}
            acc.add(std::polar(std::exp(-0.5 * (lm + ln)), t * (lm - ln)));
            ++out.terms;
        }
    }
    out.value = acc.sum;
    out.compensation = acc.compensation();
    return out;
}

SumValue sum_section7(double t, double d1, double d2, Section7Variant variant,
                      const SumConfig& cfg) {
    if (!(t >= 4.0)) throw std::domain_error("sum_section7: t >= 4 required");
    std::int64_t tN = int_part(t, cfg);
    check_desk_cap(tN, cfg, "sum_section7");
    IndexKind kind =
        (variant == Section7Variant::ratio_amp) ? IndexKind::wide_band : IndexKind::small_band;
    IndexSetSpec spec{kind, t, d1, d2, 0};
    std::vector<double> lg = log_table(2 * tN);

    SumValue out;
    KahanSum acc;
    for (std::int64_t m1 = 1; m1 <= tN; ++m1) {
        Range r = band_range(kind, m1, tN, spec, cfg);
        for (std::int64_t m2 = r.lo; m2 <= r.hi; ++m2) {
            double l1 = lg[std::size_t(m1)];
            double l2 = lg[std::size_t(m2)];
            double l12 = lg[std::size_t(m1 + m2)];
            cx term;
            switch (variant) {
                case Section7Variant::ratio_amp:
                    // sqrt(m2/m1) / (m2^{1/2-it} (m1+m2)^{1/2+it})
                    term = std::polar(std::exp(0.5 * (l2 - l1) - 0.5 * (l2 + l12)),
                                      t * (l2 - l12));
                    break;
                case Section7Variant::shifted_amp:
                    // e^{i(m2/m1)t} / (sqrt(m1) sqrt(m1+m2))
                    term = std::polar(std::exp(-0.5 * (l1 + l12)),
                                      t * double(m2) / double(m1));
                    break;
                default:
                    // e^{i(m2/m1)t} / sqrt(m1 m2)
                    term = std::polar(std::exp(-0.5 * (l1 + l2)),
                                      t * double(m2) / double(m1));
                    break;
            }
            acc.add(term);
            ++out.terms;
        }
    }
    out.value = acc.sum;
    out.compensation = acc.compensation();
    return out;
}

} // namespace zetalab::sums
