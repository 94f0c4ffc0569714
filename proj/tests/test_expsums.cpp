#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "zetalab/expsums.hpp"

using namespace zetalab;
using namespace zetalab::sums;

namespace {

cx naive_power(std::int64_t m, cx s) { return std::exp(-s * std::log(double(m))); }

} // namespace

TEST_CASE("sum_SR basics") {
    CHECK(sum_SR({0.5, 1.0}).value.real() == doctest::Approx(1.0).epsilon(1e-15));

    // two-term closed form checked through the partial-sum harness at s = 1/2
    cx p2 = partial_sum(cx{0.5, 0.0}, 2);
    CHECK(std::norm(p2) == doctest::Approx(2.914213562373095).epsilon(1e-12));

    StripPoint p{0.5, 300.0};
    SumValue sr = sum_SR(p);
    cx ps = partial_sum(p.s(), 300);
    CHECK(std::abs(sr.value.real() - std::norm(ps)) <= 1e-12 * std::norm(ps));
    CHECK(std::abs(sr.value.imag()) <= 1e-12 * std::norm(ps));
    CHECK(sr.value.real() >= 0.0);
    CHECK(sr.compensation <= 1e-12 * std::abs(sr.value));
}

TEST_CASE("band partition of the full square is exact") {
    StripPoint p{0.5, 50.0};
    for (double d : {0.4, 0.7}) {
        IndexSetSpec sq{IndexKind::full_square, 50.0, 0, d, d};
        IndexSetSpec mid{IndexKind::mid_band, 50.0, 0, d, d};
        IndexSetSpec hib{IndexKind::high_band, 50.0, 0, d, d};
        IndexSetSpec lob{IndexKind::low_band, 50.0, 0, d, d};
        SumValue full = sum_over(sq, Weight::sm, p);
        SumValue m = sum_over(mid, Weight::sm, p);
        SumValue h = sum_over(hib, Weight::sm, p);
        SumValue l = sum_over(lob, Weight::sm, p);
        CHECK(full.terms == m.terms + h.terms + l.terms);
        CHECK(std::abs(full.value - (m.value + h.value + l.value)) <=
              1e-12 * std::abs(full.value));
    }
}

TEST_CASE("pole-band membership matches its defining ratio constraint") {
    double t = 50.0, d3 = 0.5;
    IndexSetSpec pb{IndexKind::pole_band, t, 0, 0, d3};
    // enumerate via the engine with a unit weight through terms counting,
    // then compare against the raw predicate
    StripPoint p{0.5, t};
    SumValue v = sum_over(pb, Weight::plain, p);
    std::int64_t count = 0;
    double lo = std::pow(t, 1.0 - d3), hi = t;
    for (std::int64_t m1 = 1; m1 <= 50; ++m1)
        for (std::int64_t m2 = 1; m2 <= 50; ++m2) {
            double r = double(m1) / double(m2);
            if (r > lo && r < hi) ++count;
        }
    CHECK(v.terms == count);
}

TEST_CASE("pole-weight band sum against a naive loop") {
    double t = 50.0, d3 = 0.5;
    StripPoint p{0.5, t};
    IndexSetSpec pb{IndexKind::pole_band, t, 0, 0, d3};
    SumValue v = sum_over(pb, Weight::s4_pole, p);
    cx naive = oracles::naive_pair_sum(
        50, 50,
        [&](std::int64_t m1, std::int64_t m2) {
            double r = double(m1) / double(m2);
            return r > std::pow(t, 1.0 - d3) && r < t;
        },
        [&](std::int64_t m1, std::int64_t m2) {
            return naive_power(m1, p.s()) * naive_power(m2, p.s_bar()) *
                   std::exp(cx{0.0, -double(m2) / double(m1) * t});
        });
    CHECK(std::abs(v.value - naive) <= 1e-12 * std::abs(naive));
}

TEST_CASE("edge strip sum basics and conjugation") {
    // N = 1: single pair (1,2) with zero exponents
    SumValue g1 = sum_g({0.5, 1.0});
    CHECK(g1.terms == 1);

    StripPoint p{0.5, 40.0};
    SumValue g = sum_g(p);
    // term-by-term conjugation: swapping the exponent roles conjugates
    std::vector<double> lg = log_table(80);
    cx swapped{0.0, 0.0};
    for (std::int64_t m = 1; m <= 40; ++m)
        for (std::int64_t n = 41; n <= 40 + m; ++n)
            swapped += naive_power(m, p.s()) * naive_power(n, p.s_bar());
    CHECK(std::abs(swapped - std::conj(g.value)) <= 1e-13 * std::abs(g.value));
}

TEST_CASE("edge strip growth stays within its bound shape band") {
    // |g| against t^{1/2 - 5 sigma/3} ln t at sigma = 1/2: the hidden
    // constant stays in a narrow band across a doubling grid
    double lo = 1e300, hi = 0.0;
    for (double t : {100.0, 200.0, 400.0}) {
        StripPoint p{0.5, t};
        double shape = std::pow(t, 0.5 - 5.0 / 6.0) * std::log(t);
        double r = std::abs(sum_g(p).value) / shape;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(hi / lo <= 5.0);
    CHECK(hi <= 2.0);
}

TEST_CASE("fg identity") {
    ResidualReport r = check_fg_identity(cx{0.0, 0.0}, cx{0.0, 0.0}, 2);
    CHECK(r.lhs.real() == doctest::Approx(10.0));
    CHECK(r.rhs.real() == doctest::Approx(10.0));
    CHECK(r.rel_err == 0.0);

    ResidualReport r40 = check_fg_identity(cx{0.5, 7.0}, cx{0.5, -7.0}, 40);
    CHECK(r40.rel_err <= 1e-12);

    ResidualReport r1 = check_fg_identity(cx{0.3, 2.0}, cx{0.9, -1.0}, 1);
    CHECK(r1.rel_err <= 1e-14);
}

TEST_CASE("square-sum relation") {
    CHECK(check_SR_SM_relation({0.5, 10.0}).rel_err <= 1e-13);
    CHECK(check_SR_SM_relation({0.3, 500.0}).rel_err <= 1e-12);
    // t = 1: single-term degenerate form
    CHECK(check_SR_SM_relation({0.5, 1.0}).rel_err <= 1e-15);
}

TEST_CASE("index cover is exact including degenerate windows") {
    CHECK(check_index_cover(50.0, 0.4, 0.4).ok);
    CHECK(check_index_cover(20.0, 0.9, 0.9).ok);
    CHECK(check_index_cover(3.0, 0.5, 0.5).ok);
    CHECK(check_index_cover(600.0, 0.5, 0.5).ok);
    CHECK(check_index_cover(613.0, 0.37, 0.52).ok);
}

TEST_CASE("randomized identity grid") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> sg(0.1, 0.9);
    std::uniform_real_distribution<double> tt(2.0, 600.0);
    std::uniform_real_distribution<double> dd(0.1, 0.9);
    for (int i = 0; i < 8; ++i) {
        StripPoint p{sg(rng), tt(rng)};
        CHECK(check_SR_SM_relation(p).rel_err <= 1e-11);
        double d2 = dd(rng), d3 = dd(rng);
        IndexSetSpec sq{IndexKind::full_square, p.t, 0, d2, d3};
        IndexSetSpec mid{IndexKind::mid_band, p.t, 0, d2, d3};
        IndexSetSpec hib{IndexKind::high_band, p.t, 0, d2, d3};
        IndexSetSpec lob{IndexKind::low_band, p.t, 0, d2, d3};
        cx full = sum_over(sq, Weight::sm, p).value;
        cx parts = sum_over(mid, Weight::sm, p).value + sum_over(hib, Weight::sm, p).value +
                   sum_over(lob, Weight::sm, p).value;
        CHECK(make_residual(full, parts).rel_err <= 1e-11);
        CHECK(check_index_cover(p.t, d2, d3).ok);
    }
}

TEST_CASE("narrow strip sum against a naive loop, and empty ranges") {
    double t = 10.0, d2 = 0.5;
    SumValue v = sum_eq130(t, d2);
    cx naive{0.0, 0.0};
    std::int64_t m_lo = std::int64_t(std::pow(t, 1.0 - d2));
    std::int64_t terms = 0;
    for (std::int64_t m = m_lo; m <= 10; ++m) {
        std::int64_t n_hi = std::int64_t(double(m) * (1.0 + std::pow(t, d2 - 1.0)));
        for (std::int64_t n = m + 1; n <= n_hi; ++n) {
            naive += naive_power(n, cx{0.5, t}) * naive_power(m, cx{0.5, -t});
            ++terms;
        }
    }
    CHECK(v.terms == terms);
    CHECK(std::abs(v.value - naive) <= 1e-12 * (std::abs(naive) + 1e-30));

    // inner ranges collapse when [m(1+t^{d2-1})] <= m: at t=4, d2=0.05 only
    // the m=4 row survives (single pair), the m=3 row is empty
    SumValue e = sum_eq130(4.0, 0.05);
    CHECK(e.terms == 1);
}

TEST_CASE("phase-example sums against naive loops; empty band when d1 = d2") {
    double t = 50.0, d1 = 0.2, d2 = 0.6;
    SumValue f17 = sum_section7(t, d1, d2, Section7Variant::shifted_amp);
    cx naive = oracles::naive_pair_sum(
        50, 50,
        [&](std::int64_t m1, std::int64_t m2) {
            double r = double(m2) / double(m1);
            return r > std::pow(t, d1 - 1.0) && r < std::pow(t, d2 - 1.0);
        },
        [&](std::int64_t m1, std::int64_t m2) {
            return std::exp(cx{0.0, double(m2) / double(m1) * t}) /
                   std::sqrt(double(m1) * double(m1 + m2));
        });
    CHECK(std::abs(f17.value - naive) <= 1e-12 * (std::abs(naive) + 1e-30));

    for (auto variant : {Section7Variant::ratio_amp, Section7Variant::shifted_amp,
                         Section7Variant::plain_amp}) {
        SumValue empty = sum_section7(t, 0.4, 0.4, variant);
        CHECK(empty.terms == 0);
    }
}

TEST_CASE("change of variables links the two phase-example sums") {
    // m1 = n1 + n2, m2 = n1 maps the small-ratio exponential sum onto the
    // conjugate wide-band one; the phase replacement costs O(t^{2 d2 - 1}) per
    // term, so the check needs t^{2 d2 - 1} small to see the 10% agreement.
    for (double t : {300.0, 600.0}) {
        double d1 = 0.1, d2 = 0.3;
        SumValue f18 = sum_section7(t, d1, d2, Section7Variant::plain_amp);
        SumValue f12 = sum_section7(t, d1, d2, Section7Variant::ratio_amp);
        CHECK(std::abs(f18.value - std::conj(f12.value)) <= 0.10 * std::abs(f12.value));
    }
}

TEST_CASE("chunked parallel accumulation is bit-identical to the serial reference") {
    StripPoint p{0.5, 400.0};
    for (Weight w : {Weight::plain, Weight::sm, Weight::s4_pole}) {
        IndexSetSpec sq{IndexKind::full_square, 400.0, 0, 0, 0};
        SumValue a = sum_over(sq, w, p);
        SumValue b = sum_over_serial(sq, w, p);
        CHECK(a.value.real() == b.value.real());
        CHECK(a.value.imag() == b.value.imag());
        CHECK(a.terms == b.terms);
    }
}

TEST_CASE("conjugate symmetry of plain-weight sums") {
    // s <-> sbar plus transposing the index set conjugates the value
    double t = 80.0, d3 = 0.5;
    StripPoint p{0.4, t};
    IndexSetSpec pb{IndexKind::pole_band, t, 0, 0, d3};
    SumValue v = sum_over(pb, Weight::plain, p);
    cx transposed = oracles::naive_pair_sum(
        80, 80,
        [&](std::int64_t m1, std::int64_t m2) {
            double r = double(m2) / double(m1); // transposed membership
            return r > std::pow(t, 1.0 - d3) && r < t;
        },
        [&](std::int64_t m1, std::int64_t m2) {
            return naive_power(m1, p.s()) * naive_power(m2, p.s_bar());
        });
    CHECK(std::abs(transposed - std::conj(v.value)) <= 1e-13 * (std::abs(v.value) + 1e-30));
}

TEST_CASE("edge strip works with every weight") {
    StripPoint p{0.5, 30.0};
    IndexSetSpec strip{IndexKind::edge_strip, 30.0, 0, 0, 0};
    for (Weight w : {Weight::plain, Weight::sm, Weight::s4_pole}) {
        SumValue v = sum_over(strip, w, p);
        CHECK(v.terms == 30 * 31 / 2);
        CHECK(std::isfinite(std::abs(v.value)));
    }
}

TEST_CASE("full-square work beyond the desk cap is rejected") {
    StripPoint p{0.5, 25000.0};
    IndexSetSpec sq{IndexKind::full_square, 25000.0, 0, 0, 0};
    CHECK_THROWS_AS((void)sum_over(sq, Weight::plain, p), std::domain_error);
}

TEST_CASE("square-sum defect tracks -ln t on the critical line") {
    // 2 Re{full sm-weight sum} - |partial|^2 + ln t stays in a fixed band
    double lo = 1e300, hi = -1e300;
    for (double t : {100.0, 200.0, 300.0, 400.0, 500.0, 600.0}) {
        StripPoint p{0.5, t};
        IndexSetSpec sq{IndexKind::full_square, t, 0, 0, 0};
        double lhs = 2.0 * sum_over(sq, Weight::sm, p).value.real() -
                     sum_SR(p).value.real();
        double banded = lhs + std::log(t);
        lo = std::min(lo, banded);
        hi = std::max(hi, banded);
    }
    CHECK(hi - lo < 2.0);
    CHECK(std::abs(hi) < 5.0);
    CHECK(std::abs(lo) < 5.0);
}
