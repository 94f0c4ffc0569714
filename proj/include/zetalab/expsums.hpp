#ifndef ZETALAB_EXPSUMS_HPP
#define ZETALAB_EXPSUMS_HPP

#include <cstdint>
#include <vector>

#include "zetalab/types.hpp"

namespace zetalab::sums {

/// Families of index sets over {1..[t]}^2 cut by ratio constraints.
///
///   full_square : all pairs (m1, m2)
///   mid_band    : 1/(t^{1-d3}-1) < m2/m1 < t^{1-d2}-1
///   high_band   : m2/m1 >= t^{1-d2}-1      (upper complement of mid_band)
///   low_band    : m2/m1 <= 1/(t^{1-d3}-1)  (lower complement of mid_band)
///   pole_band   : t^{1-d3} < m1/m2 < t     (the residue-contribution set)
///   wide_band   : t^{1-d2}-1 < m2/m1 < t^{1-d1}-1
///   small_band  : t^{d1-1} < m2/m1 < t^{d2-1}
///   edge_strip  : m1 in [1,[t]], m2 in [[t]+1, [t]+m1] (spills past the square)
///
/// high/low bands close their shared boundaries so that
/// full_square = mid_band + high_band + low_band exactly, pair by pair;
/// when the two cuts cross (degenerate windows) the upper band wins.
enum class IndexKind {
    full_square,
    mid_band,
    high_band,
    low_band,
    pole_band,
    wide_band,
    small_band,
    edge_strip,
};

struct IndexSetSpec {
    IndexKind kind = IndexKind::full_square;
    double t = 0.0;
    double d1 = 0.0, d2 = 0.0, d3 = 0.0;
};

/// Term weights:
///   plain   : m1^{-s} m2^{-sbar}
///   sm      : m2^{-sbar} (m1+m2)^{-s}
///   s4_pole : m1^{-s} m2^{-sbar} e^{-i (m2/m1) t}
enum class Weight { plain, sm, s4_pole };

struct SumConfig {
    // Integer-part guard: arguments within 1e-9 of an integer round instead
    // of flooring when set (default floor).
    bool round_near_integer = false;
    // Fixed accumulation chunk (in m1 rows); results are merged pairwise at
    // these boundaries, so the value is identical for any thread count.
    std::int64_t chunk_rows = 256;
    bool parallel = true;
    // Enumeration cap for full-square work: [t] <= this.
    std::int64_t full_square_cap = 20'000;
};

/// Natural logs of 1..n (index 0 unused).
std::vector<double> log_table(std::int64_t n);

double guarded_floor(double x, const SumConfig& cfg);

/// Partial sum P(w) = sum_{m=1}^{N} m^{-w}.
cx partial_sum(cx w, std::int64_t count);

/// Exact finite sum of `weight` terms over the index set. Empty sets give 0
/// with terms = 0. Deterministic for any thread count.
SumValue sum_over(const IndexSetSpec& spec, Weight weight, const StripPoint& p,
                  const SumConfig& cfg = {});

/// Straight double-loop reference with compensated accumulation; used by
/// tests and the benchmark to pin down the chunked kernels.
SumValue sum_over_serial(const IndexSetSpec& spec, Weight weight, const StripPoint& p,
                         const SumConfig& cfg = {});

/// S_R = (sum m1^{-s}) (sum m2^{-sbar}) over m <= [t]; real and nonnegative
/// up to rounding.
SumValue sum_SR(const StripPoint& p, const SumConfig& cfg = {});

/// g-sum over the edge strip with u = sbar, v = s:
///   sum_{m=1}^{N} sum_{n=N+1}^{N+m} m^{-sbar} n^{-s},  N = [t].
SumValue sum_g(const StripPoint& p, const SumConfig& cfg = {});

/// Residual of
///   f(u,v) + f(v,u) + sum m^{-u-v}
///     = (sum m^{-u})(sum n^{-v}) + g(u,v) + g(v,u)
/// over 1..N; an exact identity, so the residual is pure rounding.
ResidualReport check_fg_identity(cx u, cx v, std::int64_t N);

/// Residual of the square-sum relation
///   2 Re{sum_sq m2^{-sbar}(m1+m2)^{-s}}
///     = S_R - sum m^{-2 sigma} + 2 Re{g},
/// again exact algebra.
ResidualReport check_SR_SM_relation(const StripPoint& p, const SumConfig& cfg = {});

struct CoverReport {
    bool ok = true;
    // first offending pair and how many of the three sets claimed it
    std::int64_t m1 = 0, m2 = 0;
    int multiplicity = 1;
};

/// Exhaustively verifies that mid/high/low bands partition the full square:
/// every pair lands in exactly one set.
CoverReport check_index_cover(double t, double d2, double d3, const SumConfig& cfg = {});

/// sum_{m=[t^{1-d2}]}^{[t]} sum_{n=m+1}^{[m(1+t^{d2-1})]} n^{-1/2-it} m^{-1/2+it}
SumValue sum_eq130(double t, double d2, const SumConfig& cfg = {});

/// The generic-phase example sums:
///   ratio_amp  : sqrt(m2/m1) / (m2^{1/2-it} (m1+m2)^{1/2+it})  over wide_band
///   shifted_amp: e^{i(m2/m1)t} / (sqrt(m1) sqrt(m1+m2))        over small_band
///   plain_amp  : e^{i(m2/m1)t} / sqrt(m1 m2)                   over small_band
enum class Section7Variant { ratio_amp, shifted_amp, plain_amp };

SumValue sum_section7(double t, double d1, double d2, Section7Variant variant,
                      const SumConfig& cfg = {});

} // namespace zetalab::sums

#endif
