#ifndef ZETALAB_PARALLEL_HPP
#define ZETALAB_PARALLEL_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <omp.h>

namespace zetalab {

/// Kahan compensated accumulator for complex values.
struct KahanSum {
    std::complex<double> sum{0.0, 0.0};
    std::complex<double> comp{0.0, 0.0};

    void add(std::complex<double> x) {
        std::complex<double> y = x - comp;
        std::complex<double> t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double compensation() const { return std::abs(comp); }
};

/// Sums v[lo..hi) by recursive halving. The reduction tree depends only on
/// the element order, so merged chunk results are reproducible regardless of
/// how the chunks themselves were scheduled.
inline std::complex<double> pairwise_merge(const std::vector<std::complex<double>>& v,
                                           std::size_t lo, std::size_t hi) {
    if (hi - lo == 0) return {0.0, 0.0};
    if (hi - lo == 1) return v[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_merge(v, lo, mid) + pairwise_merge(v, mid, hi);
}

inline std::complex<double> pairwise_merge(const std::vector<std::complex<double>>& v) {
    return pairwise_merge(v, 0, v.size());
}

inline void set_thread_count(int n) {
    if (n > 0) omp_set_num_threads(n);
}

inline int max_threads() { return omp_get_max_threads(); }

} // namespace zetalab

#endif
