#include "odolab/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

#include <cmath>

namespace odolab::kernels {
namespace {

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

inline __m256d vipow(__m256d x, int p) {
    __m256d r = _mm256_set1_pd(1.0);
    for (int k = 0; k < p; ++k) r = _mm256_mul_pd(r, x);
    return r;
}

inline double ipow(double x, int p) {
    double r = 1.0;
    for (int k = 0; k < p; ++k) r *= x;
    return r;
}

inline double hsum(__m256d acc) {
    alignas(32) double l[4];
    _mm256_store_pd(l, acc);
    return (l[0] + l[1]) + (l[2] + l[3]);
}

void scale_into(const double* src, std::size_t n, double w, double* dst) {
    const __m256d vw = _mm256_set1_pd(w);
    std::size_t c = 0;
    for (; c + 4 <= n; c += 4) _mm256_storeu_pd(dst + c, _mm256_mul_pd(_mm256_loadu_pd(src + c), vw));
    for (; c < n; ++c) dst[c] = src[c] * w;
}

double masked_sum(const std::uint8_t* mask, const double* w, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 4 <= n; c += 4) {
        __m256i m = _mm256_setr_epi64x(mask[c] ? -1 : 0, mask[c + 1] ? -1 : 0, mask[c + 2] ? -1 : 0,
                                       mask[c + 3] ? -1 : 0);
        acc = _mm256_add_pd(acc, _mm256_and_pd(_mm256_castsi256_pd(m), _mm256_loadu_pd(w + c)));
    }
    double s = hsum(acc);
    for (; c < n; ++c) s += mask[c] ? w[c] : 0.0;
    return s;
}

double abs_pow_sum(const double* v, const double* w, std::size_t n, int p) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 4 <= n; c += 4) {
        __m256d a = _mm256_and_pd(_mm256_loadu_pd(v + c), kAbsMask);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(vipow(a, p), _mm256_loadu_pd(w + c)));
    }
    double s = hsum(acc);
    for (; c < n; ++c) s += ipow(std::fabs(v[c]), p) * w[c];
    return s;
}

double abs_diff_pow_sum(const double* a, const double* b, const double* w, std::size_t n, int p) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 4 <= n; c += 4) {
        __m256d d = _mm256_and_pd(_mm256_sub_pd(_mm256_loadu_pd(a + c), _mm256_loadu_pd(b + c)), kAbsMask);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(vipow(d, p), _mm256_loadu_pd(w + c)));
    }
    double s = hsum(acc);
    for (; c < n; ++c) s += ipow(std::fabs(a[c] - b[c]), p) * w[c];
    return s;
}

double sum(const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 4 <= n; c += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + c));
    double s = hsum(acc);
    for (; c < n; ++c) s += v[c];
    return s;
}

const KernelTable table{"avx2", scale_into, masked_sum, abs_pow_sum, abs_diff_pow_sum, sum};

}  // namespace

const KernelTable* avx2_table_impl() { return &table; }

}  // namespace odolab::kernels

#else

namespace odolab::kernels {
const KernelTable* avx2_table_impl() { return nullptr; }
}  // namespace odolab::kernels

#endif
