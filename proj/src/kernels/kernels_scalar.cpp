#include "odolab/kernels.hpp"

#include <cmath>

namespace odolab::kernels {
namespace {

inline double ipow(double x, int p) {
    double r = 1.0;
    for (int k = 0; k < p; ++k) r *= x;
    return r;
}

void scale_into(const double* src, std::size_t n, double w, double* dst) {
    for (std::size_t c = 0; c < n; ++c) dst[c] = src[c] * w;
}

// Reductions keep four interleaved partial sums so the result is the same
// whatever the vector width of the caller's machine would have been.
double masked_sum(const std::uint8_t* mask, const double* w, std::size_t n) {
    double acc[4] = {0, 0, 0, 0};
    std::size_t c = 0;
    for (; c + 4 <= n; c += 4)
        for (int l = 0; l < 4; ++l) acc[l] += mask[c + l] ? w[c + l] : 0.0;
    double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (; c < n; ++c) s += mask[c] ? w[c] : 0.0;
    return s;
}

double abs_pow_sum(const double* v, const double* w, std::size_t n, int p) {
    double acc[4] = {0, 0, 0, 0};
    std::size_t c = 0;
    for (; c + 4 <= n; c += 4)
        for (int l = 0; l < 4; ++l) acc[l] += ipow(std::fabs(v[c + l]), p) * w[c + l];
    double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (; c < n; ++c) s += ipow(std::fabs(v[c]), p) * w[c];
    return s;
}

double abs_diff_pow_sum(const double* a, const double* b, const double* w, std::size_t n, int p) {
    double acc[4] = {0, 0, 0, 0};
    std::size_t c = 0;
    for (; c + 4 <= n; c += 4)
        for (int l = 0; l < 4; ++l) acc[l] += ipow(std::fabs(a[c + l] - b[c + l]), p) * w[c + l];
    double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (; c < n; ++c) s += ipow(std::fabs(a[c] - b[c]), p) * w[c];
    return s;
}

double sum(const double* v, std::size_t n) {
    double acc[4] = {0, 0, 0, 0};
    std::size_t c = 0;
    for (; c + 4 <= n; c += 4)
        for (int l = 0; l < 4; ++l) acc[l] += v[c + l];
    double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (; c < n; ++c) s += v[c];
    return s;
}

const KernelTable table{"scalar", scale_into, masked_sum, abs_pow_sum, abs_diff_pow_sum, sum};

}  // namespace

const KernelTable& scalar_table() { return table; }

}  // namespace odolab::kernels
