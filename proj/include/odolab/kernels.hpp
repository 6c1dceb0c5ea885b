#pragma once

// Float-backend inner loops. Each kernel has a scalar reference version and an
// AVX2 version; active() picks one at runtime.

#include <cstddef>
#include <cstdint>
#include <string>

namespace odolab::kernels {

struct KernelTable {
    const char* name;
    /// dst[c] = src[c] * w
    void (*scale_into)(const double* src, std::size_t n, double w, double* dst);
    /// sum of w[c] where mask[c] != 0
    double (*masked_sum)(const std::uint8_t* mask, const double* w, std::size_t n);
    /// sum of |v[c]|^p * w[c], integer p >= 1
    double (*abs_pow_sum)(const double* v, const double* w, std::size_t n, int p);
    /// sum of |a[c]-b[c]|^p * w[c], integer p >= 1
    double (*abs_diff_pow_sum)(const double* a, const double* b, const double* w, std::size_t n, int p);
    /// plain sum
    double (*sum)(const double* v, std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when the build or the CPU lacks AVX2
const KernelTable* avx2_table();
/// AVX2 if the CPU supports it and ODOLAB_KERNELS != "scalar"
const KernelTable& active();

}  // namespace odolab::kernels
