#include "odolab/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace odolab::kernels;

namespace {

struct Data {
    std::vector<double> a, b, w;
    std::vector<std::uint8_t> mask;
};

Data make(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.0, 1.0);
    Data d;
    for (std::size_t c = 0; c < n; ++c) {
        d.a.push_back(u(rng));
        d.b.push_back(u(rng));
        d.w.push_back(pos(rng));
        d.mask.push_back(static_cast<std::uint8_t>(rng() & 1));
    }
    return d;
}

bool close(double x, double y) { return std::fabs(x - y) <= 1e-12 * std::max(1.0, std::fabs(y)); }

}  // namespace

TEST_CASE("scalar kernels on hand values") {
    const auto& k = scalar_table();
    std::vector<double> v{1, -2, 3}, w{0.5, 0.25, 0.25}, out(3);
    std::vector<std::uint8_t> m{1, 0, 1};
    k.scale_into(v.data(), 3, 2.0, out.data());
    CHECK(out == std::vector<double>{2, -4, 6});
    CHECK(k.masked_sum(m.data(), w.data(), 3) == doctest::Approx(0.75));
    CHECK(k.abs_pow_sum(v.data(), w.data(), 3, 2) == doctest::Approx(0.5 + 1 + 2.25));
    CHECK(k.abs_diff_pow_sum(v.data(), out.data(), w.data(), 3, 1) == doctest::Approx(0.5 + 0.5 + 0.75));
    CHECK(k.sum(v.data(), 3) == doctest::Approx(2.0));
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
    const KernelTable* avx = avx2_table();
    if (!avx) {
        MESSAGE("AVX2 unavailable, only the scalar table is exercised");
        return;
    }
    const auto& ref = scalar_table();
    // odd lengths hit the remainder loops
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 33u, 1000u, 4099u}) {
        auto d = make(n, 17 + n);
        std::vector<double> o1(n), o2(n);
        ref.scale_into(d.a.data(), n, 0.3, o1.data());
        avx->scale_into(d.a.data(), n, 0.3, o2.data());
        CHECK(o1 == o2);
        CHECK(close(avx->masked_sum(d.mask.data(), d.w.data(), n), ref.masked_sum(d.mask.data(), d.w.data(), n)));
        CHECK(close(avx->sum(d.a.data(), n), ref.sum(d.a.data(), n)));
        for (int p : {1, 2, 3, 5}) {
            CHECK(close(avx->abs_pow_sum(d.a.data(), d.w.data(), n, p), ref.abs_pow_sum(d.a.data(), d.w.data(), n, p)));
            CHECK(close(avx->abs_diff_pow_sum(d.a.data(), d.b.data(), d.w.data(), n, p),
                        ref.abs_diff_pow_sum(d.a.data(), d.b.data(), d.w.data(), n, p)));
        }
    }
}

TEST_CASE("active table is one of the two") {
    const auto& a = active();
    CHECK((&a == &scalar_table() || &a == avx2_table()));
}
