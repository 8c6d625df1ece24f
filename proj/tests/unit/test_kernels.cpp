#include <doctest.h>

#include <random>

#include "boofdeg/kernels.hpp"
#include "boofdeg/truth_table.hpp"

using namespace boofdeg;

namespace {

std::vector<std::int32_t> random_values(std::mt19937_64& rng, int n) {
    std::vector<std::int32_t> a(std::size_t{1} << n);
    for (auto& v : a) v = static_cast<std::int32_t>(rng() % 7) - 3;
    return a;
}

// Direct subset-sum definitions.
std::vector<std::int32_t> naive_mobius(const std::vector<std::int32_t>& a) {
    std::vector<std::int32_t> out(a.size(), 0);
    for (std::uint64_t s = 0; s < a.size(); ++s)
        for (std::uint64_t t = 0; t < a.size(); ++t)
            if ((t & ~s) == 0) out[s] += (popcount(s ^ t) % 2 ? -1 : 1) * a[t];
    return out;
}

std::vector<std::int32_t> naive_zeta(const std::vector<std::int32_t>& a) {
    std::vector<std::int32_t> out(a.size(), 0);
    for (std::uint64_t s = 0; s < a.size(); ++s)
        for (std::uint64_t t = 0; t < a.size(); ++t)
            if ((t & ~s) == 0) out[s] += a[t];
    return out;
}

}  // namespace

TEST_CASE("scalar transforms match their definitions") {
    std::mt19937_64 rng(1);
    for (int n = 0; n <= 7; ++n) {
        auto a = random_values(rng, n);
        auto m = a;
        kernels::scalar::mobius(m, n);
        CHECK(m == naive_mobius(a));
        auto z = a;
        kernels::scalar::zeta(z, n);
        CHECK(z == naive_zeta(a));
        kernels::scalar::mobius(z, n);
        CHECK(z == a);
    }
}

TEST_CASE("AVX2 kernels equal the scalar kernels") {
    if (!kernels::avx2::available()) {
        MESSAGE("AVX2 not available on this CPU; skipping");
        return;
    }
    std::mt19937_64 rng(2);
    for (int n = 0; n <= 16; ++n) {
        for (int t = 0; t < (n < 12 ? 5 : 1); ++t) {
            const auto a = random_values(rng, n);
            auto s = a, v = a;
            kernels::scalar::mobius(s, n);
            kernels::avx2::mobius(v, n);
            REQUIRE(s == v);
            s = a;
            v = a;
            kernels::scalar::zeta(s, n);
            kernels::avx2::zeta(v, n);
            REQUIRE(s == v);

            std::vector<std::uint8_t> bits(a.size());
            for (auto& b : bits) b = rng() & 1;
            std::vector<std::uint8_t> so(a.size()), vo(a.size());
            kernels::scalar::sensitivity_counts(bits, n, so);
            kernels::avx2::sensitivity_counts(bits, n, vo);
            REQUIRE(so == vo);
        }
    }
}

TEST_CASE("sensitivity counts match flips") {
    std::mt19937_64 rng(3);
    for (int n = 1; n <= 8; ++n) {
        std::vector<std::uint8_t> v(std::size_t{1} << n);
        for (auto& b : v) b = rng() & 1;
        std::vector<std::uint8_t> out(v.size());
        kernels::sensitivity_counts(v, n, out);
        for (std::uint64_t x = 0; x < v.size(); ++x) {
            int c = 0;
            for (int i = 0; i < n; ++i) c += v[x] != v[x ^ (std::uint64_t{1} << i)];
            REQUIRE(out[x] == c);
        }
    }
}

TEST_CASE("forcing the scalar ISA is honoured") {
    const auto before = kernels::active_isa();
    kernels::force_isa(kernels::Isa::Scalar);
    CHECK(kernels::active_isa() == kernels::Isa::Scalar);
    kernels::force_isa(before);
    CHECK(kernels::active_isa() == before);
}
