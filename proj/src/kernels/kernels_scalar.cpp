#include "boofdeg/kernels.hpp"

namespace boofdeg::kernels::scalar {

void mobius(std::span<std::int32_t> a, int n) {
    const std::size_t size = std::size_t{1} << n;
    for (int i = 0; i < n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t x = 0; x < size; ++x)
            if (x & bit) a[x] -= a[x ^ bit];
    }
}

void zeta(std::span<std::int32_t> a, int n) {
    const std::size_t size = std::size_t{1} << n;
    for (int i = 0; i < n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t x = 0; x < size; ++x)
            if (x & bit) a[x] += a[x ^ bit];
    }
}

void sensitivity_counts(std::span<const std::uint8_t> v, int n, std::span<std::uint8_t> out) {
    const std::size_t size = std::size_t{1} << n;
    for (std::size_t x = 0; x < size; ++x) {
        std::uint8_t c = 0;
        for (int i = 0; i < n; ++i) c += v[x] != v[x ^ (std::size_t{1} << i)];
        out[x] = c;
    }
}

}  // namespace boofdeg::kernels::scalar
