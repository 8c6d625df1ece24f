#include "boofdeg/kernels.hpp"

#if defined(BOOFDEG_HAVE_AVX2)
#include <immintrin.h>
#endif

namespace boofdeg::kernels::avx2 {

#if defined(BOOFDEG_HAVE_AVX2)

bool available() { return __builtin_cpu_supports("avx2"); }

namespace {

// Butterfly over strides < 8 stays scalar; the wide strides move 8 lanes.
template <bool Subtract>
void transform(std::span<std::int32_t> a, int n) {
    const std::size_t size = std::size_t{1} << n;
    for (int i = 0; i < n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        if (bit < 8) {
            for (std::size_t x = 0; x < size; ++x) {
                if (!(x & bit)) continue;
                if constexpr (Subtract) a[x] -= a[x ^ bit];
                else a[x] += a[x ^ bit];
            }
            continue;
        }
        for (std::size_t base = 0; base < size; base += 2 * bit) {
            std::int32_t* lo = a.data() + base;
            std::int32_t* hi = lo + bit;
            for (std::size_t j = 0; j < bit; j += 8) {
                __m256i l = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lo + j));
                __m256i h = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hi + j));
                h = Subtract ? _mm256_sub_epi32(h, l) : _mm256_add_epi32(h, l);
                _mm256_storeu_si256(reinterpret_cast<__m256i*>(hi + j), h);
            }
        }
    }
}

}  // namespace

void mobius(std::span<std::int32_t> a, int n) { transform<true>(a, n); }
void zeta(std::span<std::int32_t> a, int n) { transform<false>(a, n); }

void sensitivity_counts(std::span<const std::uint8_t> v, int n, std::span<std::uint8_t> out) {
    const std::size_t size = std::size_t{1} << n;
    if (n < 5) {
        scalar::sensitivity_counts(v, n, out);
        return;
    }
    // Low five bits: per-byte scalar; strides >= 32 compare whole vectors.
    for (std::size_t x = 0; x < size; ++x) {
        std::uint8_t c = 0;
        for (int i = 0; i < 5; ++i) c += v[x] != v[x ^ (std::size_t{1} << i)];
        out[x] = c;
    }
    const __m256i one = _mm256_set1_epi8(1);
    for (int i = 5; i < n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t x = 0; x < size; x += 32) {
            const std::size_t y = x ^ bit;
            __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v.data() + x));
            __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v.data() + y));
            __m256i diff = _mm256_and_si256(_mm256_xor_si256(a, b), one);
            __m256i acc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(out.data() + x));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + x), _mm256_add_epi8(acc, diff));
        }
    }
}

#else

bool available() { return false; }
void mobius(std::span<std::int32_t> a, int n) { scalar::mobius(a, n); }
void zeta(std::span<std::int32_t> a, int n) { scalar::zeta(a, n); }
void sensitivity_counts(std::span<const std::uint8_t> v, int n, std::span<std::uint8_t> out) {
    scalar::sensitivity_counts(v, n, out);
}

#endif

}  // namespace boofdeg::kernels::avx2
