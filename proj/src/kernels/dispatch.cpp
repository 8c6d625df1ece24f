#include <atomic>
#include <cstdlib>
#include <cstring>

#include "boofdeg/kernels.hpp"

namespace boofdeg::kernels {

namespace {

Isa initial_isa() {
    const char* env = std::getenv("BOOFDEG_ISA");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
    return detected_isa();
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

const char* to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() { return avx2::available() ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
    if (isa == Isa::Avx2 && !avx2::available()) isa = Isa::Scalar;
    current().store(isa, std::memory_order_relaxed);
}

void mobius(std::span<std::int32_t> a, int n) {
    if (active_isa() == Isa::Avx2) avx2::mobius(a, n);
    else scalar::mobius(a, n);
}

void zeta(std::span<std::int32_t> a, int n) {
    if (active_isa() == Isa::Avx2) avx2::zeta(a, n);
    else scalar::zeta(a, n);
}

void sensitivity_counts(std::span<const std::uint8_t> v, int n, std::span<std::uint8_t> out) {
    if (active_isa() == Isa::Avx2) avx2::sensitivity_counts(v, n, out);
    else scalar::sensitivity_counts(v, n, out);
}

}  // namespace boofdeg::kernels
