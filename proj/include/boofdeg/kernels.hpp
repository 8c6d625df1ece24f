#pragma once

#include <cstdint>
#include <span>

namespace boofdeg::kernels {

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);

/// Best instruction set supported by the running CPU and compiled in.
Isa detected_isa();
/// ISA used by the dispatching entry points. Defaults to detected_isa();
/// the BOOFDEG_ISA=scalar environment variable forces the reference path.
Isa active_isa();
/// Test hook. Requests for an unsupported ISA fall back to Scalar.
void force_isa(Isa isa);

/// In-place Moebius transform over the subset lattice of n bits:
/// a[S] <- sum over T subset of S of (-1)^{|S \ T|} a[T]. a.size() == 2^n.
void mobius(std::span<std::int32_t> a, int n);
/// In-place zeta transform (subset sums), the inverse of mobius.
void zeta(std::span<std::int32_t> a, int n);
/// out[x] = number of i with v[x] != v[x ^ (1 << i)], for 0/1 bytes v.
void sensitivity_counts(std::span<const std::uint8_t> v, int n, std::span<std::uint8_t> out);

namespace scalar {
void mobius(std::span<std::int32_t> a, int n);
void zeta(std::span<std::int32_t> a, int n);
void sensitivity_counts(std::span<const std::uint8_t> v, int n, std::span<std::uint8_t> out);
}  // namespace scalar

namespace avx2 {
bool available();
void mobius(std::span<std::int32_t> a, int n);
void zeta(std::span<std::int32_t> a, int n);
void sensitivity_counts(std::span<const std::uint8_t> v, int n, std::span<std::uint8_t> out);
}  // namespace avx2

}  // namespace boofdeg::kernels
