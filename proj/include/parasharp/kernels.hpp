#pragma once

// Data-parallel inner loops of the quadrature engine.
//
// Every kernel exists as a scalar reference implementation and, on x86-64, an
// AVX2 variant selected at runtime. Both variants perform the same floating
// point operations in the same order (four interleaved partial sums, no fused
// multiply-add), so their results are bit-identical. The equivalence tests
// rely on this, and so does the byte-for-byte reproducibility of CLI output
// across machines with and without AVX2.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

namespace parasharp::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// True when the running CPU (and this build) can execute `isa`.
bool isa_available(Isa isa);

/// ISA used by the dispatching entry points below. Defaults to the best
/// available one; `PARASHARP_ISA=scalar` in the environment forces the
/// reference path.
Isa active_isa();
void set_active_isa(Isa isa);

// Dispatching entry points.
double dot(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> a);
/// out[i] = ((c0*r0[i] + c1*r1[i]) + c2*r2[i]) + c3*r3[i]
void lincomb4(const std::array<double, 4>& c,
              const std::array<std::span<const double>, 4>& rows,
              std::span<double> out);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> a);
void lincomb4(const std::array<double, 4>& c,
              const std::array<std::span<const double>, 4>& rows,
              std::span<double> out);
}  // namespace scalar

namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> a);
void lincomb4(const std::array<double, 4>& c,
              const std::array<std::span<const double>, 4>& rows,
              std::span<double> out);
}  // namespace avx2

}  // namespace parasharp::kernels
