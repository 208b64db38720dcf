#include <atomic>
#include <cstdlib>
#include <string>

#include "parasharp/kernels.hpp"

namespace parasharp::kernels {

std::string_view isa_name(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(PARASHARP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

Isa detect() {
  if (const char* env = std::getenv("PARASHARP_ISA")) {
    if (std::string(env) == "scalar") return Isa::Scalar;
  }
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  current().store(isa_available(isa) ? isa : Isa::Scalar,
                  std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  return active_isa() == Isa::Avx2 ? avx2::dot(a, b) : scalar::dot(a, b);
}

double max_abs(std::span<const double> a) {
  return active_isa() == Isa::Avx2 ? avx2::max_abs(a) : scalar::max_abs(a);
}

void lincomb4(const std::array<double, 4>& c,
              const std::array<std::span<const double>, 4>& rows,
              std::span<double> out) {
  if (active_isa() == Isa::Avx2) {
    avx2::lincomb4(c, rows, out);
  } else {
    scalar::lincomb4(c, rows, out);
  }
}

}  // namespace parasharp::kernels
