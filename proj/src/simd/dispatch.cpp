#include <atomic>
#include <cstdlib>
#include <string>

#include "gevo/common.hpp"
#include "gevo/simd/kernels.hpp"

namespace gevo::simd {
namespace {

Isa detect_best() {
#if defined(GEVO_HAVE_AVX2_TU)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") && __builtin_cpu_supports("popcnt")) {
    return Isa::avx2;
  }
#endif
  return Isa::scalar;
}

Isa initial_isa() {
  if (const char* env = std::getenv("GEVO_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
  }
  return detect_best();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
  return detect_best() == Isa::avx2;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) throw Error("SIMD variant '" + std::string(isa_name(isa)) + "' is not available");
  current().store(isa, std::memory_order_relaxed);
}

std::size_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
#if defined(GEVO_HAVE_AVX2_TU)
  if (active_isa() == Isa::avx2) return avx2::and_popcount(a, b);
#endif
  return scalar::and_popcount(a, b);
}

void squared_distances(std::span<const double> query, std::span<const double> rows, std::size_t dim,
                       std::span<double> out) {
#if defined(GEVO_HAVE_AVX2_TU)
  if (active_isa() == Isa::avx2) return avx2::squared_distances(query, rows, dim, out);
#endif
  scalar::squared_distances(query, rows, dim, out);
}

}  // namespace gevo::simd
