#include <bit>

#include "gevo/simd/kernels.hpp"

namespace gevo::simd::scalar {

std::size_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  }
  return n;
}

void squared_distances(std::span<const double> query, std::span<const double> rows, std::size_t dim,
                       std::span<double> out) {
  for (std::size_t r = 0; r < out.size(); ++r) {
    const double* row = rows.data() + r * dim;
    double acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double d = query[j] - row[j];
      acc += d * d;
    }
    out[r] = acc;
  }
}

}  // namespace gevo::simd::scalar
