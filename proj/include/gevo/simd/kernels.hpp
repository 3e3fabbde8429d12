#pragma once

// Data-parallel inner loops used by clique percolation (bitset overlap counts)
// and the nearest-neighbour classifier (row distances). Each kernel has a
// scalar reference in gevo::simd::scalar and, on x86-64, an AVX2 variant in
// gevo::simd::avx2. The unqualified entry points dispatch at runtime.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace gevo::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

bool isa_available(Isa isa);

/// Selected on first use: the best available ISA, unless GEVO_SIMD=scalar|avx2
/// is set in the environment.
Isa active_isa();

/// Overrides the selection for the rest of the process. Throws if the ISA is
/// not available on this CPU.
void set_active_isa(Isa isa);

/// popcount(a & b) over equally sized word arrays.
std::size_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// out[r] = sum_j (query[j] - rows[r*dim + j])^2 for each row r.
void squared_distances(std::span<const double> query, std::span<const double> rows, std::size_t dim,
                       std::span<double> out);

namespace scalar {
std::size_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
void squared_distances(std::span<const double> query, std::span<const double> rows, std::size_t dim,
                       std::span<double> out);
}  // namespace scalar

namespace avx2 {
std::size_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
void squared_distances(std::span<const double> query, std::span<const double> rows, std::size_t dim,
                       std::span<double> out);
}  // namespace avx2

}  // namespace gevo::simd
