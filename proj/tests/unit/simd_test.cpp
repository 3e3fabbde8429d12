#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "gevo/simd/kernels.hpp"

using namespace gevo::simd;

TEST(Simd, ScalarPopcount) {
  const std::vector<std::uint64_t> a = {0xFF, 0xF0F0};
  const std::vector<std::uint64_t> b = {0x0F, 0xFFFF};
  EXPECT_EQ(scalar::and_popcount(a, b), 4u + 8u);
}

TEST(Simd, ScalarDistances) {
  const std::vector<double> q = {1, 2};
  const std::vector<double> rows = {1, 2, 4, 6};
  std::vector<double> out(2);
  scalar::squared_distances(q, rows, 2, out);
  EXPECT_EQ(out, (std::vector<double>{0.0, 25.0}));
}

TEST(Simd, Avx2MatchesScalar) {
  if (!isa_available(Isa::avx2)) GTEST_SKIP() << "no AVX2 on this CPU";
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-5, 5);
  for (std::size_t words = 0; words < 40; ++words) {
    std::vector<std::uint64_t> a(words);
    std::vector<std::uint64_t> b(words);
    for (auto& x : a) x = rng();
    for (auto& x : b) x = rng();
    EXPECT_EQ(avx2::and_popcount(a, b), scalar::and_popcount(a, b)) << words;
  }
  for (std::size_t dim = 1; dim < 20; ++dim) {
    const std::size_t n = 1 + dim % 7;
    std::vector<double> q(dim);
    std::vector<double> rows(dim * n);
    for (auto& x : q) x = u(rng);
    for (auto& x : rows) x = u(rng);
    std::vector<double> s(n);
    std::vector<double> v(n);
    scalar::squared_distances(q, rows, dim, s);
    avx2::squared_distances(q, rows, dim, v);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(v[i], s[i], 1e-12 * (1.0 + s[i]));
  }
}

TEST(Simd, DispatchOverride) {
  const auto before = active_isa();
  set_active_isa(Isa::scalar);
  EXPECT_EQ(active_isa(), Isa::scalar);
  EXPECT_EQ(isa_name(Isa::scalar), "scalar");
  const std::vector<std::uint64_t> a = {~0ULL};
  EXPECT_EQ(and_popcount(a, a), 64u);
  set_active_isa(before);
}
