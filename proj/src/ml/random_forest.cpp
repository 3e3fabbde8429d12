#include <algorithm>
#include <cmath>
#include <thread>

#include "gevo/ml/models.hpp"

namespace gevo::ml {

RandomForest RandomForest::train(const Dataset& data, const ForestParams& params, std::uint64_t seed) {
  if (data.size() == 0) throw Error("cannot train a forest on an empty dataset");
  if (params.trees == 0) throw Error("forest needs at least one tree");
  TreeParams tp;
  tp.min_leaf = params.min_leaf;
  tp.features_per_split = params.features_per_split != 0
                              ? params.features_per_split
                              : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(data.feature_count()))));

  RandomForest forest;
  forest.class_count_ = data.class_count();
  forest.trees_.resize(params.trees);

  // Each tree owns a generator derived from (seed, tree index), so the result
  // does not depend on how trees are spread over threads.
  auto grow = [&](std::size_t t) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + t + 1);
    std::vector<std::size_t> sample(data.size());
    for (auto& s : sample) s = draw_index(rng, data.size());
    forest.trees_[t] = DecisionTree::train(data, sample, tp, &rng);
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 8));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t t = w; t < params.trees; t += workers) grow(t);
    });
  }
  for (auto& th : pool) th.join();
  return forest;
}

std::size_t RandomForest::predict(std::span<const double> row) const {
  std::vector<std::size_t> votes(class_count_, 0);
  for (const auto& t : trees_) ++votes[t.predict(row)];
  std::size_t best = 0;
  for (std::size_t c = 1; c < votes.size(); ++c) {
    if (votes[c] > votes[best]) best = c;
  }
  return best;
}

}  // namespace gevo::ml
