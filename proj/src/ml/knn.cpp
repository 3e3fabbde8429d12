#include <algorithm>
#include <cmath>
#include <numeric>

#include "gevo/ml/models.hpp"
#include "gevo/simd/kernels.hpp"

namespace gevo::ml {

Knn Knn::train(const Dataset& data, const KnnParams& params) {
  if (data.size() == 0) throw Error("cannot train kNN on an empty dataset");
  if (params.k == 0) throw Error("kNN needs k >= 1");
  Knn knn;
  knn.params_ = params;
  knn.class_count_ = data.class_count();
  knn.labels_ = data.labels;
  for (std::size_t f = 0; f < data.feature_count(); ++f) {
    (data.kinds[f] == FeatureKind::numeric ? knn.numeric_ : knn.categorical_).push_back(f);
  }
  const double n = static_cast<double>(data.size());
  for (auto f : knn.numeric_) {
    double mean = 0.0;
    for (const auto& row : data.rows) mean += row[f];
    mean /= n;
    double var = 0.0;
    for (const auto& row : data.rows) var += (row[f] - mean) * (row[f] - mean);
    const double sd = std::sqrt(var / n);
    knn.mean_.push_back(mean);
    knn.scale_.push_back(sd > 0.0 ? sd : 1.0);
  }
  knn.points_.reserve(data.size() * knn.numeric_.size());
  for (const auto& row : data.rows) {
    for (std::size_t j = 0; j < knn.numeric_.size(); ++j) {
      knn.points_.push_back((row[knn.numeric_[j]] - knn.mean_[j]) / knn.scale_[j]);
    }
    std::vector<double> codes;
    for (auto f : knn.categorical_) codes.push_back(row[f]);
    knn.codes_.push_back(std::move(codes));
  }
  return knn;
}

std::vector<double> Knn::distances(std::span<const double> row) const {
  const std::size_t n = labels_.size();
  std::vector<double> query(numeric_.size());
  for (std::size_t j = 0; j < numeric_.size(); ++j) query[j] = (row[numeric_[j]] - mean_[j]) / scale_[j];
  std::vector<double> out(n, 0.0);
  if (!numeric_.empty()) simd::squared_distances(query, points_, numeric_.size(), out);
  for (std::size_t i = 0; i < n; ++i) {
    double d = std::sqrt(out[i]);
    for (std::size_t j = 0; j < categorical_.size(); ++j) {
      if (codes_[i][j] != row[categorical_[j]]) d += 1.0;
    }
    out[i] = d;
  }
  return out;
}

std::size_t Knn::predict(std::span<const double> row) const {
  const auto dist = distances(row);
  std::vector<std::size_t> order(dist.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t k = std::min(params_.k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) { return dist[a] != dist[b] ? dist[a] < dist[b] : a < b; });
  std::vector<std::size_t> votes(class_count_, 0);
  for (std::size_t i = 0; i < k; ++i) ++votes[labels_[order[i]]];
  std::size_t best = 0;
  for (std::size_t c = 1; c < votes.size(); ++c) {
    if (votes[c] > votes[best]) best = c;
  }
  return best;
}

}  // namespace gevo::ml
