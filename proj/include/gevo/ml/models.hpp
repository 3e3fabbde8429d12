#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gevo/ml/dataset.hpp"

namespace gevo::ml {

class Model {
 public:
  virtual ~Model() = default;
  virtual std::size_t predict(std::span<const double> row) const = 0;
  std::vector<std::size_t> predict_all(const Dataset& data) const;
};

struct TreeParams {
  std::size_t min_leaf = 2;
  std::size_t max_depth = std::numeric_limits<std::size_t>::max();
  std::size_t features_per_split = 0;  // 0: all features
};

/// CART with Gini impurity. Numeric splits go left on x <= threshold,
/// categorical splits go left on x == value.
class DecisionTree final : public Model {
 public:
  struct Node {
    bool leaf = true;
    std::size_t label = 0;
    std::size_t feature = 0;
    bool categorical = false;
    double threshold = 0;  // numeric: split point; categorical: category code
    std::size_t left = 0;
    std::size_t right = 0;
  };

  static DecisionTree train(const Dataset& data, const TreeParams& params);
  /// Trains on data rows listed in sample (duplicates allowed). When
  /// params.features_per_split is set, candidate features are drawn from rng.
  static DecisionTree train(const Dataset& data, std::span<const std::size_t> sample, const TreeParams& params,
                            std::mt19937_64* rng);

  std::size_t predict(std::span<const double> row) const override;
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t depth() const;
  std::size_t leaf_count() const;

 private:
  std::vector<Node> nodes_;
};

/// Weighted Gini impurity of a class histogram.
double gini(std::span<const std::size_t> counts);

struct ForestParams {
  std::size_t trees = 100;
  std::size_t features_per_split = 0;  // 0: ceil(sqrt(feature count))
  std::size_t min_leaf = 1;
};

class RandomForest final : public Model {
 public:
  static RandomForest train(const Dataset& data, const ForestParams& params, std::uint64_t seed);
  std::size_t predict(std::span<const double> row) const override;
  std::size_t tree_count() const { return trees_.size(); }

 private:
  std::vector<DecisionTree> trees_;
  std::size_t class_count_ = 0;
};

class NaiveBayes final : public Model {
 public:
  static constexpr double kVarianceFloor = 1e-9;

  static NaiveBayes train(const Dataset& data);
  std::size_t predict(std::span<const double> row) const override;
  /// Log prior plus log likelihood per class; -inf for classes absent from training.
  std::vector<double> log_joint(std::span<const double> row) const;

 private:
  std::vector<FeatureKind> kinds_;
  std::vector<double> log_prior_;
  std::vector<std::vector<double>> mean_;      // [class][feature]
  std::vector<std::vector<double>> variance_;  // [class][feature]
  std::vector<std::vector<std::vector<double>>> log_category_;  // [class][feature][code]
};

struct KnnParams {
  std::size_t k = 1;
};

/// Euclidean distance on z-normalised numeric features plus the number of
/// mismatching categorical slots.
class Knn final : public Model {
 public:
  static Knn train(const Dataset& data, const KnnParams& params);
  std::size_t predict(std::span<const double> row) const override;
  /// Distance from row to every training instance, in training order.
  std::vector<double> distances(std::span<const double> row) const;

 private:
  KnnParams params_;
  std::size_t class_count_ = 0;
  std::vector<std::size_t> numeric_;      // numeric feature columns
  std::vector<std::size_t> categorical_;  // categorical feature columns
  std::vector<double> mean_;
  std::vector<double> scale_;
  std::vector<double> points_;  // normalised numeric part, row-major
  std::vector<std::vector<double>> codes_;
  std::vector<std::size_t> labels_;
};

enum class ClassifierKind { tree, forest, nb, knn };

std::string to_string(ClassifierKind k);
ClassifierKind classifier_from_string(const std::string& s);

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::tree;
  TreeParams tree;
  ForestParams forest;
  KnnParams knn;
};

std::unique_ptr<Model> train(const ClassifierSpec& spec, const Dataset& data, std::uint64_t seed);

}  // namespace gevo::ml
