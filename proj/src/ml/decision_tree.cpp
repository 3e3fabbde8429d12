#include <algorithm>
#include <numeric>
#include <utility>

#include "gevo/ml/models.hpp"

namespace gevo::ml {

std::vector<std::size_t> Model::predict_all(const Dataset& data) const {
  std::vector<std::size_t> out;
  out.reserve(data.size());
  for (const auto& row : data.rows) out.push_back(predict(row));
  return out;
}

double gini(std::span<const std::size_t> counts) {
  double n = 0.0;
  double sq = 0.0;
  for (auto c : counts) {
    n += static_cast<double>(c);
    sq += static_cast<double>(c) * static_cast<double>(c);
  }
  return n == 0.0 ? 0.0 : 1.0 - sq / (n * n);
}

namespace {

std::size_t majority(const std::vector<std::size_t>& counts) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c) {
    if (counts[c] > counts[best]) best = c;
  }
  return best;
}

// Sum of squared class counts divided by the node size. Larger is purer; the
// impurity decrease of a split is left + right - parent in these units.
double purity(double sum_sq, double n) { return n == 0.0 ? 0.0 : sum_sq / n; }

struct Split {
  bool found = false;
  double score = 0;
  std::size_t feature = 0;
  bool categorical = false;
  double threshold = 0;
};

class Builder {
 public:
  Builder(const Dataset& data, const TreeParams& params, std::mt19937_64* rng)
      : data_(data), params_(params), rng_(rng), classes_(data.class_count()) {}

  std::vector<DecisionTree::Node> run(std::vector<std::size_t> sample) {
    build(std::move(sample), 0);
    return std::move(nodes_);
  }

 private:
  std::size_t build(std::vector<std::size_t> idx, std::size_t depth) {
    const std::size_t id = nodes_.size();
    nodes_.emplace_back();
    std::vector<std::size_t> counts(classes_, 0);
    for (auto i : idx) ++counts[data_.labels[i]];
    nodes_[id].label = majority(counts);

    const bool pure = counts[nodes_[id].label] == idx.size();
    if (pure || idx.size() < 2 * params_.min_leaf || depth >= params_.max_depth) return id;

    double parent_sq = 0.0;
    for (auto c : counts) parent_sq += static_cast<double>(c) * static_cast<double>(c);
    const Split best = search(idx, purity(parent_sq, static_cast<double>(idx.size())));
    if (!best.found) return id;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (auto i : idx) {
      const double v = data_.rows[i][best.feature];
      const bool go_left = best.categorical ? v == best.threshold : v <= best.threshold;
      (go_left ? left : right).push_back(i);
    }
    idx.clear();
    idx.shrink_to_fit();

    nodes_[id].leaf = false;
    nodes_[id].feature = best.feature;
    nodes_[id].categorical = best.categorical;
    nodes_[id].threshold = best.threshold;
    const std::size_t l = build(std::move(left), depth + 1);
    const std::size_t r = build(std::move(right), depth + 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  std::vector<std::size_t> candidate_features() {
    std::vector<std::size_t> f(data_.feature_count());
    std::iota(f.begin(), f.end(), 0);
    const std::size_t m = params_.features_per_split;
    if (m == 0 || m >= f.size() || rng_ == nullptr) return f;
    for (std::size_t i = 0; i < m; ++i) std::swap(f[i], f[i + draw_index(*rng_, f.size() - i)]);
    f.resize(m);
    std::sort(f.begin(), f.end());
    return f;
  }

  Split search(const std::vector<std::size_t>& idx, double parent) {
    Split best;
    std::vector<std::pair<double, std::size_t>> column(idx.size());
    for (auto f : candidate_features()) {
      for (std::size_t i = 0; i < idx.size(); ++i) column[i] = {data_.rows[idx[i]][f], data_.labels[idx[i]]};
      if (data_.kinds[f] == FeatureKind::numeric) {
        numeric_split(column, f, parent, best);
      } else {
        categorical_split(column, f, parent, best);
      }
    }
    return best;
  }

  void consider(Split& best, double score, double parent, std::size_t feature, bool categorical, double threshold) {
    if (score <= parent + 1e-12) return;
    if (best.found && score <= best.score + 1e-12) return;
    best = {true, score, feature, categorical, threshold};
  }

  void numeric_split(std::vector<std::pair<double, std::size_t>>& column, std::size_t f, double parent,
                     Split& best) {
    std::sort(column.begin(), column.end());
    std::vector<std::size_t> left(classes_, 0);
    std::vector<std::size_t> right(classes_, 0);
    for (const auto& [v, c] : column) ++right[c];
    double sl = 0.0;
    double sr = 0.0;
    for (auto c : right) sr += static_cast<double>(c) * static_cast<double>(c);
    for (std::size_t i = 0; i + 1 < column.size(); ++i) {
      const std::size_t c = column[i].second;
      sl += 2.0 * static_cast<double>(left[c]) + 1.0;
      sr -= 2.0 * static_cast<double>(right[c]) - 1.0;
      ++left[c];
      --right[c];
      if (column[i].first == column[i + 1].first) continue;
      const std::size_t nl = i + 1;
      const std::size_t nr = column.size() - nl;
      if (nl < params_.min_leaf || nr < params_.min_leaf) continue;
      const double score = purity(sl, static_cast<double>(nl)) + purity(sr, static_cast<double>(nr));
      double thr = column[i].first + (column[i + 1].first - column[i].first) / 2.0;
      if (!(thr < column[i + 1].first)) thr = column[i].first;
      consider(best, score, parent, f, false, thr);
    }
  }

  void categorical_split(const std::vector<std::pair<double, std::size_t>>& column, std::size_t f,
                         double parent, Split& best) {
    const std::size_t values = data_.categories[f].size();
    std::vector<std::vector<std::size_t>> by_value(values, std::vector<std::size_t>(classes_, 0));
    std::vector<std::size_t> total(classes_, 0);
    for (const auto& [v, c] : column) {
      ++by_value[static_cast<std::size_t>(v)][c];
      ++total[c];
    }
    for (std::size_t v = 0; v < values; ++v) {
      double sl = 0.0;
      double sr = 0.0;
      std::size_t nl = 0;
      for (std::size_t c = 0; c < classes_; ++c) {
        const double l = static_cast<double>(by_value[v][c]);
        const double r = static_cast<double>(total[c] - by_value[v][c]);
        sl += l * l;
        sr += r * r;
        nl += by_value[v][c];
      }
      const std::size_t nr = column.size() - nl;
      if (nl < params_.min_leaf || nr < params_.min_leaf || nl == 0 || nr == 0) continue;
      consider(best, purity(sl, static_cast<double>(nl)) + purity(sr, static_cast<double>(nr)), parent, f, true,
               static_cast<double>(v));
    }
  }

  const Dataset& data_;
  const TreeParams& params_;
  std::mt19937_64* rng_;
  std::size_t classes_;
  std::vector<DecisionTree::Node> nodes_;
};

}  // namespace

DecisionTree DecisionTree::train(const Dataset& data, const TreeParams& params) {
  std::vector<std::size_t> all(data.size());
  std::iota(all.begin(), all.end(), 0);
  return train(data, all, params, nullptr);
}

DecisionTree DecisionTree::train(const Dataset& data, std::span<const std::size_t> sample, const TreeParams& params,
                                 std::mt19937_64* rng) {
  if (data.size() == 0 || sample.empty()) throw Error("cannot train a tree on an empty dataset");
  if (params.min_leaf == 0) throw Error("min_leaf must be >= 1");
  DecisionTree tree;
  tree.nodes_ = Builder(data, params, rng).run(std::vector<std::size_t>(sample.begin(), sample.end()));
  return tree;
}

std::size_t DecisionTree::predict(std::span<const double> row) const {
  std::size_t id = 0;
  while (!nodes_[id].leaf) {
    const auto& n = nodes_[id];
    const double v = row[n.feature];
    const bool go_left = n.categorical ? v == n.threshold : v <= n.threshold;
    id = go_left ? n.left : n.right;
  }
  return nodes_[id].label;
}

std::size_t DecisionTree::depth() const {
  std::vector<std::pair<std::size_t, std::size_t>> stack = {{0, 0}};
  std::size_t deepest = 0;
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (!nodes_[id].leaf) {
      stack.push_back({nodes_[id].left, d + 1});
      stack.push_back({nodes_[id].right, d + 1});
    }
  }
  return deepest;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.leaf; }));
}

}  // namespace gevo::ml
