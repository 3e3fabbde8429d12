#include <cmath>
#include <limits>
#include <numbers>

#include "gevo/ml/models.hpp"

namespace gevo::ml {

NaiveBayes NaiveBayes::train(const Dataset& data) {
  if (data.size() == 0) throw Error("cannot train naive Bayes on an empty dataset");
  const std::size_t classes = data.class_count();
  const std::size_t m = data.feature_count();
  NaiveBayes nb;
  nb.kinds_ = data.kinds;
  nb.mean_.assign(classes, std::vector<double>(m, 0.0));
  nb.variance_.assign(classes, std::vector<double>(m, 0.0));
  nb.log_category_.assign(classes, std::vector<std::vector<double>>(m));

  const auto counts = data.class_counts();
  for (std::size_t c = 0; c < classes; ++c) {
    nb.log_prior_.push_back(counts[c] == 0 ? -std::numeric_limits<double>::infinity()
                                           : std::log(static_cast<double>(counts[c]) / static_cast<double>(data.size())));
  }

  std::vector<std::vector<std::vector<double>>> cat_counts(classes, std::vector<std::vector<double>>(m));
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t f = 0; f < m; ++f) cat_counts[c][f].assign(data.categories[f].size(), 0.0);
  }
  for (std::size_t r = 0; r < data.size(); ++r) {
    const auto c = data.labels[r];
    for (std::size_t f = 0; f < m; ++f) {
      const double v = data.rows[r][f];
      if (data.kinds[f] == FeatureKind::numeric) {
        nb.mean_[c][f] += v;
      } else {
        cat_counts[c][f][static_cast<std::size_t>(v)] += 1.0;
      }
    }
  }
  for (std::size_t c = 0; c < classes; ++c) {
    if (counts[c] == 0) continue;
    for (std::size_t f = 0; f < m; ++f) nb.mean_[c][f] /= static_cast<double>(counts[c]);
  }
  for (std::size_t r = 0; r < data.size(); ++r) {
    const auto c = data.labels[r];
    for (std::size_t f = 0; f < m; ++f) {
      if (data.kinds[f] != FeatureKind::numeric) continue;
      const double d = data.rows[r][f] - nb.mean_[c][f];
      nb.variance_[c][f] += d * d;
    }
  }
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t f = 0; f < m; ++f) {
      if (data.kinds[f] == FeatureKind::numeric) {
        const double var = counts[c] == 0 ? 0.0 : nb.variance_[c][f] / static_cast<double>(counts[c]);
        nb.variance_[c][f] = std::max(var, kVarianceFloor);
      } else {
        const double values = static_cast<double>(data.categories[f].size());
        for (double k : cat_counts[c][f]) {
          nb.log_category_[c][f].push_back(std::log((k + 1.0) / (static_cast<double>(counts[c]) + values)));
        }
      }
    }
  }
  return nb;
}

std::vector<double> NaiveBayes::log_joint(std::span<const double> row) const {
  std::vector<double> out(log_prior_.size());
  for (std::size_t c = 0; c < out.size(); ++c) {
    double lp = log_prior_[c];
    if (std::isinf(lp)) {
      out[c] = lp;
      continue;
    }
    for (std::size_t f = 0; f < kinds_.size(); ++f) {
      if (kinds_[f] == FeatureKind::numeric) {
        const double var = variance_[c][f];
        const double d = row[f] - mean_[c][f];
        lp += -0.5 * std::log(2.0 * std::numbers::pi * var) - d * d / (2.0 * var);
      } else {
        lp += log_category_[c][f].at(static_cast<std::size_t>(row[f]));
      }
    }
    out[c] = lp;
  }
  return out;
}

std::size_t NaiveBayes::predict(std::span<const double> row) const {
  const auto lj = log_joint(row);
  std::size_t best = 0;
  for (std::size_t c = 1; c < lj.size(); ++c) {
    if (lj[c] > lj[best]) best = c;
  }
  return best;
}

}  // namespace gevo::ml
