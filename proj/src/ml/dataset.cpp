#include "gevo/ml/dataset.hpp"

#include <algorithm>
#include <cmath>

namespace gevo::ml {

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(class_names.size(), 0);
  for (auto l : labels) ++counts.at(l);
  return counts;
}

void Dataset::validate() const {
  if (feature_names.size() != kinds.size() || categories.size() != kinds.size()) {
    throw Error("dataset schema arrays differ in length");
  }
  if (rows.size() != labels.size()) throw Error("dataset has " + std::to_string(rows.size()) + " rows but " +
                                                std::to_string(labels.size()) + " labels");
  if (class_names.empty()) throw Error("dataset has no classes");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != kinds.size()) throw Error("row " + std::to_string(r) + " has the wrong arity");
    if (labels[r] >= class_names.size()) throw Error("row " + std::to_string(r) + " has an unknown label");
    for (std::size_t f = 0; f < kinds.size(); ++f) {
      const double v = rows[r][f];
      if (!std::isfinite(v)) throw Error("row " + std::to_string(r) + " has a non-finite value");
      if (kinds[f] == FeatureKind::categorical &&
          (v < 0 || v != std::floor(v) || static_cast<std::size_t>(v) >= categories[f].size())) {
        throw Error("row " + std::to_string(r) + " has a bad category code for " + feature_names[f]);
      }
    }
  }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.feature_names = feature_names;
  out.kinds = kinds;
  out.categories = categories;
  out.class_names = class_names;
  out.rows.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (auto i : indices) {
    out.rows.push_back(rows.at(i));
    out.labels.push_back(labels.at(i));
  }
  return out;
}

Dataset make_dataset(const features::InstanceSet& set) {
  Dataset d;
  d.feature_names = set.numeric_names;
  d.kinds.assign(set.numeric_names.size(), FeatureKind::numeric);
  d.categories.assign(set.numeric_names.size(), {});
  for (std::size_t c = 0; c < set.categorical_names.size(); ++c) {
    d.feature_names.push_back(set.categorical_names[c]);
    d.kinds.push_back(FeatureKind::categorical);
    std::vector<std::string> vocab;
    for (const auto& inst : set.instances) vocab.push_back(inst.categorical.at(c));
    std::sort(vocab.begin(), vocab.end());
    vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
    d.categories.push_back(std::move(vocab));
  }

  const auto counts = set.class_counts();
  const auto& all = features::class_names(set.method);
  std::vector<std::size_t> remap(all.size(), 0);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (counts[i] == 0) continue;
    remap[i] = d.class_names.size();
    d.class_names.push_back(all[i]);
  }

  for (const auto& inst : set.instances) {
    std::vector<double> row = inst.numeric;
    for (std::size_t c = 0; c < inst.categorical.size(); ++c) {
      const auto& vocab = d.categories[set.numeric_names.size() + c];
      auto it = std::lower_bound(vocab.begin(), vocab.end(), inst.categorical[c]);
      row.push_back(static_cast<double>(it - vocab.begin()));
    }
    d.rows.push_back(std::move(row));
    const auto cls = static_cast<std::size_t>(std::find(all.begin(), all.end(), inst.target) - all.begin());
    d.labels.push_back(remap[cls]);
  }
  if (!d.rows.empty()) d.validate();
  return d;
}

}  // namespace gevo::ml
