#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gevo/sequence_features.hpp"

namespace gevo::ml {

enum class FeatureKind { numeric, categorical };

/// Row-major table. Categorical cells hold the index of their value in
/// categories[feature].
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<FeatureKind> kinds;
  std::vector<std::vector<std::string>> categories;  // empty for numeric features
  std::vector<std::string> class_names;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> labels;

  std::size_t size() const { return rows.size(); }
  std::size_t feature_count() const { return kinds.size(); }
  std::size_t class_count() const { return class_names.size(); }
  std::vector<std::size_t> class_counts() const;

  /// Throws unless rows, labels and schema agree.
  void validate() const;
  Dataset subset(std::span<const std::size_t> indices) const;
};

/// Classes keep the method's report order but only those that occur are kept.
/// Categorical vocabularies are the sorted distinct values.
Dataset make_dataset(const features::InstanceSet& set);

/// Uniform index in [0, n) from a 64-bit engine; portable across standard
/// libraries, unlike std::uniform_int_distribution.
template <class Engine>
std::size_t draw_index(Engine& engine, std::size_t n) {
  return static_cast<std::size_t>(engine() % static_cast<std::uint64_t>(n));
}

template <class Engine, class T>
void shuffle(std::vector<T>& v, Engine& engine) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = draw_index(engine, i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace gevo::ml
