#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gevo/ml/dataset.hpp"
#include "gevo/ml/models.hpp"

namespace gevo::ml {

/// Per class (in class order) the instances are shuffled with one generator
/// seeded by seed and dealt round-robin; the dealing position carries over
/// from one class to the next. Throws for k < 2 or k > dataset size.
std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& data, std::size_t k, std::uint64_t seed);

struct ClassMetrics {
  std::size_t support = 0;    // actual instances of the class
  std::size_t predicted = 0;  // instances predicted as the class
  std::size_t true_positive = 0;
  double precision = 0;
  double recall = 0;
  double f = 0;
};

/// F = 2PR/(P+R), 0 when P+R = 0.
double f_measure(double precision, double recall);

struct EvaluationReport {
  std::string classifier;
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> class_names;
  std::vector<std::vector<std::size_t>> confusion;  // [actual][predicted]
  std::vector<ClassMetrics> per_class;
  std::vector<std::uint64_t> fold_seeds;
  std::vector<std::size_t> class_distribution;
  std::vector<std::vector<std::size_t>> folds_missing_class;  // per class: folds without a test instance

  double macro_f() const;
  double accuracy() const;
  double f_of(const std::string& class_name) const;
};

/// Fills confusion matrix and per-class metrics from paired label lists.
EvaluationReport score_predictions(const std::vector<std::string>& class_names,
                                   const std::vector<std::size_t>& actual, const std::vector<std::size_t>& predicted);

/// Fold i trains on all other folds with seed + i and predicts fold i; the
/// confusion matrix aggregates every fold.
EvaluationReport cross_validate(const Dataset& data, const ClassifierSpec& spec, std::size_t k, std::uint64_t seed);

/// Per-class table plus confusion matrix. header lines are written first,
/// each prefixed with "# ".
void write_report_text(std::ostream& out, const EvaluationReport& report, const std::vector<std::string>& header);
/// `class,support,predicted,true_positive,precision,recall,f`.
void write_report_table(std::ostream& out, const EvaluationReport& report);

}  // namespace gevo::ml
