#include "gevo/ml/evaluation.hpp"

#include <algorithm>
#include <future>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace gevo::ml {

std::string to_string(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::tree:
      return "tree";
    case ClassifierKind::forest:
      return "forest";
    case ClassifierKind::nb:
      return "nb";
    case ClassifierKind::knn:
      return "knn";
  }
  return "?";
}

ClassifierKind classifier_from_string(const std::string& s) {
  for (auto k : {ClassifierKind::tree, ClassifierKind::forest, ClassifierKind::nb, ClassifierKind::knn}) {
    if (to_string(k) == s) return k;
  }
  throw Error("unknown classifier '" + s + "' (expected tree|forest|nb|knn)");
}

std::unique_ptr<Model> train(const ClassifierSpec& spec, const Dataset& data, std::uint64_t seed) {
  switch (spec.kind) {
    case ClassifierKind::tree:
      return std::make_unique<DecisionTree>(DecisionTree::train(data, spec.tree));
    case ClassifierKind::forest:
      return std::make_unique<RandomForest>(RandomForest::train(data, spec.forest, seed));
    case ClassifierKind::nb:
      return std::make_unique<NaiveBayes>(NaiveBayes::train(data));
    case ClassifierKind::knn:
      return std::make_unique<Knn>(Knn::train(data, spec.knn));
  }
  throw Error("unknown classifier kind");
}

std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& data, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error("cross-validation needs at least 2 folds, got " + std::to_string(k));
  if (k > data.size()) {
    throw Error("cannot make " + std::to_string(k) + " folds from " + std::to_string(data.size()) + " instances");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t next = 0;
  for (std::size_t c = 0; c < data.class_count(); ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (data.labels[i] == c) members.push_back(i);
    }
    shuffle(members, rng);
    for (auto i : members) {
      folds[next].push_back(i);
      next = (next + 1) % k;
    }
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

double f_measure(double precision, double recall) {
  return precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
}

double EvaluationReport::macro_f() const {
  if (per_class.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& m : per_class) sum += m.f;
  return sum / static_cast<double>(per_class.size());
}

double EvaluationReport::accuracy() const {
  std::size_t total = 0;
  std::size_t hit = 0;
  for (std::size_t a = 0; a < confusion.size(); ++a) {
    for (std::size_t p = 0; p < confusion[a].size(); ++p) {
      total += confusion[a][p];
      if (a == p) hit += confusion[a][p];
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(hit) / static_cast<double>(total);
}

double EvaluationReport::f_of(const std::string& class_name) const {
  auto it = std::find(class_names.begin(), class_names.end(), class_name);
  if (it == class_names.end()) throw Error("no class '" + class_name + "' in the report");
  return per_class[static_cast<std::size_t>(it - class_names.begin())].f;
}

EvaluationReport score_predictions(const std::vector<std::string>& class_names,
                                   const std::vector<std::size_t>& actual, const std::vector<std::size_t>& predicted) {
  if (actual.size() != predicted.size()) throw Error("actual and predicted label counts differ");
  const std::size_t n = class_names.size();
  EvaluationReport r;
  r.class_names = class_names;
  r.confusion.assign(n, std::vector<std::size_t>(n, 0));
  r.class_distribution.assign(n, 0);
  for (std::size_t i = 0; i < actual.size(); ++i) {
    ++r.confusion.at(actual[i]).at(predicted[i]);
    ++r.class_distribution[actual[i]];
  }
  r.per_class.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    auto& m = r.per_class[c];
    m.support = r.class_distribution[c];
    for (std::size_t a = 0; a < n; ++a) m.predicted += r.confusion[a][c];
    m.true_positive = r.confusion[c][c];
    m.precision = m.predicted == 0 ? 0.0 : static_cast<double>(m.true_positive) / static_cast<double>(m.predicted);
    m.recall = m.support == 0 ? 0.0 : static_cast<double>(m.true_positive) / static_cast<double>(m.support);
    m.f = f_measure(m.precision, m.recall);
  }
  return r;
}

EvaluationReport cross_validate(const Dataset& data, const ClassifierSpec& spec, std::size_t k, std::uint64_t seed) {
  if (data.size() == 0) throw Error("cannot cross-validate an empty dataset");
  data.validate();
  const auto folds = stratified_folds(data, k, seed);

  auto run_fold = [&](std::size_t f) {
    std::vector<bool> held(data.size(), false);
    for (auto i : folds[f]) held[i] = true;
    std::vector<std::size_t> train_idx;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (!held[i]) train_idx.push_back(i);
    }
    const auto model = train(spec, data.subset(train_idx), seed + f);
    std::vector<std::size_t> predicted;
    for (auto i : folds[f]) predicted.push_back(model->predict(data.rows[i]));
    return predicted;
  };

  std::vector<std::vector<std::size_t>> predictions(k);
  if (spec.kind == ClassifierKind::forest) {
    // the forest spreads its own trees over threads
    for (std::size_t f = 0; f < k; ++f) predictions[f] = run_fold(f);
  } else {
    std::vector<std::future<std::vector<std::size_t>>> jobs;
    for (std::size_t f = 0; f < k; ++f) jobs.push_back(std::async(std::launch::async, run_fold, f));
    for (std::size_t f = 0; f < k; ++f) predictions[f] = jobs[f].get();
  }

  std::vector<std::size_t> actual;
  std::vector<std::size_t> predicted;
  for (std::size_t f = 0; f < k; ++f) {
    for (std::size_t j = 0; j < folds[f].size(); ++j) {
      actual.push_back(data.labels[folds[f][j]]);
      predicted.push_back(predictions[f][j]);
    }
  }
  auto report = score_predictions(data.class_names, actual, predicted);
  report.classifier = to_string(spec.kind);
  report.folds = k;
  report.seed = seed;
  for (std::size_t f = 0; f < k; ++f) report.fold_seeds.push_back(seed + f);
  report.folds_missing_class.assign(data.class_count(), {});
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<bool> present(data.class_count(), false);
    for (auto i : folds[f]) present[data.labels[i]] = true;
    for (std::size_t c = 0; c < present.size(); ++c) {
      if (!present[c]) report.folds_missing_class[c].push_back(f);
    }
  }
  return report;
}

namespace {

std::string fixed(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

}  // namespace

void write_report_text(std::ostream& out, const EvaluationReport& report, const std::vector<std::string>& header) {
  for (const auto& h : header) out << "# " << h << '\n';
  out << "# classifier=" << report.classifier << " folds=" << report.folds << " seed=" << report.seed << '\n';
  out << "# fold_seeds=";
  for (std::size_t i = 0; i < report.fold_seeds.size(); ++i) out << (i ? "," : "") << report.fold_seeds[i];
  out << '\n';
  out << "# metrics are computed from the confusion matrix summed over all folds\n";

  std::size_t width = 8;
  for (const auto& c : report.class_names) width = std::max(width, c.size() + 2);
  out << std::left << std::setw(static_cast<int>(width)) << "class" << std::right << std::setw(9) << "support"
      << std::setw(11) << "precision" << std::setw(9) << "recall" << std::setw(9) << "F" << '\n';
  for (std::size_t c = 0; c < report.class_names.size(); ++c) {
    const auto& m = report.per_class[c];
    out << std::left << std::setw(static_cast<int>(width)) << report.class_names[c] << std::right << std::setw(9)
        << m.support << std::setw(11) << fixed(m.precision) << std::setw(9) << fixed(m.recall) << std::setw(9)
        << fixed(m.f) << '\n';
  }
  out << "macro_F " << fixed(report.macro_f()) << "  accuracy " << fixed(report.accuracy()) << '\n';
  for (std::size_t c = 0; c < report.folds_missing_class.size(); ++c) {
    if (report.folds_missing_class[c].empty()) continue;
    out << "note: class " << report.class_names[c] << " absent from " << report.folds_missing_class[c].size()
        << " test fold(s)\n";
  }
  out << "\nconfusion (rows actual, columns predicted)\n";
  out << std::left << std::setw(static_cast<int>(width + 3)) << "" << std::right;
  for (std::size_t c = 0; c < report.class_names.size(); ++c) out << std::setw(8) << c;
  out << '\n';
  for (std::size_t a = 0; a < report.confusion.size(); ++a) {
    const std::string label = std::to_string(a) + " " + report.class_names[a];
    out << std::left << std::setw(static_cast<int>(width + 3)) << label << std::right;
    for (auto v : report.confusion[a]) out << std::setw(8) << v;
    out << '\n';
  }
}

void write_report_table(std::ostream& out, const EvaluationReport& report) {
  out << "class,support,predicted,true_positive,precision,recall,f\n";
  for (std::size_t c = 0; c < report.class_names.size(); ++c) {
    const auto& m = report.per_class[c];
    out << report.class_names[c] << ',' << m.support << ',' << m.predicted << ',' << m.true_positive << ','
        << format_double(m.precision) << ',' << format_double(m.recall) << ',' << format_double(m.f) << '\n';
  }
}

}  // namespace gevo::ml
