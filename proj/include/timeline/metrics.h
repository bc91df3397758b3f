#ifndef TIMELINE_METRICS_H_
#define TIMELINE_METRICS_H_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "timeline/model.h"
#include "timeline/relgen.h"

namespace timeline {

// Label-by-label counts of two annotators on the same pairs. Rows are
// annotator A, columns annotator B, both in kAllLabels order.
struct ContingencyMatrix {
  std::array<std::array<int64_t, 4>, 4> counts{};

  void Add(RelationLabel a, RelationLabel b, int64_t n = 1) {
    counts[static_cast<int>(a)][static_cast<int>(b)] += n;
  }
  int64_t RowTotal(int row) const;
  int64_t ColumnTotal(int col) const;
  int64_t Total() const;
  int64_t Trace() const;

  friend bool operator==(const ContingencyMatrix &,
                         const ContingencyMatrix &) = default;
};

struct AgreementReport {
  double event_f1 = 0;           // percentage
  double relation_micro_f1 = 0;  // percentage; equals observed agreement
  double kappa = 0;
  ContingencyMatrix matrix;
};

// Observed agreement and Cohen's kappa for a matrix. event_f1 is left at 0.
// Throws Error(E_EMPTY) for an empty matrix and Error(E_DEGENERATE) when
// chance agreement is 1.
AgreementReport AgreementFromMatrix(const ContingencyMatrix &matrix);

// Identity of an event mention across annotators.
struct EventKey {
  std::string doc_id;
  int sentence_index = 0;
  int start = 0;
  int end = 0;

  friend auto operator<=>(const EventKey &, const EventKey &) = default;
  friend bool operator==(const EventKey &, const EventKey &) = default;
};

// Exact-span event F1 as a percentage: 2|A n B| / (|A| + |B|).
// Throws Error(E_EMPTY) if both sides are empty.
double EventIaa(const std::vector<EventKey> &a, const std::vector<EventKey> &b);

// A relation set together with the events it was generated from.
struct LayerRelations {
  const AnnotatedDocument *doc = nullptr;
  std::string layer;
  RelationSet relations;
};

// Relation agreement restricted to pairs whose two endpoints both annotators
// marked (matched by exact span). Pairs touching unmatched events are left
// out. Also fills event_f1 over the same documents.
AgreementReport RelationIaa(const std::vector<LayerRelations> &a,
                            const std::vector<LayerRelations> &b);

// One labelled pair for evaluation.
struct LabeledPair {
  std::string doc_id;
  std::string source;
  std::string target;
  RelationLabel label = RelationLabel::kVague;
};

struct LabelScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  int64_t support = 0;    // gold count
  int64_t predicted = 0;  // predicted count
};

struct EvalReport {
  std::map<RelationLabel, LabelScore> per_label;  // before, after, equal
  double micro_f1 = 0;
  int64_t scored_pairs = 0;
  int64_t discarded_vague = 0;
};

// Scores predictions against gold after discarding gold vague pairs. Every
// non-vague gold pair must be predicted exactly once with before/after/equal.
// Throws Error(E_COVERAGE) for missing, duplicate or unknown pairs and
// Error(E_LABEL) for a vague prediction.
EvalReport Evaluate(const std::vector<LabeledPair> &gold,
                    const std::vector<LabeledPair> &pred);

// Relations and the events they connect, for corpus-level aggregation.
struct DocumentRelations {
  const AnnotatedDocument *doc = nullptr;
  RelationSet relations;
};

struct CorpusStats {
  std::map<RelationLabel, double> label_distribution;  // percentages
  std::map<RelationLabel, int64_t> label_counts;
  std::map<int, int64_t> window_histogram;
  double average_window = 0;
  int64_t documents = 0;
  int64_t possible_pairs = 0;
  int64_t non_vague_pairs = 0;
  double non_vague_percentage = 0;
  // Share of non-vague pairs with at least one non-verb event.
  double non_verb_involved_percentage = 0;
};

CorpusStats ComputeCorpusStats(const std::vector<DocumentRelations> &corpus);

// Half-up rounding to a fixed number of decimals, as reports print them.
double RoundHalfUp(double value, int decimals);
std::string FormatFixed(double value, int decimals);

}  // namespace timeline

#endif  // TIMELINE_METRICS_H_
