#ifndef TIMELINE_DATASET_H_
#define TIMELINE_DATASET_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "timeline/corpus.h"
#include "timeline/metrics.h"

namespace timeline {

// Relation sets for every document that has `layer`, or each document's
// primary layer when `layer` is empty. Throws Error(E_VALIDATION) for a
// document that does not validate.
std::vector<DocumentRelations> GenerateCorpus(const Corpus &corpus,
                                              const std::string &layer = "");

struct SplitRatios {
  double train = 0.7;
  double dev = 0.1;
  double test = 0.2;
};

// Assigns every document to train/dev/test so that the non-vague pair counts
// approach the requested ratios.
//
// Procedure (reproducible in any language):
//   1. sort documents by doc_id (byte order);
//   2. shuffle with Fisher-Yates driven by std::mt19937_64 seeded with
//      `seed`: for i = n-1 down to 1, j = rng() % (i + 1), swap(i, j);
//   3. walk the shuffled list and give each document to the split with the
//      largest deficit, target_s * total_non_vague - assigned_s; ties go to
//      train, then dev, then test; splits with ratio 0 never receive one.
//
// Throws Error(E_RATIO) unless all ratios are >= 0 and sum to 1 within 1e-9.
CorpusManifest SplitCorpus(const CorpusManifest &base,
                           const std::vector<DocumentRelations> &docs,
                           const SplitRatios &ratios, uint64_t seed);

// One row of the pairwise classification export.
struct PairRecord {
  std::string doc_id;
  std::string layer;
  std::string source;
  std::string target;
  std::string source_trigger;
  std::string target_trigger;
  std::string source_sentence;
  std::string target_sentence;
  int source_sentence_index = 0;
  int target_sentence_index = 0;
  WordClass source_word_class = WordClass::kVerb;
  WordClass target_word_class = WordClass::kVerb;
  int window = 0;
  RelationLabel label = RelationLabel::kVague;

  friend bool operator==(const PairRecord &, const PairRecord &) = default;
};

// Rows for every relation, vague ones only when include_vague is set. Order
// follows the input documents, then the relation order within each.
std::vector<PairRecord> ExportPairs(const std::vector<DocumentRelations> &docs,
                                    bool include_vague);

Json ToJson(const PairRecord &r);
PairRecord PairRecordFromJson(const Json &j, const std::string &file,
                              const std::string &pointer);

// JSON Lines: one compact, key-sorted object per line.
std::string SerializePairs(const std::vector<PairRecord> &records);
std::vector<PairRecord> ParsePairs(std::string_view text, const std::string &file);

// Reads labelled pairs for scoring. Only doc_id, source, target and label are
// required; other export fields are accepted and ignored.
std::vector<LabeledPair> ParseLabeledPairs(std::string_view text,
                                           const std::string &file);

enum class AblationCriterion { kWordClass, kWindow };

struct AblationSpec {
  AblationCriterion criterion = AblationCriterion::kWindow;
  int threshold = 4;  // WINDOW only
};

// WORD_CLASS: A = both events verbs, B = at least one non-verb.
// WINDOW:     A = window <= threshold, B = window > threshold.
// Throws Error(E_THRESHOLD) for a negative threshold.
std::pair<std::vector<PairRecord>, std::vector<PairRecord>> Ablate(
    const std::vector<PairRecord> &pairs, const AblationSpec &spec);

}  // namespace timeline

#endif  // TIMELINE_DATASET_H_
