#ifndef TIMELINE_RELGEN_H_
#define TIMELINE_RELGEN_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "timeline/model.h"

namespace timeline {

enum class RelationLabel { kBefore, kAfter, kEqual, kVague };

inline constexpr RelationLabel kAllLabels[] = {
    RelationLabel::kBefore, RelationLabel::kAfter, RelationLabel::kEqual,
    RelationLabel::kVague};

// Which rule produced a label.
enum class Provenance {
  kEqCoref,           // Q1: same event
  kEqSimul,           // Q2: same time
  kAnchorOrder,       // anchors ordered, no Q6/Q7 guard
  kSameDayQ3,         // same anchor, Q3 direction
  kUnknownQ4,         // Q4 direction
  kImplicitQ5,        // Q5 direction
  kGuardDctQ6,        // anchors ordered but both events around the DCT
  kGuardFutureQ7,     // anchors ordered but both events in the future
  kDefaultVague,      // nothing fired
  kCorefPropagated,   // filled in by coreference closure
};

struct TemporalRelation {
  std::string source;  // precedes target in document order
  std::string target;
  int window = 0;      // sentence distance
  RelationLabel label = RelationLabel::kVague;
  Provenance provenance = Provenance::kDefaultVague;

  friend bool operator==(const TemporalRelation &,
                         const TemporalRelation &) = default;
};

enum class ConflictKind {
  kTransitivity,
  kCorefDisagreement,
  kEqualAsymmetry,
  kAnchorCorefMismatch,
};

struct ConflictRecord {
  ConflictKind kind = ConflictKind::kTransitivity;
  std::vector<std::string> events;
  std::string detail;

  friend bool operator==(const ConflictRecord &,
                         const ConflictRecord &) = default;
};

struct RelationSet {
  std::string doc_id;
  std::string layer;
  std::vector<TemporalRelation> relations;
  std::vector<ConflictRecord> conflicts;

  friend bool operator==(const RelationSet &, const RelationSet &) = default;
};

struct PairSlot {
  std::string source;
  std::string target;
  int window = 0;

  friend bool operator==(const PairSlot &, const PairSlot &) = default;
};

// Every pair of MAIN-axis events (source before target) in lexicographic
// document order.
std::vector<PairSlot> EnumeratePairs(const AnnotatedDocument &doc,
                                     const std::string &layer);

struct PairLabel {
  RelationLabel label;
  Provenance provenance;

  friend bool operator==(const PairLabel &, const PairLabel &) = default;
};

// Labels one ordered pair from the anchors of both events and the answers of
// `a` about `b`. Throws Error(E_UNRESOLVED_ANCHOR) if either anchor is missing.
PairLabel LabelPair(const Event &a, const Event &b);

// Copy of the layer with missing anchors filled in from the DCT. Throws the
// anchor resolution errors.
Layer ResolveLayerAnchors(const Layer &layer, const GranularDate &dct);

// Full pipeline for one layer: validation gate, anchor resolution, pairwise
// labelling, coreference closure. Throws Error(E_VALIDATION) listing the
// first validation errors if the document is not admissible.
RelationSet GenerateRelations(const AnnotatedDocument &doc,
                              const std::string &layer);

// Coreference classes: Q1 links between main events, closed transitively.
// With same_anchor_only, links between events whose anchors differ are
// ignored; these are the classes closure works on. Singletons are omitted;
// members and classes are in canonical order. `layer` must have resolved
// anchors.
std::vector<std::vector<std::string>> CorefClasses(const Layer &layer,
                                                   bool same_anchor_only = true);

RelationLabel Inverse(RelationLabel label);

std::string_view ToString(RelationLabel label);
std::string_view ToString(Provenance provenance);
std::string_view ToString(ConflictKind kind);
std::optional<RelationLabel> ParseLabel(std::string_view text);
std::optional<Provenance> ParseProvenance(std::string_view text);
std::optional<ConflictKind> ParseConflictKind(std::string_view text);

}  // namespace timeline

#endif  // TIMELINE_RELGEN_H_
