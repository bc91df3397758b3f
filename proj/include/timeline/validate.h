#ifndef TIMELINE_VALIDATE_H_
#define TIMELINE_VALIDATE_H_

#include <optional>
#include <string>
#include <vector>

#include "timeline/model.h"

namespace timeline {

struct Issue {
  std::string code;
  std::optional<std::string> layer;
  std::optional<std::string> event_id;
  std::string message;

  friend bool operator==(const Issue &, const Issue &) = default;
};

struct ValidationReport {
  std::vector<Issue> errors;
  std::vector<Issue> warnings;

  // True when the document may go through relation generation.
  bool admissible() const { return errors.empty(); }

  friend bool operator==(const ValidationReport &,
                         const ValidationReport &) = default;
};

// Structural and questionnaire checks. Error codes:
//
//   E_DCT_FUZZY                 DCT has wildcard components
//   E_DUPLICATE_ID              two events of a layer share an id
//   E_ID_ORDER                  id order disagrees with (sentence, offset)
//   E_SPAN                      span empty, out of range, or text mismatch
//   E_ANCHOR_OPTION             stored anchor contradicts its option
//   E_TARGET_MISSING            yes answer without target/direction, or a
//                               target id that does not exist in the layer
//   E_TARGET_NOT_SUBSEQUENT     target does not come after the owner
//   E_TARGET_NOT_SAME_SENTENCE  Q2-Q5 target in another sentence
//   E_AXIS                      non-main event answers or is referenced
//   E_Q4_OPTION                 Q4 yes on an anchor other than unknown
//
// Also emits W_COREF_ANCHOR when a Q1 link joins events whose anchors differ
// (the pair will not be labelled equal). Entries are sorted by
// (layer, event id, code).
ValidationReport ValidateDocument(const AnnotatedDocument &doc);

// Advisory lints for triggers that probably should not have been annotated:
// W_NEGATED, W_MODAL, W_INTENDED. Returns warnings only.
ValidationReport LintEvents(const AnnotatedDocument &doc);

// Sort order used by both report builders.
void SortIssues(std::vector<Issue> *issues);

}  // namespace timeline

#endif  // TIMELINE_VALIDATE_H_
