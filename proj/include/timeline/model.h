#ifndef TIMELINE_MODEL_H_
#define TIMELINE_MODEL_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "timeline/granular_date.h"

namespace timeline {

// How the annotator arrived at an event's time anchor.
enum class AnchorKind {
  kExplicit = 1,  // date stated in the text
  kImplicit = 2,  // vague mention, entered as a fuzzy date
  kNcPast = 3,    // around the DCT: one day before it
  kFuture = 4,    // one day after the DCT, or a stated future date
  kExternal = 5,  // past event dated from background knowledge
  kUnknown = 6,   // not around the DCT and no hint: XXXX-XX-XX
};

struct AnchorOption {
  AnchorKind option = AnchorKind::kNcPast;
  // The temporal expression or knowledge note behind the anchor.
  std::string raw_cue;

  friend bool operator==(const AnchorOption &, const AnchorOption &) = default;
};

enum class Axis { kMain, kOrthogonal, kParallel, kNone, kOther };

enum class WordClass { kVerb, kNonVerb };

enum class Direction { kBefore, kAfter };

// A `yes` answer to one of Q1-Q5. Absence of a QuestionLink means `no`.
// target is empty and direction unset when the annotator left them out;
// validation reports those as E_TARGET_MISSING.
struct QuestionLink {
  std::string target;
  std::optional<Direction> direction;

  friend bool operator==(const QuestionLink &, const QuestionLink &) = default;
};

struct AnswerSheet {
  std::optional<QuestionLink> q1;  // refers to the same event (coreference)
  std::optional<QuestionLink> q2;  // same time as an event in the sentence
  std::optional<QuestionLink> q3;  // same day, before/after within it
  std::optional<QuestionLink> q4;  // unknown date, ordered against another
  std::optional<QuestionLink> q5;  // same implicit time, before/after
  bool q6 = false;                 // around the DCT
  bool q7 = false;                 // in the future

  bool any_yes() const { return q1 || q2 || q3 || q4 || q5 || q6 || q7; }

  friend bool operator==(const AnswerSheet &, const AnswerSheet &) = default;
};

struct CharSpan {
  int start = 0;  // code points, inclusive
  int end = 0;    // code points, exclusive

  friend bool operator==(const CharSpan &, const CharSpan &) = default;
  friend auto operator<=>(const CharSpan &, const CharSpan &) = default;
};

struct Event {
  std::string id;
  int sentence_index = 0;
  CharSpan span;
  std::string trigger_text;
  WordClass word_class = WordClass::kVerb;
  Axis axis = Axis::kMain;
  AnchorOption anchor_option;
  // Resolved anchor. May be absent in a document on disk for the options that
  // resolve from the DCT alone (3, 4 without a date, 6).
  std::optional<GranularDate> anchor;
  AnswerSheet answers;

  bool main_axis() const { return axis == Axis::kMain; }

  friend bool operator==(const Event &, const Event &) = default;
};

using Layer = std::vector<Event>;

struct AnnotatedDocument {
  std::string doc_id;
  GranularDate dct;
  std::string title;
  std::vector<std::string> sentences;
  std::map<std::string, Layer> layers;
  std::optional<std::string> retrieval_query;

  // Throws Error(E_LAYER) when the layer does not exist.
  const Layer &layer(const std::string &id) const;

  // Lexicographically first layer id; the layer corpus-level tools use when
  // none is named. Throws Error(E_LAYER) for a document without layers.
  const std::string &primary_layer() const;

  friend bool operator==(const AnnotatedDocument &,
                         const AnnotatedDocument &) = default;
};

// Natural ordering of event ids: digit runs compare numerically, so
// "e2" < "e10". Event ids follow document order under this comparison.
int CompareEventIds(std::string_view a, std::string_view b);

struct EventIdLess {
  bool operator()(std::string_view a, std::string_view b) const {
    return CompareEventIds(a, b) < 0;
  }
};

// Events of a layer in canonical (id) order.
std::vector<const Event *> OrderedEvents(const Layer &layer);

// MAIN-axis events of a layer in canonical order.
std::vector<const Event *> MainEvents(const Layer &layer);

std::string_view ToString(AnchorKind kind);
std::string_view ToString(Axis axis);
std::string_view ToString(WordClass word_class);
std::string_view ToString(Direction direction);

std::optional<Axis> ParseAxis(std::string_view text);
std::optional<WordClass> ParseWordClass(std::string_view text);
std::optional<Direction> ParseDirection(std::string_view text);

}  // namespace timeline

#endif  // TIMELINE_MODEL_H_
