#include "timeline/validate.h"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <tuple>

#include "timeline/anchors.h"
#include "timeline/error.h"
#include "timeline/text.h"

namespace timeline {

namespace {

struct Reporter {
  std::vector<Issue> *sink;
  const std::string *layer;

  void Add(std::string code, const std::string &event_id, std::string message) {
    sink->push_back(Issue{std::move(code), *layer, event_id, std::move(message)});
  }
};

// Anchor the document would use for this event, or an error code.
std::optional<GranularDate> EffectiveAnchor(const Event &e,
                                            const GranularDate &dct,
                                            std::string *why) {
  AnchorKind option = e.anchor_option.option;
  bool takes_date = option == AnchorKind::kExplicit ||
                    option == AnchorKind::kImplicit ||
                    option == AnchorKind::kFuture ||
                    option == AnchorKind::kExternal;
  try {
    GranularDate resolved = ResolveAnchor(
        option, takes_date ? e.anchor : std::nullopt, dct);
    if (e.anchor && *e.anchor != resolved) {
      *why = "anchor " + e.anchor->ToString() + " contradicts option " +
             std::string(ToString(option)) + " (expected " +
             resolved.ToString() + ")";
      return std::nullopt;
    }
    return resolved;
  } catch (const Error &err) {
    *why = err.what();
    return std::nullopt;
  }
}

void CheckLayer(const AnnotatedDocument &doc, const std::string &layer_id,
                const Layer &layer, ValidationReport *report) {
  Reporter err{&report->errors, &layer_id};
  Reporter warn{&report->warnings, &layer_id};

  std::map<std::string, const Event *> by_id;
  for (const Event &e : layer) {
    if (!by_id.emplace(e.id, &e).second) {
      err.Add("E_DUPLICATE_ID", e.id, "event id '" + e.id + "' is not unique");
    }
  }

  // Spans.
  for (const Event &e : layer) {
    if (e.sentence_index < 0 ||
        e.sentence_index >= static_cast<int>(doc.sentences.size())) {
      err.Add("E_SPAN", e.id,
              "sentence index " + std::to_string(e.sentence_index) +
                  " out of range");
      continue;
    }
    const std::string &sentence = doc.sentences[e.sentence_index];
    if (e.span.end <= e.span.start) {
      err.Add("E_SPAN", e.id, "empty span");
      continue;
    }
    auto text = CodePointSubstr(sentence, e.span.start, e.span.end);
    if (!text) {
      err.Add("E_SPAN", e.id,
              "span [" + std::to_string(e.span.start) + ", " +
                  std::to_string(e.span.end) + ") outside its sentence");
    } else if (*text != e.trigger_text) {
      err.Add("E_SPAN", e.id,
              "trigger '" + e.trigger_text + "' does not match sentence text '" +
                  *text + "'");
    }
  }

  // Id order must agree with document position.
  std::vector<const Event *> ordered = OrderedEvents(layer);
  for (size_t i = 1; i < ordered.size(); ++i) {
    const Event &prev = *ordered[i - 1];
    const Event &cur = *ordered[i];
    if (prev.id == cur.id) continue;
    if (std::tie(prev.sentence_index, prev.span) >=
        std::tie(cur.sentence_index, cur.span)) {
      err.Add("E_ID_ORDER", cur.id,
              "id order places '" + cur.id + "' after '" + prev.id +
                  "' but it does not follow it in the text");
    }
  }

  // Anchors of main-axis events.
  std::map<std::string, GranularDate> anchors;
  if (doc.dct.exact()) {
    for (const Event &e : layer) {
      if (!e.main_axis()) continue;
      std::string why;
      if (auto a = EffectiveAnchor(e, doc.dct, &why)) {
        anchors.emplace(e.id, *a);
      } else {
        err.Add("E_ANCHOR_OPTION", e.id, why);
      }
    }
  }

  // Questionnaire.
  for (const Event &e : layer) {
    if (!e.main_axis() && e.answers.any_yes()) {
      err.Add("E_AXIS", e.id,
              std::string(ToString(e.axis)) +
                  "-axis event carries questionnaire answers");
    }
    const std::array<std::pair<int, const std::optional<QuestionLink> *>, 5>
        questions = {{{1, &e.answers.q1},
                      {2, &e.answers.q2},
                      {3, &e.answers.q3},
                      {4, &e.answers.q4},
                      {5, &e.answers.q5}}};
    for (const auto &[q, link] : questions) {
      if (!link->has_value()) continue;
      const QuestionLink &l = **link;
      std::string qname = "Q" + std::to_string(q);
      if (q >= 3 && !l.direction) {
        err.Add("E_TARGET_MISSING", e.id, qname + " answered yes without a direction");
      }
      if (l.target.empty()) {
        err.Add("E_TARGET_MISSING", e.id, qname + " answered yes without a target");
        continue;
      }
      auto it = by_id.find(l.target);
      if (it == by_id.end()) {
        err.Add("E_TARGET_MISSING", e.id,
                qname + " target '" + l.target + "' does not exist in layer");
        continue;
      }
      const Event &target = *it->second;
      if (CompareEventIds(l.target, e.id) <= 0) {
        err.Add("E_TARGET_NOT_SUBSEQUENT", e.id,
                qname + " target '" + l.target + "' does not follow '" + e.id + "'");
      }
      if (q >= 2 && target.sentence_index != e.sentence_index) {
        err.Add("E_TARGET_NOT_SAME_SENTENCE", e.id,
                qname + " target '" + l.target + "' is in sentence " +
                    std::to_string(target.sentence_index) + ", not " +
                    std::to_string(e.sentence_index));
      }
      if (!target.main_axis()) {
        err.Add("E_AXIS", e.id,
                qname + " targets " + std::string(ToString(target.axis)) +
                    "-axis event '" + l.target + "'");
      }
      if (q == 1 && anchors.contains(e.id) && anchors.contains(l.target) &&
          anchors.at(e.id) != anchors.at(l.target)) {
        warn.Add("W_COREF_ANCHOR", e.id,
                 "Q1 links '" + e.id + "' (" + anchors.at(e.id).ToString() +
                     ") to '" + l.target + "' (" +
                     anchors.at(l.target).ToString() +
                     "); differing anchors block the equal label");
      }
    }
    if (e.answers.q4 && e.anchor_option.option != AnchorKind::kUnknown) {
      err.Add("E_Q4_OPTION", e.id,
              "Q4 answered yes but anchor option is " +
                  std::string(ToString(e.anchor_option.option)));
    }
  }
}

// True if some regular inflection of `word` is in `lemmas`.
bool MatchesLemma(const std::string &word, const std::set<std::string> &lemmas) {
  if (lemmas.contains(word)) return true;
  static const std::map<std::string, std::string> kIrregular = {
      {"meant", "mean"}};
  if (auto it = kIrregular.find(word); it != kIrregular.end()) {
    return lemmas.contains(it->second);
  }
  auto undouble = [](std::string s) {
    size_t n = s.size();
    if (n >= 2 && s[n - 1] == s[n - 2]) s.pop_back();
    return s;
  };
  std::vector<std::string> candidates;
  for (const char *suffix : {"s", "es", "ed", "d", "ing"}) {
    std::string_view sfx(suffix);
    if (word.size() > sfx.size() + 1 && word.ends_with(sfx)) {
      std::string stem = word.substr(0, word.size() - sfx.size());
      candidates.push_back(stem);
      candidates.push_back(undouble(stem));
      candidates.push_back(stem + "e");
    }
  }
  for (const std::string &c : candidates) {
    if (lemmas.contains(c)) return true;
  }
  return false;
}

void LintEvent(const AnnotatedDocument &doc, const std::string &layer_id,
               const Event &e, std::vector<Issue> *out) {
  static const std::set<std::string> kNegation = {"not", "n't", "never",
                                                  "cancelled", "canceled"};
  static const std::set<std::string> kModal = {"may",   "might",  "must",
                                               "could", "should", "would"};
  static const std::set<std::string> kFiller = {
      "be", "been", "being", "have", "not", "n't", "never", "also", "still"};
  static const std::set<std::string> kIntent = {"plan", "aim",  "intend",
                                                "hope", "want", "mean"};

  if (e.sentence_index < 0 ||
      e.sentence_index >= static_cast<int>(doc.sentences.size())) {
    return;
  }
  std::vector<Token> tokens = Tokenize(doc.sentences[e.sentence_index]);
  auto trig = std::find_if(tokens.begin(), tokens.end(), [&](const Token &t) {
    return t.end > e.span.start;
  });
  if (trig == tokens.end()) return;
  int idx = static_cast<int>(trig - tokens.begin());
  Reporter warn{out, &layer_id};

  // Negation within the three preceding tokens.
  for (int k = std::max(0, idx - 3); k < idx; ++k) {
    const std::string &t = tokens[k].text;
    bool failed_to = t == "failed" && k + 1 < idx && tokens[k + 1].text == "to";
    if (kNegation.contains(t) || failed_to) {
      warn.Add("W_NEGATED", e.id,
               "'" + e.trigger_text + "' follows negation cue '" +
                   (failed_to ? std::string("failed to") : t) + "'");
      break;
    }
  }

  // Modal auxiliary governing the trigger.
  bool modal = false;
  std::string cue;
  if (idx >= 2 && tokens[idx - 1].text == "to" &&
      (tokens[idx - 2].text == "have" || tokens[idx - 2].text == "has")) {
    modal = true;
    cue = tokens[idx - 2].text + " to";
  }
  for (int k = idx - 1; !modal && k >= 0 && k >= idx - 3; --k) {
    const std::string &t = tokens[k].text;
    if (kModal.contains(t)) {
      modal = true;
      cue = t;
    } else if (!kFiller.contains(t)) {
      break;
    }
  }
  if (modal) {
    warn.Add("W_MODAL", e.id,
             "'" + e.trigger_text + "' is governed by modal '" + cue + "'");
  }

  // Intention: the trigger itself or its governor ("planned to attend").
  int gov = idx - 1;
  while (gov >= 0 && tokens[gov].text == "to") --gov;
  if (MatchesLemma(trig->text, kIntent)) {
    warn.Add("W_INTENDED", e.id,
             "'" + e.trigger_text + "' expresses an intention");
  } else if (gov >= 0 && gov < idx - 1 && MatchesLemma(tokens[gov].text, kIntent)) {
    warn.Add("W_INTENDED", e.id,
             "'" + e.trigger_text + "' is governed by intention cue '" +
                 tokens[gov].text + "'");
  }
}

}  // namespace

void SortIssues(std::vector<Issue> *issues) {
  std::stable_sort(issues->begin(), issues->end(),
                   [](const Issue &a, const Issue &b) {
                     if (a.layer != b.layer) return a.layer < b.layer;
                     if (a.event_id != b.event_id) {
                       if (!a.event_id || !b.event_id) return !a.event_id;
                       return CompareEventIds(*a.event_id, *b.event_id) < 0;
                     }
                     if (a.code != b.code) return a.code < b.code;
                     return a.message < b.message;
                   });
}

ValidationReport ValidateDocument(const AnnotatedDocument &doc) {
  ValidationReport report;
  if (!doc.dct.exact()) {
    report.errors.push_back(Issue{"E_DCT_FUZZY", std::nullopt, std::nullopt,
                                  "DCT " + doc.dct.ToString() +
                                      " must be a fully specified date"});
  }
  for (const auto &[id, layer] : doc.layers) {
    CheckLayer(doc, id, layer, &report);
  }
  SortIssues(&report.errors);
  SortIssues(&report.warnings);
  return report;
}

ValidationReport LintEvents(const AnnotatedDocument &doc) {
  ValidationReport report;
  for (const auto &[id, layer] : doc.layers) {
    for (const Event &e : layer) {
      if (e.main_axis()) LintEvent(doc, id, e, &report.warnings);
    }
  }
  SortIssues(&report.warnings);
  return report;
}

}  // namespace timeline
