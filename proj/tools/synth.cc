#include "synth.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "timeline/anchors.h"
#include "timeline/text.h"

namespace timeline::synth {

uint64_t Rng::Next() {
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int Rng::Int(int lo, int hi) {
  uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(Next() % span);
}

bool Rng::Chance(double p) {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53 < p;
}

DocBuilder::DocBuilder(std::string doc_id, std::string_view dct, std::string title) {
  doc_.doc_id = std::move(doc_id);
  doc_.dct = GranularDate::Parse(dct);
  doc_.title = std::move(title);
}

int DocBuilder::Sentence(std::string text) {
  doc_.sentences.push_back(std::move(text));
  return static_cast<int>(doc_.sentences.size()) - 1;
}

namespace {

bool WordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
         (static_cast<unsigned char>(c) & 0x80);
}

}  // namespace

Event &DocBuilder::Add(const std::string &layer, std::string id, int s,
                       std::string_view trigger, int occurrence) {
  const std::string &sentence = doc_.sentences.at(static_cast<size_t>(s));
  size_t pos = 0;
  int seen = 0;
  for (;; ++pos) {
    pos = sentence.find(trigger, pos);
    if (pos == std::string::npos) {
      throw std::invalid_argument("trigger '" + std::string(trigger) +
                                  "' not found in sentence " + std::to_string(s));
    }
    size_t end = pos + trigger.size();
    bool bounded = (pos == 0 || !WordChar(sentence[pos - 1])) &&
                   (end == sentence.size() || !WordChar(sentence[end]));
    if (bounded && seen++ == occurrence) break;
  }
  int start = *CodePointLength(std::string_view(sentence).substr(0, pos));
  int length = *CodePointLength(trigger);

  Event e;
  e.id = std::move(id);
  e.sentence_index = s;
  e.span = {start, start + length};
  e.trigger_text = std::string(trigger);
  e.anchor_option = Option(AnchorKind::kNcPast);
  auto &events = doc_.layers[layer];
  events.push_back(std::move(e));
  return events.back();
}

void DocBuilder::Layer(const std::string &layer) { doc_.layers[layer]; }

AnchorOption Option(AnchorKind kind, std::string cue) {
  return AnchorOption{kind, std::move(cue)};
}

QuestionLink Link(std::string target, std::optional<Direction> direction) {
  return QuestionLink{std::move(target), direction};
}

namespace {

const std::vector<std::string> kVerbs = {
    "announced", "reported", "closed",    "opened",   "signed",  "arrested",
    "attacked",  "visited",  "resigned",  "approved", "rejected", "launched",
    "met",       "warned",   "released",  "captured", "struck",   "collapsed",
    "elected",   "won",      "lost",      "confirmed", "denied",  "raised",
    "cut",       "fired",    "hired",     "sold",     "bought",  "died"};

const std::vector<std::string> kNouns = {
    "election", "protest", "meeting", "attack",  "ceremony", "strike",
    "flood",    "fire",    "crash",   "summit",  "trial",    "vote",
    "storm",    "merger",  "raid",    "ruling",  "outbreak", "launch"};

const std::vector<std::string> kSubjects = {
    "officials", "the company", "police",   "the minister", "residents",
    "the court", "rebels",      "the team", "investors",    "the council"};

const std::vector<std::string> kObjects = {
    "the plan",     "the report", "the deal",     "the border",  "the bridge",
    "the station",  "the law",    "the results",  "the village", "the offer"};

const std::vector<std::string> kPredicates = {
    "drew crowds", "drew criticism", "made headlines", "drew attention"};

const std::vector<std::string> kFillers = {
    "Details remain scarce.", "The area is home to thousands of people.",
    "Further reports are expected.", "Reporters were present at the scene."};

struct Latent {
  int day = 0;  // offset from the DCT
  int pos = 0;  // order within the day

  friend auto operator<=>(const Latent &, const Latent &) = default;
};

struct Slot {
  int sentence = 0;
  bool main = true;
  WordClass word_class = WordClass::kVerb;
  std::string trigger;
};

std::string Capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

// Sentence layout and text shared by both generators. Returns slots in
// document order; sentences are added to the builder.
std::vector<Slot> Layout(Rng &rng, DocBuilder &b, const SynthOptions &o) {
  int n = rng.Int(o.min_events, o.max_events);
  std::vector<Slot> slots;
  std::vector<std::vector<size_t>> by_sentence;
  for (int i = 0; i < n; ++i) {
    bool new_sentence = by_sentence.empty() || by_sentence.back().size() >= 3 ||
                        rng.Chance(0.55);
    if (new_sentence) {
      if (!by_sentence.empty() && rng.Chance(0.2)) by_sentence.emplace_back();
      by_sentence.emplace_back();
    }
    Slot s;
    s.sentence = static_cast<int>(by_sentence.size()) - 1;
    s.main = !rng.Chance(o.non_main);
    s.word_class = rng.Chance(o.non_verb) ? WordClass::kNonVerb : WordClass::kVerb;
    by_sentence.back().push_back(slots.size());
    slots.push_back(s);
  }
  for (auto &members : by_sentence) {
    if (members.empty()) {
      b.Sentence(rng.Pick(kFillers));
      continue;
    }
    std::vector<std::string> used;
    std::string text;
    for (size_t k = 0; k < members.size(); ++k) {
      Slot &s = slots[members[k]];
      const auto &pool = s.word_class == WordClass::kVerb ? kVerbs : kNouns;
      do {
        s.trigger = rng.Pick(pool);
      } while (std::find(used.begin(), used.end(), s.trigger) != used.end());
      used.push_back(s.trigger);
      std::string clause = s.word_class == WordClass::kVerb
                               ? rng.Pick(kSubjects) + " " + s.trigger + " " +
                                     rng.Pick(kObjects)
                               : "the " + s.trigger + " " + rng.Pick(kPredicates);
      if (k > 0) text += k + 1 == members.size() ? " and " : ", ";
      text += clause;
    }
    b.Sentence(Capitalize(text) + ".");
  }
  return slots;
}

std::string Id(size_t i) { return "e" + std::to_string(i + 1); }

GranularDate RandomDct(Rng &rng) {
  int y = rng.Int(2010, 2022), m = rng.Int(1, 12);
  return GranularDate::Exact(y, m, rng.Int(1, DaysInMonth(y, m)));
}

// Later main events in the same sentence as slot i.
std::vector<size_t> SameSentenceTargets(const std::vector<Slot> &slots, size_t i) {
  std::vector<size_t> out;
  for (size_t j = i + 1; j < slots.size(); ++j) {
    if (slots[j].main && slots[j].sentence == slots[i].sentence) out.push_back(j);
  }
  return out;
}

// Picks an option and anchor whose interval contains dct + day.
void ChooseAnchor(Rng &rng, const GranularDate &dct, int day, Event &e) {
  GranularDate date = dct.AddDays(day);
  int r = rng.Int(0, 99);
  if (day == -1 && r < 60) {
    e.anchor_option = Option(AnchorKind::kNcPast, "");
    if (rng.Chance(0.5)) e.anchor = date;
    return;
  }
  if (day == 1 && r < 60) {
    e.anchor_option = Option(AnchorKind::kFuture, "soon");
    if (rng.Chance(0.5)) e.anchor = date;
    return;
  }
  if (day > 0 && r < 80) {
    e.anchor_option = Option(AnchorKind::kFuture, "next month");
    e.anchor = rng.Chance(0.5) ? date : GranularDate::Month(*date.year(), *date.month());
    return;
  }
  if (r < 35) {
    e.anchor_option = Option(AnchorKind::kExplicit, "on " + date.ToString());
    e.anchor = date;
  } else if (r < 45 && day < 0) {
    e.anchor_option = Option(AnchorKind::kExternal, "background knowledge");
    e.anchor = date;
  } else if (r < 65) {
    e.anchor_option = Option(AnchorKind::kImplicit, "recently");
    e.anchor = rng.Chance(0.7) ? GranularDate::Month(*date.year(), *date.month())
                               : GranularDate::Year(*date.year());
  } else {
    e.anchor_option = Option(AnchorKind::kUnknown, "");
    if (rng.Chance(0.5)) e.anchor = GranularDate::Unknown();
  }
}

Direction Towards(const Latent &a, const Latent &b) {
  return a < b ? Direction::kBefore : Direction::kAfter;
}

void MarkOffAxis(Rng &rng, Event &e) {
  static const std::vector<Axis> kAxes = {Axis::kOrthogonal, Axis::kParallel,
                                          Axis::kNone, Axis::kOther};
  e.axis = rng.Pick(kAxes);
  e.anchor_option = Option(AnchorKind::kUnknown, "");
}

}  // namespace

AnnotatedDocument SynthesizeDocument(Rng &rng, const std::string &doc_id,
                                     const std::string &layer,
                                     const SynthOptions &o) {
  GranularDate dct = RandomDct(rng);
  DocBuilder b(doc_id, dct.ToString(), "Synthetic report " + doc_id);
  std::vector<Slot> slots = Layout(rng, b, o);
  b.Layer(layer);

  static const std::vector<int> kDays = {-400, -30, -9, -3, -2, -1, -1,
                                         -1,   0,   0,  1,  1,  2,  40};
  std::vector<Latent> latent(slots.size());
  for (size_t i = 0; i < slots.size(); ++i) {
    Event &e = b.Add(layer, Id(i), slots[i].sentence, slots[i].trigger);
    e.word_class = slots[i].word_class;
    if (!slots[i].main) {
      MarkOffAxis(rng, e);
      continue;
    }
    // Re-mention of an earlier event: same time, same anchor, Q1 link.
    if (rng.Chance(o.coref)) {
      std::vector<size_t> open;
      for (size_t j = 0; j < i; ++j) {
        Event &prev = b.doc().layers[layer][j];
        if (slots[j].main && !prev.answers.q1) open.push_back(j);
      }
      if (!open.empty()) {
        size_t j = rng.Pick(open);
        Event &prev = b.doc().layers[layer][j];
        Event &cur = b.doc().layers[layer][i];
        cur.anchor_option = prev.anchor_option;
        cur.anchor = prev.anchor;
        latent[i] = latent[j];
        prev.answers.q1 = Link(cur.id);
        continue;
      }
    }
    // Simultaneous with the previous event of the same sentence.
    if (i > 0 && slots[i - 1].main && slots[i - 1].sentence == slots[i].sentence &&
        rng.Chance(0.2)) {
      const Event &prev = b.doc().layers[layer][i - 1];
      e.anchor_option = prev.anchor_option;
      e.anchor = prev.anchor;
      latent[i] = latent[i - 1];
      continue;
    }
    latent[i] = {rng.Pick(kDays), rng.Int(0, 2)};
    ChooseAnchor(rng, dct, latent[i].day, e);
  }

  Layer &events = b.doc().layers[layer];
  for (size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].main) continue;
    AnswerSheet &ans = events[i].answers;
    std::vector<size_t> same = SameSentenceTargets(slots, i);
    std::vector<size_t> equal, differ;
    for (size_t j : same) (latent[j] == latent[i] ? equal : differ).push_back(j);
    if (!equal.empty() && rng.Chance(o.answer)) ans.q2 = Link(Id(rng.Pick(equal)));
    auto directed = [&](std::optional<QuestionLink> &q) {
      if (differ.empty() || !rng.Chance(o.answer)) return;
      size_t j = rng.Pick(differ);
      q = Link(Id(j), Towards(latent[i], latent[j]));
    };
    directed(ans.q3);
    if (events[i].anchor_option.option == AnchorKind::kUnknown) directed(ans.q4);
    directed(ans.q5);
    ans.q6 = latent[i].day >= -1 && latent[i].day <= 0 && rng.Chance(0.5);
    ans.q7 = latent[i].day > 0 && rng.Chance(0.5);
  }
  return b.doc();
}

AnnotatedDocument ArbitraryDocument(Rng &rng, const std::string &doc_id,
                                    const std::string &layer, const SynthOptions &o) {
  GranularDate dct = RandomDct(rng);
  DocBuilder b(doc_id, dct.ToString(), "Arbitrary report " + doc_id);
  std::vector<Slot> slots = Layout(rng, b, o);
  b.Layer(layer);
  static const std::vector<int> kDays = {-30, -3, -1, 0, 1, 2, 30};
  for (size_t i = 0; i < slots.size(); ++i) {
    Event &e = b.Add(layer, Id(i), slots[i].sentence, slots[i].trigger);
    e.word_class = slots[i].word_class;
    if (slots[i].main) {
      ChooseAnchor(rng, dct, rng.Pick(kDays), e);
    } else {
      MarkOffAxis(rng, e);
    }
  }
  Layer &events = b.doc().layers[layer];
  auto dir = [&] { return rng.Chance(0.5) ? Direction::kBefore : Direction::kAfter; };
  for (size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].main) continue;
    AnswerSheet &ans = events[i].answers;
    std::vector<size_t> later;
    for (size_t j = i + 1; j < slots.size(); ++j) {
      if (slots[j].main) later.push_back(j);
    }
    std::vector<size_t> same = SameSentenceTargets(slots, i);
    if (!later.empty() && rng.Chance(o.answer * 0.5)) ans.q1 = Link(Id(rng.Pick(later)));
    if (!same.empty()) {
      if (rng.Chance(o.answer)) ans.q2 = Link(Id(rng.Pick(same)));
      if (rng.Chance(o.answer)) ans.q3 = Link(Id(rng.Pick(same)), dir());
      if (events[i].anchor_option.option == AnchorKind::kUnknown && rng.Chance(o.answer)) {
        ans.q4 = Link(Id(rng.Pick(same)), dir());
      }
      if (rng.Chance(o.answer)) ans.q5 = Link(Id(rng.Pick(same)), dir());
    }
    ans.q6 = rng.Chance(0.3);
    ans.q7 = rng.Chance(0.3);
  }
  return b.doc();
}

}  // namespace timeline::synth
