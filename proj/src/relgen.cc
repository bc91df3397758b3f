#include "timeline/relgen.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "timeline/anchors.h"
#include "timeline/consistency.h"
#include "timeline/error.h"
#include "timeline/validate.h"

namespace timeline {

namespace {

bool Targets(const std::optional<QuestionLink> &q, const std::string &id) {
  return q && q->target == id;
}

bool Targets(const std::optional<QuestionLink> &q, const std::string &id,
             Direction dir) {
  return Targets(q, id) && q->direction == dir;
}

// Disjuncts of the BEFORE (dir = kBefore) or AFTER branch, in order. Returns
// the provenance of the first one that holds.
std::optional<Provenance> OrderBranch(const Event &a, const Event &b,
                                      AnchorComparison cmp, Direction dir) {
  AnchorComparison ordered = dir == Direction::kBefore
                                 ? AnchorComparison::kBefore
                                 : AnchorComparison::kAfter;
  bool q6_guard = a.answers.q6 && b.answers.q6;
  bool q7_guard = a.answers.q7 && b.answers.q7;
  if (cmp == ordered && !q6_guard && !q7_guard) return Provenance::kAnchorOrder;
  if (cmp == AnchorComparison::kSame && Targets(a.answers.q3, b.id, dir)) {
    return Provenance::kSameDayQ3;
  }
  if (Targets(a.answers.q4, b.id, dir)) return Provenance::kUnknownQ4;
  if (Targets(a.answers.q5, b.id, dir)) return Provenance::kImplicitQ5;
  return std::nullopt;
}

// Oriented view over the stored upper triangle.
class LabelMatrix {
 public:
  explicit LabelMatrix(size_t n) : n_(n), cells_(n * n) {}

  PairLabel &At(size_t i, size_t j) { return cells_[i * n_ + j]; }

  // Label read as "i <label> j" for any i != j.
  RelationLabel Oriented(size_t i, size_t j) const {
    return i < j ? cells_[i * n_ + j].label : Inverse(cells_[j * n_ + i].label);
  }

  void SetOriented(size_t i, size_t j, RelationLabel label, Provenance p) {
    if (i < j) {
      cells_[i * n_ + j] = {label, p};
    } else {
      cells_[j * n_ + i] = {Inverse(label), p};
    }
  }

 private:
  size_t n_;
  std::vector<PairLabel> cells_;
};

bool Determinate(RelationLabel l) { return l != RelationLabel::kVague; }

}  // namespace

std::vector<PairSlot> EnumeratePairs(const AnnotatedDocument &doc,
                                     const std::string &layer) {
  std::vector<const Event *> events = MainEvents(doc.layer(layer));
  std::vector<PairSlot> pairs;
  pairs.reserve(events.size() * (events.size() - (events.empty() ? 0 : 1)) / 2);
  for (size_t i = 0; i < events.size(); ++i) {
    for (size_t j = i + 1; j < events.size(); ++j) {
      pairs.push_back({events[i]->id, events[j]->id,
                       events[j]->sentence_index - events[i]->sentence_index});
    }
  }
  return pairs;
}

PairLabel LabelPair(const Event &a, const Event &b) {
  if (!a.anchor || !b.anchor) {
    throw Error("E_UNRESOLVED_ANCHOR",
                "event '" + (a.anchor ? b.id : a.id) + "' has no anchor");
  }
  AnchorComparison cmp = Compare(*a.anchor, *b.anchor);

  if (cmp == AnchorComparison::kSame) {
    if (Targets(a.answers.q1, b.id)) {
      return {RelationLabel::kEqual, Provenance::kEqCoref};
    }
    if (Targets(a.answers.q2, b.id)) {
      return {RelationLabel::kEqual, Provenance::kEqSimul};
    }
  }
  if (auto p = OrderBranch(a, b, cmp, Direction::kBefore)) {
    return {RelationLabel::kBefore, *p};
  }
  if (auto p = OrderBranch(a, b, cmp, Direction::kAfter)) {
    return {RelationLabel::kAfter, *p};
  }
  bool ordered = cmp == AnchorComparison::kBefore || cmp == AnchorComparison::kAfter;
  if (ordered && a.answers.q6 && b.answers.q6) {
    return {RelationLabel::kVague, Provenance::kGuardDctQ6};
  }
  if (ordered && a.answers.q7 && b.answers.q7) {
    return {RelationLabel::kVague, Provenance::kGuardFutureQ7};
  }
  return {RelationLabel::kVague, Provenance::kDefaultVague};
}

Layer ResolveLayerAnchors(const Layer &layer, const GranularDate &dct) {
  Layer out = layer;
  for (Event &e : out) {
    if (e.anchor || !e.main_axis()) continue;
    e.anchor = ResolveAnchor(e.anchor_option.option, std::nullopt, dct);
  }
  return out;
}

std::vector<std::vector<std::string>> CorefClasses(const Layer &layer,
                                                   bool same_anchor_only) {
  std::vector<const Event *> events = MainEvents(layer);
  std::map<std::string, size_t, std::less<>> index;
  for (size_t i = 0; i < events.size(); ++i) index.emplace(events[i]->id, i);

  std::vector<size_t> parent(events.size());
  std::iota(parent.begin(), parent.end(), size_t{0});
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < events.size(); ++i) {
    const Event &e = *events[i];
    if (!e.answers.q1) continue;
    auto it = index.find(e.answers.q1->target);
    if (it == index.end()) continue;
    const Event &t = *events[it->second];
    if (same_anchor_only && (!e.anchor || !t.anchor || *e.anchor != *t.anchor)) {
      continue;
    }
    size_t ra = find(i), rb = find(it->second);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }

  std::map<size_t, std::vector<std::string>> groups;
  for (size_t i = 0; i < events.size(); ++i) {
    groups[find(i)].push_back(events[i]->id);
  }
  std::vector<std::vector<std::string>> classes;
  for (auto &[root, members] : groups) {
    if (members.size() > 1) classes.push_back(std::move(members));
  }
  return classes;
}

RelationSet GenerateRelations(const AnnotatedDocument &doc,
                              const std::string &layer_id) {
  ValidationReport report = ValidateDocument(doc);
  if (!report.admissible()) {
    std::string msg = doc.doc_id + ": " + std::to_string(report.errors.size()) +
                      " validation error(s); first: " +
                      report.errors.front().code + " " +
                      report.errors.front().message;
    throw Error("E_VALIDATION", msg);
  }
  Layer layer = ResolveLayerAnchors(doc.layer(layer_id), doc.dct);
  std::vector<const Event *> events = MainEvents(layer);
  const size_t n = events.size();
  std::map<std::string, size_t, std::less<>> index;
  for (size_t i = 0; i < n; ++i) index.emplace(events[i]->id, i);

  LabelMatrix m(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) m.At(i, j) = LabelPair(*events[i], *events[j]);
  }

  // Coreference closure. Members of a class are equal to each other; a
  // label that some members have toward an outside event and no member
  // contradicts is copied onto the members that are vague toward it.
  std::vector<std::vector<size_t>> classes;
  for (const auto &members : CorefClasses(layer)) {
    std::vector<size_t> idx;
    for (const std::string &id : members) idx.push_back(index.at(id));
    classes.push_back(std::move(idx));
  }
  for (const auto &cls : classes) {
    for (size_t x = 0; x < cls.size(); ++x) {
      for (size_t y = x + 1; y < cls.size(); ++y) {
        if (m.Oriented(cls[x], cls[y]) == RelationLabel::kVague) {
          m.SetOriented(cls[x], cls[y], RelationLabel::kEqual,
                        Provenance::kCorefPropagated);
        }
      }
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto &cls : classes) {
      for (size_t e = 0; e < n; ++e) {
        if (std::find(cls.begin(), cls.end(), e) != cls.end()) continue;
        std::optional<RelationLabel> agreed;
        bool disagree = false, any_vague = false;
        for (size_t x : cls) {
          RelationLabel l = m.Oriented(x, e);
          if (!Determinate(l)) {
            any_vague = true;
          } else if (agreed && *agreed != l) {
            disagree = true;
          } else {
            agreed = l;
          }
        }
        if (disagree || !agreed || !any_vague) continue;
        for (size_t x : cls) {
          if (!Determinate(m.Oriented(x, e))) {
            m.SetOriented(x, e, *agreed, Provenance::kCorefPropagated);
            changed = true;
          }
        }
      }
    }
  }

  RelationSet out;
  out.doc_id = doc.doc_id;
  out.layer = layer_id;
  out.relations.reserve(n * (n ? n - 1 : 0) / 2);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const PairLabel &pl = m.At(i, j);
      out.relations.push_back({events[i]->id, events[j]->id,
                               events[j]->sentence_index - events[i]->sentence_index,
                               pl.label, pl.provenance});
    }
  }
  out.conflicts = Check(out, layer);
  return out;
}

RelationLabel Inverse(RelationLabel label) {
  switch (label) {
    case RelationLabel::kBefore: return RelationLabel::kAfter;
    case RelationLabel::kAfter: return RelationLabel::kBefore;
    default: return label;
  }
}

std::string_view ToString(RelationLabel label) {
  switch (label) {
    case RelationLabel::kBefore: return "before";
    case RelationLabel::kAfter: return "after";
    case RelationLabel::kEqual: return "equal";
    case RelationLabel::kVague: return "vague";
  }
  return "?";
}

std::string_view ToString(Provenance p) {
  switch (p) {
    case Provenance::kEqCoref: return "EQ_COREF";
    case Provenance::kEqSimul: return "EQ_SIMUL";
    case Provenance::kAnchorOrder: return "ANCHOR_ORDER";
    case Provenance::kSameDayQ3: return "SAME_DAY_Q3";
    case Provenance::kUnknownQ4: return "UNKNOWN_Q4";
    case Provenance::kImplicitQ5: return "IMPLICIT_Q5";
    case Provenance::kGuardDctQ6: return "GUARD_DCT_Q6";
    case Provenance::kGuardFutureQ7: return "GUARD_FUTURE_Q7";
    case Provenance::kDefaultVague: return "DEFAULT_VAGUE";
    case Provenance::kCorefPropagated: return "COREF_PROPAGATED";
  }
  return "?";
}

std::string_view ToString(ConflictKind kind) {
  switch (kind) {
    case ConflictKind::kTransitivity: return "TRANSITIVITY";
    case ConflictKind::kCorefDisagreement: return "COREF_DISAGREEMENT";
    case ConflictKind::kEqualAsymmetry: return "EQUAL_ASYMMETRY";
    case ConflictKind::kAnchorCorefMismatch: return "ANCHOR_COREF_MISMATCH";
  }
  return "?";
}

std::optional<RelationLabel> ParseLabel(std::string_view text) {
  for (RelationLabel l : kAllLabels) {
    if (ToString(l) == text) return l;
  }
  return std::nullopt;
}

std::optional<Provenance> ParseProvenance(std::string_view text) {
  for (int i = 0; i <= static_cast<int>(Provenance::kCorefPropagated); ++i) {
    auto p = static_cast<Provenance>(i);
    if (ToString(p) == text) return p;
  }
  return std::nullopt;
}

std::optional<ConflictKind> ParseConflictKind(std::string_view text) {
  for (int i = 0; i <= static_cast<int>(ConflictKind::kAnchorCorefMismatch); ++i) {
    auto k = static_cast<ConflictKind>(i);
    if (ToString(k) == text) return k;
  }
  return std::nullopt;
}

}  // namespace timeline
