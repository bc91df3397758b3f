#include "timeline/model.h"

#include <algorithm>
#include <cctype>

#include "timeline/error.h"

namespace timeline {

namespace {

bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

const Layer &AnnotatedDocument::layer(const std::string &id) const {
  auto it = layers.find(id);
  if (it == layers.end()) {
    throw Error("E_LAYER", "document " + doc_id + " has no layer '" + id + "'");
  }
  return it->second;
}

const std::string &AnnotatedDocument::primary_layer() const {
  if (layers.empty()) {
    throw Error("E_LAYER", "document " + doc_id + " has no layers");
  }
  return layers.begin()->first;
}

int CompareEventIds(std::string_view a, std::string_view b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (IsDigit(a[i]) && IsDigit(b[j])) {
      size_t ie = i, je = j;
      while (ie < a.size() && IsDigit(a[ie])) ++ie;
      while (je < b.size() && IsDigit(b[je])) ++je;
      // Compare digit runs by value: strip leading zeros, then length, then
      // lexicographically.
      size_t is = i, js = j;
      while (is + 1 < ie && a[is] == '0') ++is;
      while (js + 1 < je && b[js] == '0') ++js;
      size_t la = ie - is, lb = je - js;
      if (la != lb) return la < lb ? -1 : 1;
      int c = a.substr(is, la).compare(b.substr(js, lb));
      if (c != 0) return c < 0 ? -1 : 1;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j] ? -1 : 1;
      ++i;
      ++j;
    }
  }
  if (i < a.size()) return 1;
  if (j < b.size()) return -1;
  // Equal under natural order ("e01" vs "e1"): fall back to raw bytes.
  int c = a.compare(b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::vector<const Event *> OrderedEvents(const Layer &layer) {
  std::vector<const Event *> out;
  out.reserve(layer.size());
  for (const Event &e : layer) out.push_back(&e);
  std::stable_sort(out.begin(), out.end(), [](const Event *x, const Event *y) {
    return CompareEventIds(x->id, y->id) < 0;
  });
  return out;
}

std::vector<const Event *> MainEvents(const Layer &layer) {
  std::vector<const Event *> out = OrderedEvents(layer);
  std::erase_if(out, [](const Event *e) { return !e->main_axis(); });
  return out;
}

std::string_view ToString(AnchorKind kind) {
  switch (kind) {
    case AnchorKind::kExplicit: return "explicit";
    case AnchorKind::kImplicit: return "implicit";
    case AnchorKind::kNcPast: return "nc_past";
    case AnchorKind::kFuture: return "future";
    case AnchorKind::kExternal: return "external";
    case AnchorKind::kUnknown: return "unknown";
  }
  return "?";
}

std::string_view ToString(Axis axis) {
  switch (axis) {
    case Axis::kMain: return "main";
    case Axis::kOrthogonal: return "orthogonal";
    case Axis::kParallel: return "parallel";
    case Axis::kNone: return "none";
    case Axis::kOther: return "other";
  }
  return "?";
}

std::string_view ToString(WordClass word_class) {
  return word_class == WordClass::kVerb ? "verb" : "non_verb";
}

std::string_view ToString(Direction direction) {
  return direction == Direction::kBefore ? "before" : "after";
}

std::optional<Axis> ParseAxis(std::string_view text) {
  for (Axis a : {Axis::kMain, Axis::kOrthogonal, Axis::kParallel, Axis::kNone,
                 Axis::kOther}) {
    if (ToString(a) == text) return a;
  }
  return std::nullopt;
}

std::optional<WordClass> ParseWordClass(std::string_view text) {
  if (text == "verb") return WordClass::kVerb;
  if (text == "non_verb") return WordClass::kNonVerb;
  return std::nullopt;
}

std::optional<Direction> ParseDirection(std::string_view text) {
  if (text == "before") return Direction::kBefore;
  if (text == "after") return Direction::kAfter;
  return std::nullopt;
}

}  // namespace timeline
