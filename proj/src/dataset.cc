#include "timeline/dataset.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "timeline/error.h"

namespace timeline {

std::vector<DocumentRelations> GenerateCorpus(const Corpus &corpus,
                                              const std::string &layer) {
  std::vector<DocumentRelations> out;
  for (const AnnotatedDocument &doc : corpus.documents) {
    if (doc.layers.empty()) continue;
    if (!layer.empty() && !doc.layers.contains(layer)) continue;
    const std::string &id = layer.empty() ? doc.primary_layer() : layer;
    out.push_back({&doc, GenerateRelations(doc, id)});
  }
  return out;
}

CorpusManifest SplitCorpus(const CorpusManifest &base,
                           const std::vector<DocumentRelations> &docs,
                           const SplitRatios &ratios, uint64_t seed) {
  const double r[3] = {ratios.train, ratios.dev, ratios.test};
  for (double v : r) {
    if (!std::isfinite(v) || v < 0) {
      throw Error("E_RATIO", "split ratios must be non-negative numbers");
    }
  }
  double sum = r[0] + r[1] + r[2];
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw Error("E_RATIO", "split ratios sum to " + std::to_string(sum) +
                               ", expected 1");
  }

  struct Item {
    std::string doc_id;
    int64_t weight;
  };
  std::vector<Item> items;
  int64_t total = 0;
  for (const DocumentRelations &d : docs) {
    int64_t w = 0;
    for (const TemporalRelation &rel : d.relations.relations) {
      if (rel.label != RelationLabel::kVague) ++w;
    }
    items.push_back({d.doc->doc_id, w});
    total += w;
  }
  std::sort(items.begin(), items.end(),
            [](const Item &a, const Item &b) { return a.doc_id < b.doc_id; });

  std::mt19937_64 rng(seed);
  for (size_t i = items.size(); i-- > 1;) {
    size_t j = static_cast<size_t>(rng() % (i + 1));
    std::swap(items[i], items[j]);
  }

  CorpusManifest out = base;
  out.splits.clear();
  out.seed = seed;
  const Split order[3] = {Split::kTrain, Split::kDev, Split::kTest};
  int64_t assigned[3] = {0, 0, 0};
  for (const Item &item : items) {
    int best = -1;
    double best_deficit = 0;
    for (int s = 0; s < 3; ++s) {
      if (r[s] <= 0) continue;
      double deficit = r[s] * static_cast<double>(total) -
                       static_cast<double>(assigned[s]);
      if (best < 0 || deficit > best_deficit) {
        best = s;
        best_deficit = deficit;
      }
    }
    assigned[best] += item.weight;
    out.splits[item.doc_id] = order[best];
  }
  return out;
}

std::vector<PairRecord> ExportPairs(const std::vector<DocumentRelations> &docs,
                                    bool include_vague) {
  std::vector<PairRecord> out;
  for (const DocumentRelations &d : docs) {
    std::map<std::string, const Event *> events;
    for (const Event &e : d.doc->layer(d.relations.layer)) events.emplace(e.id, &e);
    for (const TemporalRelation &r : d.relations.relations) {
      if (r.label == RelationLabel::kVague && !include_vague) continue;
      const Event &s = *events.at(r.source);
      const Event &t = *events.at(r.target);
      PairRecord rec;
      rec.doc_id = d.doc->doc_id;
      rec.layer = d.relations.layer;
      rec.source = s.id;
      rec.target = t.id;
      rec.source_trigger = s.trigger_text;
      rec.target_trigger = t.trigger_text;
      rec.source_sentence = d.doc->sentences.at(s.sentence_index);
      rec.target_sentence = d.doc->sentences.at(t.sentence_index);
      rec.source_sentence_index = s.sentence_index;
      rec.target_sentence_index = t.sentence_index;
      rec.source_word_class = s.word_class;
      rec.target_word_class = t.word_class;
      rec.window = r.window;
      rec.label = r.label;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

Json ToJson(const PairRecord &r) {
  return {{"doc_id", r.doc_id},
          {"layer", r.layer},
          {"source", r.source},
          {"target", r.target},
          {"source_trigger", r.source_trigger},
          {"target_trigger", r.target_trigger},
          {"source_sentence", r.source_sentence},
          {"target_sentence", r.target_sentence},
          {"source_sentence_index", r.source_sentence_index},
          {"target_sentence_index", r.target_sentence_index},
          {"source_word_class", std::string(ToString(r.source_word_class))},
          {"target_word_class", std::string(ToString(r.target_word_class))},
          {"window", r.window},
          {"label", std::string(ToString(r.label))}};
}

namespace {

const std::set<std::string> &RecordFields() {
  static const std::set<std::string> kFields = {
      "doc_id",          "layer",           "source",
      "target",          "source_trigger",  "target_trigger",
      "source_sentence", "target_sentence", "source_sentence_index",
      "target_sentence_index", "source_word_class", "target_word_class",
      "window",          "label"};
  return kFields;
}

const Json &Member(const Json &j, const std::string &key, const std::string &file,
                   const std::string &pointer) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(file, PointerAppend(pointer, key),
                      "missing required field '" + key + "'");
  }
  return *it;
}

std::string StringMember(const Json &j, const std::string &key,
                         const std::string &file, const std::string &pointer) {
  const Json &v = Member(j, key, file, pointer);
  if (!v.is_string()) {
    throw SchemaError(file, PointerAppend(pointer, key), "expected a string");
  }
  return v.get<std::string>();
}

int IntMember(const Json &j, const std::string &key, const std::string &file,
              const std::string &pointer) {
  const Json &v = Member(j, key, file, pointer);
  if (!v.is_number_integer()) {
    throw SchemaError(file, PointerAppend(pointer, key), "expected an integer");
  }
  return v.get<int>();
}

void RejectUnknown(const Json &j, const std::string &file,
                   const std::string &pointer) {
  if (!j.is_object()) throw SchemaError(file, pointer, "expected an object");
  for (const auto &[key, v] : j.items()) {
    if (!RecordFields().contains(key)) {
      throw SchemaError(file, PointerAppend(pointer, key),
                        "unknown field '" + key + "'");
    }
  }
}

RelationLabel LabelMember(const Json &j, const std::string &file,
                          const std::string &pointer) {
  std::string s = StringMember(j, "label", file, pointer);
  auto l = ParseLabel(s);
  if (!l) {
    throw SchemaError(file, PointerAppend(pointer, "label"), "invalid label '" + s + "'");
  }
  return *l;
}

WordClass WordClassMember(const Json &j, const std::string &key,
                          const std::string &file, const std::string &pointer) {
  std::string s = StringMember(j, key, file, pointer);
  auto w = ParseWordClass(s);
  if (!w) {
    throw SchemaError(file, PointerAppend(pointer, key),
                      "invalid word class '" + s + "'");
  }
  return *w;
}

// Calls fn(json, pointer) for every non-blank line; the pointer is the
// 1-based line number.
template <typename F>
void ForEachLine(std::string_view text, const std::string &file, F fn) {
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    ++line_no;
    pos = nl + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    std::string ptr = "/" + std::to_string(line_no);
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error &e) {
      throw SchemaError(file, ptr, std::string("invalid JSON: ") + e.what());
    }
    fn(j, ptr);
  }
}

}  // namespace

PairRecord PairRecordFromJson(const Json &j, const std::string &file,
                              const std::string &pointer) {
  RejectUnknown(j, file, pointer);
  PairRecord r;
  r.doc_id = StringMember(j, "doc_id", file, pointer);
  r.layer = StringMember(j, "layer", file, pointer);
  r.source = StringMember(j, "source", file, pointer);
  r.target = StringMember(j, "target", file, pointer);
  r.source_trigger = StringMember(j, "source_trigger", file, pointer);
  r.target_trigger = StringMember(j, "target_trigger", file, pointer);
  r.source_sentence = StringMember(j, "source_sentence", file, pointer);
  r.target_sentence = StringMember(j, "target_sentence", file, pointer);
  r.source_sentence_index = IntMember(j, "source_sentence_index", file, pointer);
  r.target_sentence_index = IntMember(j, "target_sentence_index", file, pointer);
  r.source_word_class = WordClassMember(j, "source_word_class", file, pointer);
  r.target_word_class = WordClassMember(j, "target_word_class", file, pointer);
  r.window = IntMember(j, "window", file, pointer);
  r.label = LabelMember(j, file, pointer);
  return r;
}

std::string SerializePairs(const std::vector<PairRecord> &records) {
  std::string out;
  for (const PairRecord &r : records) {
    out += ToJson(r).dump();
    out += '\n';
  }
  return out;
}

std::vector<PairRecord> ParsePairs(std::string_view text, const std::string &file) {
  std::vector<PairRecord> out;
  ForEachLine(text, file, [&](const Json &j, const std::string &ptr) {
    out.push_back(PairRecordFromJson(j, file, ptr));
  });
  return out;
}

std::vector<LabeledPair> ParseLabeledPairs(std::string_view text,
                                           const std::string &file) {
  std::vector<LabeledPair> out;
  ForEachLine(text, file, [&](const Json &j, const std::string &ptr) {
    RejectUnknown(j, file, ptr);
    out.push_back({StringMember(j, "doc_id", file, ptr),
                   StringMember(j, "source", file, ptr),
                   StringMember(j, "target", file, ptr), LabelMember(j, file, ptr)});
  });
  return out;
}

std::pair<std::vector<PairRecord>, std::vector<PairRecord>> Ablate(
    const std::vector<PairRecord> &pairs, const AblationSpec &spec) {
  if (spec.criterion == AblationCriterion::kWindow && spec.threshold < 0) {
    throw Error("E_THRESHOLD", "window threshold must be non-negative");
  }
  std::pair<std::vector<PairRecord>, std::vector<PairRecord>> out;
  for (const PairRecord &p : pairs) {
    bool in_a;
    if (spec.criterion == AblationCriterion::kWordClass) {
      in_a = p.source_word_class == WordClass::kVerb &&
             p.target_word_class == WordClass::kVerb;
    } else {
      in_a = p.window <= spec.threshold;
    }
    (in_a ? out.first : out.second).push_back(p);
  }
  return out;
}

}  // namespace timeline
