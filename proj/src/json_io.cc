#include "timeline/json_io.h"

#include <cstdint>
#include <set>

#include "timeline/error.h"

namespace timeline {

namespace {

// Strict reader over one JSON object.
class Fields {
 public:
  Fields(const Json &j, const std::string &file, const std::string &pointer,
         std::initializer_list<std::string_view> allowed)
      : j_(j), file_(file), pointer_(pointer) {
    if (!j.is_object()) Fail(pointer, "expected an object");
    std::set<std::string_view> ok(allowed);
    for (const auto &[key, value] : j.items()) {
      if (!ok.contains(key)) Fail(Ptr(key), "unknown field '" + key + "'");
    }
  }

  [[noreturn]] void Fail(const std::string &pointer,
                         const std::string &message) const {
    throw SchemaError(file_, pointer, message);
  }

  std::string Ptr(std::string_view key) const {
    return PointerAppend(pointer_, key);
  }

  bool Has(std::string_view key) const { return j_.contains(key); }

  const Json &Required(std::string_view key) const {
    auto it = j_.find(key);
    if (it == j_.end()) Fail(Ptr(key), "missing required field '" + std::string(key) + "'");
    return *it;
  }

  std::string String(std::string_view key) const {
    const Json &v = Required(key);
    if (!v.is_string()) Fail(Ptr(key), "expected a string");
    return v.get<std::string>();
  }

  int64_t Integer(std::string_view key) const {
    const Json &v = Required(key);
    if (!v.is_number_integer()) Fail(Ptr(key), "expected an integer");
    return v.get<int64_t>();
  }

  int Int(std::string_view key) const {
    int64_t v = Integer(key);
    if (v < INT32_MIN || v > INT32_MAX) Fail(Ptr(key), "integer out of range");
    return static_cast<int>(v);
  }

  const Json &Array(std::string_view key) const {
    const Json &v = Required(key);
    if (!v.is_array()) Fail(Ptr(key), "expected an array");
    return v;
  }

  const Json &Object(std::string_view key) const {
    const Json &v = Required(key);
    if (!v.is_object()) Fail(Ptr(key), "expected an object");
    return v;
  }

  template <typename T, typename F>
  T Enum(std::string_view key, F parse, const char *what) const {
    std::string s = String(key);
    auto v = parse(s);
    if (!v) Fail(Ptr(key), "invalid " + std::string(what) + " '" + s + "'");
    return *v;
  }

  GranularDate Date(std::string_view key) const {
    std::string s = String(key);
    try {
      return GranularDate::Parse(s);
    } catch (const Error &e) {
      Fail(Ptr(key), e.detail());
    }
  }

  const std::string &file() const { return file_; }
  const std::string &pointer() const { return pointer_; }

 private:
  const Json &j_;
  std::string file_;
  std::string pointer_;
};

std::optional<bool> ParseYesNo(std::string_view s) {
  if (s == "yes") return true;
  if (s == "no") return false;
  return std::nullopt;
}

Json QuestionToJson(const std::optional<QuestionLink> &q) {
  Json out = Json::object();
  out["answer"] = q ? "yes" : "no";
  if (q) {
    if (!q->target.empty()) out["target"] = q->target;
    if (q->direction) out["direction"] = std::string(ToString(*q->direction));
  }
  return out;
}

std::optional<QuestionLink> QuestionFromJson(const Json &j, const std::string &file,
                                             const std::string &pointer,
                                             bool directed) {
  Fields f = directed ? Fields(j, file, pointer, {"answer", "target", "direction"})
                      : Fields(j, file, pointer, {"answer", "target"});
  bool yes = f.Enum<bool>("answer", ParseYesNo, "answer");
  if (!yes) {
    if (f.Has("target")) f.Fail(f.Ptr("target"), "target given with answer 'no'");
    if (f.Has("direction")) {
      f.Fail(f.Ptr("direction"), "direction given with answer 'no'");
    }
    return std::nullopt;
  }
  QuestionLink link;
  if (f.Has("target")) link.target = f.String("target");
  if (f.Has("direction")) {
    link.direction = f.Enum<Direction>("direction", ParseDirection, "direction");
  }
  return link;
}

Json Rounded(double v, int decimals) { return RoundHalfUp(v, decimals); }

}  // namespace

std::string PointerAppend(const std::string &pointer, std::string_view token) {
  std::string out = pointer + "/";
  for (char c : token) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

std::string PointerAppend(const std::string &pointer, size_t index) {
  return pointer + "/" + std::to_string(index);
}

std::string Dump(const Json &j) { return j.dump(2) + "\n"; }

Json ParseJson(std::string_view text, const std::string &file) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw SchemaError(file, "", std::string("invalid JSON: ") + e.what());
  }
}

Json ToJson(const Event &e) {
  Json j = Json::object();
  j["id"] = e.id;
  j["sentence"] = e.sentence_index;
  j["span"] = Json::array({e.span.start, e.span.end});
  j["trigger"] = e.trigger_text;
  j["word_class"] = std::string(ToString(e.word_class));
  j["axis"] = std::string(ToString(e.axis));
  j["anchor_option"] = {{"option", static_cast<int>(e.anchor_option.option)},
                        {"cue", e.anchor_option.raw_cue}};
  if (e.anchor) j["anchor"] = e.anchor->ToString();
  const AnswerSheet &a = e.answers;
  j["answers"] = {{"q1", QuestionToJson(a.q1)}, {"q2", QuestionToJson(a.q2)},
                  {"q3", QuestionToJson(a.q3)}, {"q4", QuestionToJson(a.q4)},
                  {"q5", QuestionToJson(a.q5)}, {"q6", a.q6 ? "yes" : "no"},
                  {"q7", a.q7 ? "yes" : "no"}};
  return j;
}

Event EventFromJson(const Json &j, const std::string &file,
                    const std::string &pointer) {
  Fields f(j, file, pointer,
           {"id", "sentence", "span", "trigger", "word_class", "axis",
            "anchor_option", "anchor", "answers"});
  Event e;
  e.id = f.String("id");
  if (e.id.empty()) f.Fail(f.Ptr("id"), "event id must not be empty");
  e.sentence_index = f.Int("sentence");
  const Json &span = f.Array("span");
  if (span.size() != 2 || !span[0].is_number_integer() ||
      !span[1].is_number_integer()) {
    f.Fail(f.Ptr("span"), "expected [start, end] integers");
  }
  e.span = {span[0].get<int>(), span[1].get<int>()};
  e.trigger_text = f.String("trigger");
  e.word_class = f.Enum<WordClass>("word_class", ParseWordClass, "word class");
  e.axis = f.Enum<Axis>("axis", ParseAxis, "axis");

  Fields opt(f.Object("anchor_option"), file, f.Ptr("anchor_option"),
             {"option", "cue"});
  int option = opt.Int("option");
  if (option < 1 || option > 6) opt.Fail(opt.Ptr("option"), "option must be 1-6");
  e.anchor_option.option = static_cast<AnchorKind>(option);
  e.anchor_option.raw_cue = opt.String("cue");
  if (f.Has("anchor")) e.anchor = f.Date("anchor");

  Fields ans(f.Object("answers"), file, f.Ptr("answers"),
             {"q1", "q2", "q3", "q4", "q5", "q6", "q7"});
  e.answers.q1 = QuestionFromJson(ans.Required("q1"), file, ans.Ptr("q1"), false);
  e.answers.q2 = QuestionFromJson(ans.Required("q2"), file, ans.Ptr("q2"), false);
  e.answers.q3 = QuestionFromJson(ans.Required("q3"), file, ans.Ptr("q3"), true);
  e.answers.q4 = QuestionFromJson(ans.Required("q4"), file, ans.Ptr("q4"), true);
  e.answers.q5 = QuestionFromJson(ans.Required("q5"), file, ans.Ptr("q5"), true);
  e.answers.q6 = ans.Enum<bool>("q6", ParseYesNo, "answer");
  e.answers.q7 = ans.Enum<bool>("q7", ParseYesNo, "answer");
  return e;
}

Json ToJson(const AnnotatedDocument &doc) {
  Json j = Json::object();
  j["schema_version"] = kSchemaVersion;
  j["doc_id"] = doc.doc_id;
  j["title"] = doc.title;
  j["dct"] = doc.dct.ToString();
  j["sentences"] = doc.sentences;
  if (doc.retrieval_query) j["retrieval_query"] = *doc.retrieval_query;
  Json layers = Json::object();
  for (const auto &[id, events] : doc.layers) {
    Json arr = Json::array();
    for (const Event &e : events) arr.push_back(ToJson(e));
    layers[id] = std::move(arr);
  }
  j["layers"] = std::move(layers);
  return j;
}

AnnotatedDocument DocumentFromJson(const Json &j, const std::string &file) {
  Fields f(j, file, "",
           {"schema_version", "doc_id", "title", "dct", "sentences", "layers",
            "retrieval_query"});
  if (f.Integer("schema_version") != kSchemaVersion) {
    f.Fail(f.Ptr("schema_version"),
           "unsupported schema version (expected " +
               std::to_string(kSchemaVersion) + ")");
  }
  AnnotatedDocument doc;
  doc.doc_id = f.String("doc_id");
  if (doc.doc_id.empty()) f.Fail(f.Ptr("doc_id"), "doc_id must not be empty");
  doc.title = f.String("title");
  doc.dct = f.Date("dct");
  const Json &sentences = f.Array("sentences");
  for (size_t i = 0; i < sentences.size(); ++i) {
    if (!sentences[i].is_string()) {
      f.Fail(PointerAppend(f.Ptr("sentences"), i), "expected a string");
    }
    doc.sentences.push_back(sentences[i].get<std::string>());
  }
  if (f.Has("retrieval_query")) doc.retrieval_query = f.String("retrieval_query");
  const Json &layers = f.Object("layers");
  for (const auto &[id, events] : layers.items()) {
    std::string lptr = PointerAppend(f.Ptr("layers"), id);
    if (!events.is_array()) f.Fail(lptr, "expected an array of events");
    Layer layer;
    for (size_t i = 0; i < events.size(); ++i) {
      layer.push_back(EventFromJson(events[i], file, PointerAppend(lptr, i)));
    }
    doc.layers.emplace(id, std::move(layer));
  }
  return doc;
}

Json ToJson(const ConflictRecord &c) {
  return {{"kind", std::string(ToString(c.kind))},
          {"events", c.events},
          {"detail", c.detail}};
}

Json ToJson(const RelationSet &rs) {
  Json rels = Json::array();
  for (const TemporalRelation &r : rs.relations) {
    rels.push_back({{"source", r.source},
                    {"target", r.target},
                    {"window", r.window},
                    {"label", std::string(ToString(r.label))},
                    {"provenance", std::string(ToString(r.provenance))}});
  }
  Json conflicts = Json::array();
  for (const ConflictRecord &c : rs.conflicts) conflicts.push_back(ToJson(c));
  return {{"schema_version", kSchemaVersion},
          {"doc_id", rs.doc_id},
          {"layer", rs.layer},
          {"relations", std::move(rels)},
          {"conflicts", std::move(conflicts)}};
}

RelationSet RelationSetFromJson(const Json &j, const std::string &file) {
  Fields f(j, file, "",
           {"schema_version", "doc_id", "layer", "relations", "conflicts"});
  if (f.Integer("schema_version") != kSchemaVersion) {
    f.Fail(f.Ptr("schema_version"), "unsupported schema version");
  }
  RelationSet rs;
  rs.doc_id = f.String("doc_id");
  rs.layer = f.String("layer");
  const Json &rels = f.Array("relations");
  for (size_t i = 0; i < rels.size(); ++i) {
    Fields r(rels[i], file, PointerAppend(f.Ptr("relations"), i),
             {"source", "target", "window", "label", "provenance"});
    TemporalRelation tr;
    tr.source = r.String("source");
    tr.target = r.String("target");
    tr.window = r.Int("window");
    if (tr.window < 0) r.Fail(r.Ptr("window"), "window must be non-negative");
    tr.label = r.Enum<RelationLabel>("label", ParseLabel, "label");
    tr.provenance = r.Enum<Provenance>("provenance", ParseProvenance, "provenance");
    rs.relations.push_back(std::move(tr));
  }
  const Json &conflicts = f.Array("conflicts");
  for (size_t i = 0; i < conflicts.size(); ++i) {
    Fields c(conflicts[i], file, PointerAppend(f.Ptr("conflicts"), i),
             {"kind", "events", "detail"});
    ConflictRecord cr;
    cr.kind = c.Enum<ConflictKind>("kind", ParseConflictKind, "conflict kind");
    const Json &ev = c.Array("events");
    for (size_t k = 0; k < ev.size(); ++k) {
      if (!ev[k].is_string()) {
        c.Fail(PointerAppend(c.Ptr("events"), k), "expected a string");
      }
      cr.events.push_back(ev[k].get<std::string>());
    }
    cr.detail = c.String("detail");
    rs.conflicts.push_back(std::move(cr));
  }
  return rs;
}

Json ToJson(const ValidationReport &report) {
  auto issues = [](const std::vector<Issue> &list) {
    Json arr = Json::array();
    for (const Issue &i : list) {
      Json o = {{"code", i.code}, {"message", i.message}};
      if (i.layer) o["layer"] = *i.layer;
      if (i.event_id) o["event_id"] = *i.event_id;
      arr.push_back(std::move(o));
    }
    return arr;
  };
  return {{"errors", issues(report.errors)}, {"warnings", issues(report.warnings)}};
}

Json ToJson(const ContingencyMatrix &m) {
  Json labels = Json::array(), counts = Json::array(), rows = Json::array(),
       cols = Json::array();
  for (int i = 0; i < 4; ++i) {
    labels.push_back(std::string(ToString(kAllLabels[i])));
    counts.push_back(m.counts[i]);
    rows.push_back(m.RowTotal(i));
    cols.push_back(m.ColumnTotal(i));
  }
  return {{"labels", labels},
          {"counts", counts},
          {"row_totals", rows},
          {"column_totals", cols},
          {"total", m.Total()}};
}

Json ToJson(const AgreementReport &report) {
  return {{"event_f1", Rounded(report.event_f1, 2)},
          {"relation_micro_f1", Rounded(report.relation_micro_f1, 2)},
          {"kappa", Rounded(report.kappa, 4)},
          {"matrix", ToJson(report.matrix)}};
}

Json ToJson(const EvalReport &report) {
  Json per = Json::object();
  for (const auto &[label, s] : report.per_label) {
    per[std::string(ToString(label))] = {{"precision", Rounded(s.precision, 2)},
                                         {"recall", Rounded(s.recall, 2)},
                                         {"f1", Rounded(s.f1, 2)},
                                         {"support", s.support},
                                         {"predicted", s.predicted}};
  }
  return {{"per_label", per},
          {"micro_f1", Rounded(report.micro_f1, 2)},
          {"scored_pairs", report.scored_pairs},
          {"discarded_vague", report.discarded_vague}};
}

Json ToJson(const CorpusStats &stats) {
  Json dist = Json::object(), counts = Json::object();
  for (RelationLabel l : kAllLabels) {
    std::string key(ToString(l));
    dist[key] = Rounded(stats.label_distribution.at(l), 2);
    counts[key] = stats.label_counts.at(l);
  }
  Json hist = Json::array();
  for (const auto &[window, count] : stats.window_histogram) {
    hist.push_back({{"window", window}, {"count", count}});
  }
  return {{"documents", stats.documents},
          {"label_distribution", dist},
          {"label_counts", counts},
          {"window_histogram", hist},
          {"average_window", Rounded(stats.average_window, 2)},
          {"possible_pairs", stats.possible_pairs},
          {"non_vague_pairs", stats.non_vague_pairs},
          {"non_vague_percentage", Rounded(stats.non_vague_percentage, 2)},
          {"non_verb_involved_percentage",
           Rounded(stats.non_verb_involved_percentage, 2)}};
}

}  // namespace timeline
