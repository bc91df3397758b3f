#include "timeline/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>

#include "timeline/error.h"

namespace timeline {

int64_t ContingencyMatrix::RowTotal(int row) const {
  int64_t sum = 0;
  for (int64_t c : counts[row]) sum += c;
  return sum;
}

int64_t ContingencyMatrix::ColumnTotal(int col) const {
  int64_t sum = 0;
  for (const auto &row : counts) sum += row[col];
  return sum;
}

int64_t ContingencyMatrix::Total() const {
  int64_t sum = 0;
  for (int r = 0; r < 4; ++r) sum += RowTotal(r);
  return sum;
}

int64_t ContingencyMatrix::Trace() const {
  int64_t sum = 0;
  for (int i = 0; i < 4; ++i) sum += counts[i][i];
  return sum;
}

AgreementReport AgreementFromMatrix(const ContingencyMatrix &matrix) {
  const int64_t total = matrix.Total();
  if (total == 0) throw Error("E_EMPTY", "no common pairs to compare");
  const double n = static_cast<double>(total);
  double po = static_cast<double>(matrix.Trace()) / n;
  double pe = 0;
  for (int i = 0; i < 4; ++i) {
    pe += static_cast<double>(matrix.RowTotal(i)) *
          static_cast<double>(matrix.ColumnTotal(i));
  }
  pe /= n * n;
  // Pe == 1 exactly when both annotators used one and the same label.
  bool degenerate = false;
  for (int i = 0; i < 4; ++i) {
    if (matrix.RowTotal(i) == total && matrix.ColumnTotal(i) == total) {
      degenerate = true;
    }
  }
  if (degenerate) {
    throw Error("E_DEGENERATE",
                "both annotators used a single label; kappa is undefined");
  }
  AgreementReport report;
  report.matrix = matrix;
  report.relation_micro_f1 = 100.0 * po;
  report.kappa = (po - pe) / (1.0 - pe);
  return report;
}

double EventIaa(const std::vector<EventKey> &a, const std::vector<EventKey> &b) {
  if (a.empty() && b.empty()) {
    throw Error("E_EMPTY", "both event layers are empty");
  }
  std::set<EventKey> sa(a.begin(), a.end());
  std::set<EventKey> sb(b.begin(), b.end());
  size_t common = 0;
  for (const EventKey &k : sa) common += sb.count(k);
  return 100.0 * 2.0 * static_cast<double>(common) /
         static_cast<double>(sa.size() + sb.size());
}

namespace {

std::map<std::string, EventKey> KeysOf(const AnnotatedDocument &doc,
                                       const std::string &layer) {
  std::map<std::string, EventKey> out;
  for (const Event &e : doc.layer(layer)) {
    out.emplace(e.id, EventKey{doc.doc_id, e.sentence_index, e.span.start, e.span.end});
  }
  return out;
}

using KeyPair = std::pair<EventKey, EventKey>;

// Pairs whose endpoints are both in `agreed`, keyed by span identity with the
// earlier mention first.
std::map<KeyPair, RelationLabel> AgreedPairs(const LayerRelations &lr,
                                             const std::set<EventKey> &agreed) {
  std::map<std::string, EventKey> keys = KeysOf(*lr.doc, lr.layer);
  std::map<KeyPair, RelationLabel> out;
  for (const TemporalRelation &r : lr.relations.relations) {
    auto s = keys.find(r.source), t = keys.find(r.target);
    if (s == keys.end() || t == keys.end()) continue;
    if (!agreed.contains(s->second) || !agreed.contains(t->second)) continue;
    if (t->second < s->second) {
      out.emplace(KeyPair{t->second, s->second}, Inverse(r.label));
    } else {
      out.emplace(KeyPair{s->second, t->second}, r.label);
    }
  }
  return out;
}

}  // namespace

AgreementReport RelationIaa(const std::vector<LayerRelations> &a,
                            const std::vector<LayerRelations> &b) {
  std::map<std::string, const LayerRelations *> b_by_doc;
  for (const LayerRelations &lr : b) b_by_doc.emplace(lr.doc->doc_id, &lr);

  std::vector<EventKey> events_a, events_b;
  ContingencyMatrix matrix;
  std::set<std::string> seen;
  for (const LayerRelations &la : a) {
    seen.insert(la.doc->doc_id);
    std::map<std::string, EventKey> ka = KeysOf(*la.doc, la.layer);
    for (const auto &[id, k] : ka) events_a.push_back(k);
    auto it = b_by_doc.find(la.doc->doc_id);
    if (it == b_by_doc.end()) continue;
    const LayerRelations &lb = *it->second;
    std::map<std::string, EventKey> kb = KeysOf(*lb.doc, lb.layer);
    std::set<EventKey> sa, agreed;
    for (const auto &[id, k] : ka) sa.insert(k);
    for (const auto &[id, k] : kb) {
      if (sa.contains(k)) agreed.insert(k);
    }
    auto pa = AgreedPairs(la, agreed);
    auto pb = AgreedPairs(lb, agreed);
    for (const auto &[pair, label] : pa) {
      auto jt = pb.find(pair);
      if (jt != pb.end()) matrix.Add(label, jt->second);
    }
  }
  for (const LayerRelations &lb : b) {
    for (const auto &[id, k] : KeysOf(*lb.doc, lb.layer)) events_b.push_back(k);
  }

  AgreementReport report = AgreementFromMatrix(matrix);
  report.event_f1 = EventIaa(events_a, events_b);
  return report;
}

EvalReport Evaluate(const std::vector<LabeledPair> &gold,
                    const std::vector<LabeledPair> &pred) {
  using Key = std::tuple<std::string, std::string, std::string>;
  EvalReport report;
  std::map<Key, RelationLabel> gold_map;
  for (const LabeledPair &g : gold) {
    if (g.label == RelationLabel::kVague) {
      ++report.discarded_vague;
      continue;
    }
    if (!gold_map.emplace(Key{g.doc_id, g.source, g.target}, g.label).second) {
      throw Error("E_COVERAGE", "gold pair " + g.doc_id + ":" + g.source + "-" +
                                    g.target + " listed twice");
    }
  }

  const RelationLabel scored[] = {RelationLabel::kBefore, RelationLabel::kAfter,
                                  RelationLabel::kEqual};
  std::map<RelationLabel, int64_t> tp, gold_count, pred_count;
  std::set<Key> covered;
  for (const LabeledPair &p : pred) {
    Key key{p.doc_id, p.source, p.target};
    if (p.label == RelationLabel::kVague) {
      throw Error("E_LABEL", "prediction for " + p.doc_id + ":" + p.source + "-" +
                                 p.target + " is vague");
    }
    auto it = gold_map.find(key);
    if (it == gold_map.end()) {
      throw Error("E_COVERAGE", "predicted pair " + p.doc_id + ":" + p.source +
                                    "-" + p.target + " is not a non-vague gold pair");
    }
    if (!covered.insert(key).second) {
      throw Error("E_COVERAGE", "pair " + p.doc_id + ":" + p.source + "-" +
                                    p.target + " predicted twice");
    }
    ++pred_count[p.label];
    if (p.label == it->second) ++tp[p.label];
  }
  if (covered.size() != gold_map.size()) {
    for (const auto &[key, label] : gold_map) {
      if (!covered.contains(key)) {
        throw Error("E_COVERAGE",
                    "missing prediction for " + std::get<0>(key) + ":" +
                        std::get<1>(key) + "-" + std::get<2>(key) + " (" +
                        std::to_string(gold_map.size() - covered.size()) +
                        " missing)");
      }
    }
  }
  for (const auto &[key, label] : gold_map) ++gold_count[label];

  int64_t total_tp = 0;
  for (RelationLabel l : scored) {
    LabelScore s;
    s.support = gold_count[l];
    s.predicted = pred_count[l];
    s.precision = s.predicted ? 100.0 * tp[l] / s.predicted : 0.0;
    s.recall = s.support ? 100.0 * tp[l] / s.support : 0.0;
    s.f1 = (s.precision + s.recall) > 0
               ? 2 * s.precision * s.recall / (s.precision + s.recall)
               : 0.0;
    report.per_label[l] = s;
    total_tp += tp[l];
  }
  report.scored_pairs = static_cast<int64_t>(gold_map.size());
  // Every scored pair is predicted exactly once, so micro P = micro R.
  report.micro_f1 =
      report.scored_pairs ? 100.0 * total_tp / report.scored_pairs : 0.0;
  return report;
}

CorpusStats ComputeCorpusStats(const std::vector<DocumentRelations> &corpus) {
  CorpusStats stats;
  for (RelationLabel l : kAllLabels) stats.label_counts[l] = 0;
  int64_t window_sum = 0;
  int64_t non_verb = 0;
  for (const DocumentRelations &d : corpus) {
    ++stats.documents;
    std::map<std::string, WordClass> classes;
    for (const Event &e : d.doc->layer(d.relations.layer)) {
      classes.emplace(e.id, e.word_class);
    }
    for (const TemporalRelation &r : d.relations.relations) {
      ++stats.possible_pairs;
      ++stats.label_counts[r.label];
      ++stats.window_histogram[r.window];
      window_sum += r.window;
      if (r.label == RelationLabel::kVague) continue;
      ++stats.non_vague_pairs;
      if (classes[r.source] == WordClass::kNonVerb ||
          classes[r.target] == WordClass::kNonVerb) {
        ++non_verb;
      }
    }
  }
  for (RelationLabel l : kAllLabels) {
    stats.label_distribution[l] =
        stats.possible_pairs
            ? 100.0 * stats.label_counts[l] / stats.possible_pairs
            : 0.0;
  }
  if (stats.possible_pairs) {
    stats.average_window =
        static_cast<double>(window_sum) / stats.possible_pairs;
    stats.non_vague_percentage =
        100.0 * stats.non_vague_pairs / stats.possible_pairs;
  }
  if (stats.non_vague_pairs) {
    stats.non_verb_involved_percentage = 100.0 * non_verb / stats.non_vague_pairs;
  }
  return stats;
}

double RoundHalfUp(double value, int decimals) {
  double scale = std::pow(10.0, decimals);
  // The epsilon absorbs binary representation error at exact halves.
  double scaled = std::fabs(value) * scale;
  double rounded = std::floor(scaled + 0.5 + 1e-9) / scale;
  return value < 0 && rounded != 0 ? -rounded : rounded;
}

std::string FormatFixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, RoundHalfUp(value, decimals));
  return buf;
}

}  // namespace timeline
