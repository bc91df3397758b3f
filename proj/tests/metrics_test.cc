#include <cmath>

#include "doctest.h"
#include "synth.h"
#include "timeline/error.h"
#include "timeline/metrics.h"
#include "timeline/relgen.h"

using namespace timeline;

namespace {

using L = RelationLabel;

const int64_t kTable[4][4] = {{397, 11, 0, 26}, {8, 336, 1, 28}, {2, 0, 10, 2}, {36, 17, 0, 1268}};

ContingencyMatrix TableMatrix() {
  ContingencyMatrix m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m.counts[i][j] = kTable[i][j];
  }
  return m;
}

// Kappa in exact integer form: (N*trace - S) / (N^2 - S), S = sum of
// row_i * col_i.
double KappaOracle(const int64_t t[4][4]) {
  int64_t n = 0, trace = 0, s = 0;
  for (int i = 0; i < 4; ++i) {
    int64_t row = 0, col = 0;
    for (int j = 0; j < 4; ++j) {
      row += t[i][j];
      col += t[j][i];
      n += t[i][j];
    }
    trace += t[i][i];
    s += row * col;
  }
  return static_cast<double>(n * trace - s) / static_cast<double>(n * n - s);
}

std::string ErrorCode(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  return "";
}

LabeledPair Pair(const std::string &src, L l) { return {"d", src, "x" + src, l}; }

}  // namespace

TEST_CASE("reference contingency table") {
  AgreementReport r = AgreementFromMatrix(TableMatrix());
  CHECK(r.matrix.Total() == 2142);
  CHECK(r.matrix.Trace() == 2011);
  CHECK(r.relation_micro_f1 == doctest::Approx(100.0 * 2011 / 2142).epsilon(1e-12));
  CHECK(FormatFixed(r.relation_micro_f1, 2) == "93.88");
  CHECK(r.kappa == doctest::Approx(KappaOracle(kTable)).epsilon(1e-12));
  CHECK(FormatFixed(r.kappa, 4) == "0.8882");
}

TEST_CASE("agreement edge cases") {
  ContingencyMatrix diag;
  diag.Add(L::kBefore, L::kBefore, 5);
  diag.Add(L::kVague, L::kVague, 7);
  CHECK(AgreementFromMatrix(diag).kappa == doctest::Approx(1.0));

  ContingencyMatrix vague;
  vague.Add(L::kVague, L::kVague, 9);
  CHECK(ErrorCode([&] { AgreementFromMatrix(vague); }) == "E_DEGENERATE");
  CHECK(ErrorCode([&] { AgreementFromMatrix(ContingencyMatrix{}); }) == "E_EMPTY");

  // One side constant, the other not: kappa is defined and zero.
  ContingencyMatrix skew;
  skew.Add(L::kVague, L::kVague, 3);
  skew.Add(L::kVague, L::kBefore, 1);
  CHECK(AgreementFromMatrix(skew).kappa == doctest::Approx(0.0));
}

TEST_CASE("kappa matches the integer form on random matrices") {
  synth::Rng rng(21);
  for (int round = 0; round < 2000; ++round) {
    int64_t t[4][4];
    ContingencyMatrix m;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) m.counts[i][j] = t[i][j] = rng.Int(0, 50);
    }
    double expected = KappaOracle(t);
    REQUIRE(AgreementFromMatrix(m).kappa == doctest::Approx(expected).epsilon(1e-12));
    // Scaling every cell leaves both figures unchanged.
    ContingencyMatrix scaled = m;
    for (auto &row : scaled.counts) {
      for (int64_t &c : row) c *= 7;
    }
    REQUIRE(AgreementFromMatrix(scaled).kappa == doctest::Approx(expected).epsilon(1e-12));
    REQUIRE(AgreementFromMatrix(scaled).relation_micro_f1 ==
            doctest::Approx(AgreementFromMatrix(m).relation_micro_f1).epsilon(1e-12));
  }
}

TEST_CASE("event agreement") {
  auto keys = [](int from, int to) {
    std::vector<EventKey> v;
    for (int i = from; i < to; ++i) v.push_back({"d", 0, i * 10, i * 10 + 4});
    return v;
  };
  CHECK(EventIaa(keys(0, 6), keys(0, 6)) == doctest::Approx(100.0));
  CHECK(EventIaa(keys(0, 3), keys(3, 8)) == doctest::Approx(0.0));
  CHECK(FormatFixed(EventIaa(keys(0, 10), keys(0, 8)), 2) == "88.89");
  CHECK(ErrorCode([] { EventIaa({}, {}); }) == "E_EMPTY");
  // Same offsets in another sentence are a different event.
  CHECK(EventIaa({{"d", 0, 1, 3}}, {{"d", 1, 1, 3}}) == doctest::Approx(0.0));
}

TEST_CASE("relation agreement ignores pairs with unmatched endpoints") {
  synth::DocBuilder b("d", "2021-02-15");
  int s = b.Sentence("They met, talked, ate and left.");
  auto dated = [](Event &e, const char *d) {
    e.anchor_option = synth::Option(AnchorKind::kExplicit, d);
    e.anchor = GranularDate::Parse(d);
  };
  for (const std::string layer : {"a", "b"}) {
    dated(b.Add(layer, "e1", s, "met"), "2021-02-10");
    dated(b.Add(layer, "e2", s, "talked"), "2021-02-12");
    b.Add(layer, "e3", s, "ate");
  }
  b.Add("a", "e4", s, "left");
  b.doc().layers["a"][2].anchor_option = synth::Option(AnchorKind::kUnknown);
  dated(b.doc().layers["b"][2], "2021-02-14");
  const AnnotatedDocument &doc = b.doc();
  AgreementReport r = RelationIaa({{&doc, "a", GenerateRelations(doc, "a")}},
                                  {{&doc, "b", GenerateRelations(doc, "b")}});
  // e1-e2 before in both; e3 pairs vague against before. Nothing with e4.
  CHECK(r.matrix.Total() == 3);
  CHECK(r.matrix.counts[0][0] == 1);
  CHECK(r.matrix.counts[3][0] == 2);
  CHECK(r.kappa == doctest::Approx(0.0));
  CHECK(FormatFixed(r.event_f1, 2) == "85.71");
}

TEST_CASE("identical relation sets agree perfectly") {
  synth::Rng rng(8);
  std::vector<AnnotatedDocument> docs;
  for (int i = 0; i < 20; ++i) docs.push_back(synth::SynthesizeDocument(rng, "d" + std::to_string(i), "x"));
  std::vector<LayerRelations> a;
  for (const AnnotatedDocument &d : docs) a.push_back({&d, "x", GenerateRelations(d, "x")});
  AgreementReport r = RelationIaa(a, a);
  CHECK(r.kappa == doctest::Approx(1.0));
  CHECK(r.relation_micro_f1 == doctest::Approx(100.0));
  CHECK(r.event_f1 == doctest::Approx(100.0));
}

TEST_CASE("evaluation: perfect predictions") {
  std::vector<LabeledPair> gold = {Pair("a", L::kBefore), Pair("b", L::kAfter),
                                   Pair("c", L::kEqual), Pair("d", L::kVague)};
  std::vector<LabeledPair> pred(gold.begin(), gold.begin() + 3);
  EvalReport r = Evaluate(gold, pred);
  CHECK(r.micro_f1 == doctest::Approx(100.0));
  for (L l : {L::kBefore, L::kAfter, L::kEqual}) {
    CHECK(r.per_label[l].precision == doctest::Approx(100.0));
    CHECK(r.per_label[l].recall == doctest::Approx(100.0));
    CHECK(r.per_label[l].f1 == doctest::Approx(100.0));
  }
  CHECK(r.scored_pairs == 3);
  CHECK(r.discarded_vague == 1);
}

TEST_CASE("evaluation: four hand-counted pairs") {
  std::vector<LabeledPair> gold = {Pair("1", L::kBefore), Pair("2", L::kBefore),
                                   Pair("3", L::kAfter), Pair("4", L::kEqual)};
  std::vector<LabeledPair> pred = {Pair("1", L::kBefore), Pair("2", L::kAfter),
                                   Pair("3", L::kAfter), Pair("4", L::kAfter)};
  EvalReport r = Evaluate(gold, pred);
  const LabelScore &before = r.per_label[L::kBefore];
  const LabelScore &after = r.per_label[L::kAfter];
  const LabelScore &equal = r.per_label[L::kEqual];
  CHECK(FormatFixed(before.precision, 2) == "100.00");
  CHECK(FormatFixed(before.recall, 2) == "50.00");
  CHECK(FormatFixed(before.f1, 2) == "66.67");
  CHECK(FormatFixed(after.precision, 2) == "33.33");
  CHECK(FormatFixed(after.recall, 2) == "100.00");
  CHECK(FormatFixed(after.f1, 2) == "50.00");
  CHECK(equal.f1 == 0.0);
  CHECK(equal.support == 1);
  CHECK(equal.predicted == 0);
  CHECK(FormatFixed(r.micro_f1, 2) == "50.00");
}

TEST_CASE("evaluation: coverage and labels") {
  std::vector<LabeledPair> gold = {Pair("1", L::kBefore), Pair("2", L::kAfter),
                                   Pair("3", L::kVague)};
  CHECK(ErrorCode([&] { Evaluate(gold, {Pair("1", L::kBefore)}); }) == "E_COVERAGE");
  CHECK(ErrorCode([&] {
          Evaluate(gold, {Pair("1", L::kBefore), Pair("2", L::kAfter), Pair("2", L::kAfter)});
        }) == "E_COVERAGE");
  CHECK(ErrorCode([&] {
          Evaluate(gold, {Pair("1", L::kBefore), Pair("2", L::kAfter), Pair("3", L::kAfter)});
        }) == "E_COVERAGE");
  CHECK(ErrorCode([&] { Evaluate(gold, {Pair("1", L::kBefore), Pair("2", L::kVague)}); }) ==
        "E_LABEL");
  CHECK(ErrorCode([&] { Evaluate({gold[0], gold[0]}, {gold[0]}); }) == "E_COVERAGE");
}

TEST_CASE("evaluation: micro F1 equals accuracy on scored pairs") {
  synth::Rng rng(4);
  for (int round = 0; round < 500; ++round) {
    std::vector<LabeledPair> gold, pred;
    int correct = 0, scored = 0;
    const int n = rng.Int(1, 30);
    for (int i = 0; i < n; ++i) {
      L g = kAllLabels[rng.Int(0, 3)];
      gold.push_back(Pair(std::to_string(i), g));
      if (g == L::kVague) continue;
      L p = kAllLabels[rng.Int(0, 2)];
      pred.push_back(Pair(std::to_string(i), p));
      ++scored;
      correct += p == g;
    }
    if (scored == 0) continue;
    EvalReport r = Evaluate(gold, pred);
    REQUIRE(r.micro_f1 == doctest::Approx(100.0 * correct / scored));
  }
}

TEST_CASE("corpus statistics on one vague pair") {
  synth::DocBuilder b("d", "2021-02-15");
  int s0 = b.Sentence("They met.");
  b.Sentence("Filler.");
  int s2 = b.Sentence("They left.");
  b.Add("x", "e1", s0, "met").anchor_option = synth::Option(AnchorKind::kUnknown);
  b.Add("x", "e2", s2, "left");
  const AnnotatedDocument &doc = b.doc();
  CorpusStats st = ComputeCorpusStats({{&doc, GenerateRelations(doc, "x")}});
  CHECK(st.possible_pairs == 1);
  CHECK(st.documents == 1);
  CHECK(st.label_distribution[L::kVague] == 100.0);
  CHECK(st.label_distribution[L::kBefore] == 0.0);
  CHECK(st.non_vague_pairs == 0);
  CHECK(st.non_verb_involved_percentage == 0.0);
  CHECK(st.window_histogram == std::map<int, int64_t>{{2, 1}});
  CHECK(st.average_window == 2.0);
}

TEST_CASE("corpus statistics are consistent") {
  synth::Rng rng(31);
  std::vector<AnnotatedDocument> docs;
  for (int i = 0; i < 30; ++i) docs.push_back(synth::SynthesizeDocument(rng, "d" + std::to_string(i), "x"));
  std::vector<DocumentRelations> rels;
  int64_t pairs = 0;
  for (const AnnotatedDocument &d : docs) {
    rels.push_back({&d, GenerateRelations(d, "x")});
    int64_t n = static_cast<int64_t>(MainEvents(d.layer("x")).size());
    pairs += n * (n - 1) / 2;
  }
  CorpusStats st = ComputeCorpusStats(rels);
  CHECK(st.possible_pairs == pairs);
  double total = 0;
  int64_t counted = 0;
  for (L l : kAllLabels) {
    total += st.label_distribution[l];
    counted += st.label_counts[l];
  }
  CHECK(total == doctest::Approx(100.0));
  CHECK(counted == pairs);
  int64_t hist = 0;
  for (const auto &[w, c] : st.window_histogram) hist += c;
  CHECK(hist == pairs);
  CHECK(st.non_vague_pairs == pairs - st.label_counts[L::kVague]);
}

TEST_CASE("half-up rounding") {
  CHECK(FormatFixed(0.125, 2) == "0.13");
  CHECK(FormatFixed(2.675, 2) == "2.68");
  CHECK(FormatFixed(66.665, 2) == "66.67");
  CHECK(FormatFixed(0.88825, 4) == "0.8883");
  CHECK(FormatFixed(-1.5, 0) == "-2");
  CHECK(FormatFixed(100.0 * 2 / 3, 2) == "66.67");
  CHECK(FormatFixed(0.0, 2) == "0.00");
  CHECK(RoundHalfUp(93.8842, 2) == doctest::Approx(93.88));
}
