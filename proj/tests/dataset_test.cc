#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "synth.h"
#include "test_util.h"
#include "timeline/dataset.h"
#include "timeline/error.h"
#include "timeline/json_io.h"

using namespace timeline;
using testing::Fixture;
using testing::SourceDir;

namespace {

std::string Code(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  return "";
}

std::string Golden(const std::string &name) {
  return ReadFile(SourceDir() / "tests/golden" / name);
}

int64_t NonVague(const DocumentRelations &d) {
  return std::count_if(d.relations.relations.begin(), d.relations.relations.end(),
                       [](const TemporalRelation &r) { return r.label != RelationLabel::kVague; });
}

struct Loaded {
  Corpus corpus;
  std::vector<DocumentRelations> rels;
};

Loaded Synthetic48() {
  Loaded l{LoadCorpus(Fixture("synthetic48")), {}};
  l.rels = GenerateCorpus(l.corpus);
  return l;
}

}  // namespace

TEST_CASE("split of the synthetic corpus is pinned") {
  Loaded l = Synthetic48();
  CorpusManifest m = SplitCorpus(l.corpus.manifest, l.rels, {}, 13);
  CHECK(Dump(ToJson(m)) == Golden("synthetic48-split13.json"));
  CHECK(m.seed == 13u);
  CHECK(m.documents == l.corpus.manifest.documents);
  CHECK(m.splits.size() == 48);
}

TEST_CASE("split shares stay within one document of the targets") {
  Loaded l = Synthetic48();
  int64_t total = 0, largest = 0;
  for (const DocumentRelations &d : l.rels) {
    total += NonVague(d);
    largest = std::max(largest, NonVague(d));
  }
  for (uint64_t seed : {0ull, 1ull, 13ull, 99ull, 123456789ull}) {
    for (SplitRatios r : {SplitRatios{}, SplitRatios{0.5, 0.25, 0.25}, SplitRatios{0.8, 0, 0.2}}) {
      CorpusManifest m = SplitCorpus(l.corpus.manifest, l.rels, r, seed);
      std::map<Split, int64_t> got;
      for (const DocumentRelations &d : l.rels) got[m.splits.at(d.doc->doc_id)] += NonVague(d);
      const double target[3] = {r.train, r.dev, r.test};
      for (Split s : {Split::kTrain, Split::kDev, Split::kTest}) {
        double want = target[static_cast<int>(s)] * static_cast<double>(total);
        CAPTURE(seed);
        CAPTURE(ToString(s));
        CHECK(std::fabs(static_cast<double>(got[s]) - want) <= static_cast<double>(largest));
        if (target[static_cast<int>(s)] == 0) CHECK(got[s] == 0);
      }
    }
  }
}

TEST_CASE("split edge cases") {
  Loaded l = Synthetic48();
  CorpusManifest all = SplitCorpus(l.corpus.manifest, l.rels, {1, 0, 0}, 5);
  for (const auto &[doc, split] : all.splits) CHECK(split == Split::kTrain);
  CHECK(SplitCorpus(l.corpus.manifest, l.rels, {}, 42) ==
        SplitCorpus(l.corpus.manifest, l.rels, {}, 42));
  CHECK(SplitCorpus(l.corpus.manifest, l.rels, {}, 42) !=
        SplitCorpus(l.corpus.manifest, l.rels, {}, 43));

  // Input order does not matter.
  std::vector<DocumentRelations> reversed(l.rels.rbegin(), l.rels.rend());
  CHECK(SplitCorpus(l.corpus.manifest, reversed, {}, 7) ==
        SplitCorpus(l.corpus.manifest, l.rels, {}, 7));

  for (SplitRatios bad : {SplitRatios{0.8, 0.3, 0.2}, SplitRatios{1.1, -0.1, 0},
                          SplitRatios{0.7, 0.1, 0.1}, SplitRatios{NAN, 0.5, 0.5}}) {
    CHECK(Code([&] { SplitCorpus(l.corpus.manifest, l.rels, bad, 1); }) == "E_RATIO");
  }
}

TEST_CASE("export keeps or drops vague pairs") {
  synth::DocBuilder b("d", "2021-02-15");
  int s0 = b.Sentence("Rebels attacked the base and seized weapons.");
  int s1 = b.Sentence("Troops returned later.");
  b.Add("x", "e1", s0, "attacked").anchor = GranularDate::Parse("2021-02-14");
  b.Add("x", "e2", s0, "seized");
  b.doc().layers["x"][0].answers.q3 = synth::Link("e2", Direction::kBefore);
  Event &e3 = b.Add("x", "e3", s1, "returned");
  e3.anchor_option = synth::Option(AnchorKind::kFuture);
  Event &e4 = b.Add("x", "e4", s1, "later");
  e4.word_class = WordClass::kNonVerb;
  e4.anchor_option = synth::Option(AnchorKind::kUnknown);
  const AnnotatedDocument &doc = b.doc();
  std::vector<DocumentRelations> rels = {{&doc, GenerateRelations(doc, "x")}};
  // e1<e2 (Q3), e1<e3, e2<e3 by anchors; e4 is vague with everything.
  std::vector<PairRecord> strict = ExportPairs(rels, false);
  std::vector<PairRecord> all = ExportPairs(rels, true);
  REQUIRE(strict.size() == 3);
  CHECK(all.size() == 6);
  CHECK(strict[0].label == RelationLabel::kBefore);
  CHECK(strict[0].source_sentence == doc.sentences[0]);
  CHECK(strict[1].target == "e3");
  CHECK(strict[1].window == 1);
  CHECK(all.back().target_word_class == WordClass::kNonVerb);
  CHECK(ParsePairs(SerializePairs(all), "") == all);
}

TEST_CASE("export of the synthetic corpus is pinned") {
  Loaded l = Synthetic48();
  CHECK(SerializePairs(ExportPairs(l.rels, false)) == Golden("synthetic48-pairs.jsonl"));
}

TEST_CASE("pair file parsing") {
  std::string line =
      R"({"doc_id":"d","source":"e1","target":"e2","label":"after"})"
      "\n\n";
  std::vector<LabeledPair> p = ParseLabeledPairs(line, "f");
  REQUIRE(p.size() == 1);
  CHECK(p[0].label == RelationLabel::kAfter);
  auto pointer = [](const std::string &text) -> std::string {
    try {
      ParseLabeledPairs(text, "f");
    } catch (const SchemaError &e) {
      return e.pointer();
    }
    return "none";
  };
  CHECK(pointer(line + R"({"doc_id":"d","source":"e1","target":"e2"})") == "/3/label");
  CHECK(pointer(R"({"doc_id":"d","source":"e1","target":"e2","label":"later"})") == "/1/label");
  CHECK(pointer(R"({"doc_id":"d","source":"e1","target":"e2","label":"after","x":1})") ==
        "/1/x");
  CHECK(pointer("{oops") == "/1");
  CHECK(Code([] { ParsePairs(R"({"doc_id":"d"})", "f"); }) == "E_SCHEMA");
}

TEST_CASE("ablation partitions") {
  Loaded l = Synthetic48();
  std::vector<PairRecord> pairs = ExportPairs(l.rels, false);
  REQUIRE_FALSE(pairs.empty());
  for (AblationSpec spec : {AblationSpec{AblationCriterion::kWordClass, 0},
                            AblationSpec{AblationCriterion::kWindow, 0},
                            AblationSpec{AblationCriterion::kWindow, 4},
                            AblationSpec{AblationCriterion::kWindow, 100}}) {
    auto [a, b] = Ablate(pairs, spec);
    CHECK(a.size() + b.size() == pairs.size());
    for (const PairRecord &p : a) {
      bool in_a = spec.criterion == AblationCriterion::kWordClass
                      ? p.source_word_class == WordClass::kVerb &&
                            p.target_word_class == WordClass::kVerb
                      : p.window <= spec.threshold;
      CHECK(in_a);
    }
    for (const PairRecord &p : b) {
      bool in_b = spec.criterion == AblationCriterion::kWordClass
                      ? p.source_word_class == WordClass::kNonVerb ||
                            p.target_word_class == WordClass::kNonVerb
                      : p.window > spec.threshold;
      CHECK(in_b);
    }
    // Order inside each side follows the input.
    std::vector<PairRecord> merged;
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged),
               [&](const PairRecord &x, const PairRecord &y) {
                 auto pos = [&](const PairRecord &r) {
                   return std::find(pairs.begin(), pairs.end(), r) - pairs.begin();
                 };
                 return pos(x) < pos(y);
               });
    CHECK(merged == pairs);
  }
  auto [a100, b100] = Ablate(pairs, {AblationCriterion::kWindow, 100});
  CHECK(b100.empty());
  CHECK(Code([&] { Ablate(pairs, {AblationCriterion::kWindow, -1}); }) == "E_THRESHOLD");
}

TEST_CASE("ablation examples") {
  PairRecord verb_pair;
  verb_pair.window = 4;
  PairRecord far = verb_pair;
  far.window = 5;
  PairRecord nominal = verb_pair;
  nominal.target_word_class = WordClass::kNonVerb;
  auto [wa, wb] = Ablate({verb_pair, far, nominal}, {AblationCriterion::kWindow, 4});
  CHECK(wa == std::vector<PairRecord>{verb_pair, nominal});
  CHECK(wb == std::vector<PairRecord>{far});
  auto [ca, cb] = Ablate({verb_pair, far, nominal}, {AblationCriterion::kWordClass, 0});
  CHECK(ca == std::vector<PairRecord>{verb_pair, far});
  CHECK(cb == std::vector<PairRecord>{nominal});
}

TEST_CASE("corpus generation by layer") {
  Corpus dual = LoadCorpus(Fixture("dual"));
  CHECK(GenerateCorpus(dual, "ann2").size() == dual.documents.size());
  CHECK(GenerateCorpus(dual).front().relations.layer == "ann1");
  CHECK(GenerateCorpus(dual, "ann9").empty());
}
