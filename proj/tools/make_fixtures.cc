// Regenerates the fixture corpora under fixtures/.
//
//   make_fixtures [OUT_DIR]
//
// mini         two hand-written news items, one annotator, no conflicts
// dual         two annotators whose agreement matrix is the reference
//              before/after/equal/vague contingency table
// synthetic48  48 generated documents used for split and export tests

#include <filesystem>
#include <iostream>
#include <map>

#include "synth.h"
#include "timeline/corpus.h"
#include "timeline/error.h"
#include "timeline/relgen.h"

namespace fs = std::filesystem;
using namespace timeline;
using synth::DocBuilder;
using synth::Link;
using synth::Option;

namespace {

Corpus MakeCorpus(std::string name, std::vector<AnnotatedDocument> docs) {
  Corpus c;
  c.manifest.name = std::move(name);
  for (const AnnotatedDocument &d : docs) c.manifest.documents.push_back(DocumentPath(d.doc_id));
  c.documents = std::move(docs);
  return c;
}

AnnotatedDocument FloodDocument() {
  DocBuilder b("mini-flood", "2020-03-10", "Flooding shuts Zürich bridge");
  const std::string L = "ann1";
  int s0 = b.Sentence("Flooding closed the main bridge in Zürich on Monday, officials said.");
  int s1 = b.Sentence("The bridge will reopen next week after repairs, the city announced.");
  int s2 = b.Sentence("The bridge was built in 1932, according to city records.");
  int s3 = b.Sentence(
      "Residents first reported cracks last year and had hoped the council would act.");
  int s4 = b.Sentence("Engineers inspected the supports before crews sealed the road.");

  Event *e = &b.Add(L, "e1", s0, "Flooding");
  e->word_class = WordClass::kNonVerb;
  e->anchor_option = Option(AnchorKind::kExplicit, "on Monday");
  e->anchor = GranularDate::Exact(2020, 3, 9);
  e->answers.q3 = Link("e2", Direction::kBefore);

  e = &b.Add(L, "e2", s0, "closed");
  e->anchor_option = Option(AnchorKind::kExplicit, "on Monday");
  e->anchor = GranularDate::Exact(2020, 3, 9);
  e->answers.q3 = Link("e3", Direction::kBefore);

  e = &b.Add(L, "e3", s0, "said");
  e->answers.q6 = true;

  e = &b.Add(L, "e4", s1, "reopen");
  e->anchor_option = Option(AnchorKind::kFuture, "next week");
  e->anchor = GranularDate::Exact(2020, 3, 16);
  e->answers.q7 = true;

  e = &b.Add(L, "e5", s1, "repairs");
  e->word_class = WordClass::kNonVerb;
  e->anchor_option = Option(AnchorKind::kFuture);
  e->answers.q7 = true;

  e = &b.Add(L, "e6", s1, "announced");
  e->anchor = GranularDate::Exact(2020, 3, 9);
  e->answers.q6 = true;

  e = &b.Add(L, "e7", s2, "built");
  e->anchor_option = Option(AnchorKind::kExternal, "city records");
  e->anchor = GranularDate::Exact(1932, 5, 14);

  e = &b.Add(L, "e8", s3, "reported");
  e->anchor_option = Option(AnchorKind::kImplicit, "last year");
  e->anchor = GranularDate::Year(2019);

  e = &b.Add(L, "e9", s3, "act");
  e->axis = Axis::kOther;
  e->anchor_option = Option(AnchorKind::kUnknown);

  e = &b.Add(L, "e10", s4, "inspected");
  e->anchor_option = Option(AnchorKind::kUnknown);
  e->answers.q4 = Link("e11", Direction::kBefore);

  e = &b.Add(L, "e11", s4, "sealed");
  e->answers.q6 = true;

  b.doc().retrieval_query = "bridge closure flooding";
  return b.doc();
}

AnnotatedDocument ElectionDocument() {
  DocBuilder b("mini-election", "2021-11-30", "City elects new mayor");
  const std::string L = "ann1";
  int s0 = b.Sentence("Voters elected a new mayor on Sunday.");
  int s1 = b.Sentence("The election drew record turnout, and officials certified the results.");
  int s2 = b.Sentence("The new mayor will take office in January.");
  int s3 = b.Sentence("The mayor previously served two terms on the council.");

  Event *e = &b.Add(L, "e1", s0, "elected");
  e->anchor_option = Option(AnchorKind::kExplicit, "on Sunday");
  e->anchor = GranularDate::Exact(2021, 11, 28);
  e->answers.q1 = Link("e2");

  e = &b.Add(L, "e2", s1, "election");
  e->word_class = WordClass::kNonVerb;
  e->anchor_option = Option(AnchorKind::kExplicit, "on Sunday");
  e->anchor = GranularDate::Exact(2021, 11, 28);
  e->answers.q2 = Link("e3");

  e = &b.Add(L, "e3", s1, "drew");
  e->anchor_option = Option(AnchorKind::kExplicit, "on Sunday");
  e->anchor = GranularDate::Exact(2021, 11, 28);
  e->answers.q6 = true;

  e = &b.Add(L, "e4", s1, "certified");
  e->answers.q6 = true;

  e = &b.Add(L, "e5", s2, "take");
  e->anchor_option = Option(AnchorKind::kFuture, "in January");
  e->anchor = GranularDate::Month(2022, 1);
  e->answers.q7 = true;

  e = &b.Add(L, "e6", s3, "served");
  e->anchor_option = Option(AnchorKind::kUnknown);

  b.doc().retrieval_query = "mayor election results";
  return b.doc();
}

// --- replica of the two-annotator contingency table -----------------------

const std::vector<std::string> kVerbs = {
    "announced", "reported", "closed",  "opened",   "signed",   "arrested",
    "attacked",  "visited",  "approved", "rejected", "launched", "released"};

// Sizes n >= 2 whose pair counts n(n-1)/2 add up to `count`, at most three.
std::vector<int> PairSizes(int count) {
  auto pairs = [](int n) { return n * (n - 1) / 2; };
  if (count == 0) return {};
  for (int a = 2; pairs(a) <= count; ++a) {
    if (pairs(a) == count) return {a};
  }
  for (int a = 2; pairs(a) <= count; ++a) {
    for (int b = a; pairs(a) + pairs(b) <= count; ++b) {
      if (pairs(a) + pairs(b) == count) return {b, a};
    }
  }
  for (int a = 2; pairs(a) <= count; ++a) {
    for (int b = a; pairs(a) + pairs(b) <= count; ++b) {
      for (int c = b; pairs(a) + pairs(b) + pairs(c) <= count; ++c) {
        if (pairs(a) + pairs(b) + pairs(c) == count) return {c, b, a};
      }
    }
  }
  throw std::logic_error("no decomposition for " + std::to_string(count));
}

// Gives every pair of the layer's events the same label.
void Annotate(Layer &events, RelationLabel label, const GranularDate &dct) {
  const int n = static_cast<int>(events.size());
  for (int k = 0; k < n; ++k) {
    Event &e = events[static_cast<size_t>(k)];
    switch (label) {
      case RelationLabel::kBefore:
      case RelationLabel::kAfter: {
        int offset = label == RelationLabel::kBefore ? k - n : -1 - k;
        GranularDate d = dct.AddDays(offset);
        e.anchor_option = Option(AnchorKind::kExplicit, "on " + d.ToString());
        e.anchor = d;
        break;
      }
      case RelationLabel::kEqual:
        e.anchor_option = Option(AnchorKind::kNcPast);
        if (k + 1 < n) e.answers.q1 = Link(events[static_cast<size_t>(k) + 1].id);
        break;
      case RelationLabel::kVague:
        e.anchor_option = Option(AnchorKind::kUnknown);
        break;
    }
  }
}

AnnotatedDocument CellDocument(const std::string &doc_id, int n, RelationLabel a,
                               RelationLabel b, bool extra_event) {
  const GranularDate dct = GranularDate::Exact(2019, 6, 12);
  DocBuilder builder(doc_id, dct.ToString(), "Replica document " + doc_id);
  for (int k = 0; k < n; k += 2) {
    const std::string &v1 = kVerbs[static_cast<size_t>(k / 2) % kVerbs.size()];
    const std::string &v2 = kVerbs[static_cast<size_t>(k / 2 + 5) % kVerbs.size()];
    int s = builder.Sentence("Officials " + v1 + " the plan and " + v2 + " the deal.");
    for (const std::string &layer : {"ann1", "ann2"}) {
      builder.Add(layer, "e" + std::to_string(k + 1), s, v1);
      if (k + 1 < n) builder.Add(layer, "e" + std::to_string(k + 2), s, v2);
    }
  }
  Annotate(builder.doc().layers["ann1"], a, dct);
  Annotate(builder.doc().layers["ann2"], b, dct);
  if (extra_event) {
    int s = builder.Sentence("Separately, the agency reported an outage.");
    Event &e = builder.Add("ann1", "e" + std::to_string(n + 1), s, "reported");
    e.anchor_option = Option(AnchorKind::kUnknown);
  }
  return builder.doc();
}

std::vector<AnnotatedDocument> DualDocuments() {
  // Rows: first annotator; columns: second annotator.
  static const int kTable[4][4] = {{397, 11, 0, 26},
                                   {8, 336, 1, 28},
                                   {2, 0, 10, 2},
                                   {36, 17, 0, 1268}};
  std::vector<AnnotatedDocument> docs;
  bool extra = true;
  for (RelationLabel a : kAllLabels) {
    for (RelationLabel b : kAllLabels) {
      std::vector<int> sizes = PairSizes(kTable[static_cast<int>(a)][static_cast<int>(b)]);
      for (size_t i = 0; i < sizes.size(); ++i) {
        std::string id = "t5-" + std::string(ToString(a)) + "-" +
                         std::string(ToString(b)) + "-" + std::to_string(i + 1);
        bool with_extra = extra && a == RelationLabel::kVague && b == RelationLabel::kVague;
        docs.push_back(CellDocument(id, sizes[i], a, b, with_extra));
        if (with_extra) extra = false;
      }
    }
  }
  return docs;
}

std::vector<AnnotatedDocument> SyntheticDocuments() {
  synth::Rng rng(48);
  std::vector<AnnotatedDocument> docs;
  for (int i = 1; i <= 48; ++i) {
    std::string id = std::string("syn-") + (i < 10 ? "0" : "") + std::to_string(i);
    docs.push_back(synth::SynthesizeDocument(rng, id, "ann1"));
  }
  return docs;
}

void Write(const fs::path &dir, Corpus corpus) {
  fs::remove_all(dir);
  SaveCorpus(corpus, dir);
  std::cout << dir.string() << ": " << corpus.documents.size() << " documents\n";
}

}  // namespace

int main(int argc, char **argv) {
  fs::path out = argc > 1 ? fs::path(argv[1]) : fs::path("fixtures");
  try {
    Write(out / "mini", MakeCorpus("mini", {FloodDocument(), ElectionDocument()}));
    Write(out / "dual", MakeCorpus("dual", DualDocuments()));
    Write(out / "synthetic48", MakeCorpus("synthetic48", SyntheticDocuments()));
  } catch (const std::exception &e) {
    std::cerr << "make_fixtures: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
