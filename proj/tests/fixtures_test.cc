#include <cstdlib>
#include <map>

#include "doctest.h"
#include "test_util.h"
#include "timeline/corpus.h"
#include "timeline/dataset.h"
#include "timeline/relgen.h"
#include "timeline/validate.h"

using namespace timeline;
using testing::Fixture;
namespace fs = std::filesystem;

namespace {

std::map<std::string, std::string> Tree(const fs::path &root) {
  std::map<std::string, std::string> files;
  for (const auto &entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) {
      files[fs::relative(entry.path(), root).generic_string()] = ReadFile(entry.path());
    }
  }
  return files;
}

}  // namespace

TEST_CASE("committed fixtures match the generator") {
  testing::TempDir tmp;
  std::string cmd = std::string("\"") + MAKE_FIXTURES + "\" \"" + tmp.path().string() +
                    "\" > /dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  for (const char *name : {"mini", "dual", "synthetic48"}) {
    CAPTURE(name);
    CHECK(Tree(tmp.path() / name) == Tree(Fixture(name)));
  }
}

TEST_CASE("fixtures are clean") {
  for (const char *name : {"mini", "dual", "synthetic48"}) {
    CAPTURE(name);
    Corpus c = LoadCorpus(Fixture(name));
    for (const AnnotatedDocument &doc : c.documents) {
      CAPTURE(doc.doc_id);
      ValidationReport r = ValidateDocument(doc);
      CHECK(r.errors.empty());
      CHECK(r.warnings.empty());
      CHECK(LintEvents(doc).warnings.empty());
      for (const auto &[layer, events] : doc.layers) {
        CHECK(GenerateRelations(doc, layer).conflicts.empty());
      }
    }
  }
}

TEST_CASE("mini corpus exercises every rule that fires on real text") {
  Corpus c = LoadCorpus(Fixture("mini"));
  std::map<Provenance, int> seen;
  for (const DocumentRelations &d : GenerateCorpus(c)) {
    for (const TemporalRelation &r : d.relations.relations) ++seen[r.provenance];
  }
  for (Provenance p : {Provenance::kEqCoref, Provenance::kEqSimul, Provenance::kAnchorOrder,
                       Provenance::kSameDayQ3, Provenance::kUnknownQ4,
                       Provenance::kGuardDctQ6, Provenance::kGuardFutureQ7,
                       Provenance::kDefaultVague, Provenance::kCorefPropagated}) {
    CAPTURE(ToString(p));
    CHECK(seen[p] > 0);
  }
}
