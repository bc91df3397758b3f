// The documented schemas under docs/schemas describe what the tools write.

#include <regex>
#include <set>
#include <sstream>

#include "doctest.h"
#include "test_util.h"
#include "timeline/corpus.h"
#include "timeline/error.h"
#include "timeline/json_io.h"
#include "timeline/validate.h"

using namespace timeline;
using testing::Cli;
using testing::CliResult;
using testing::Fixture;
using testing::SourceDir;
using testing::TempDir;
namespace fs = std::filesystem;

namespace {

// Just the keywords the schemas use. Anything else is a test failure so the
// schemas cannot quietly outgrow the checker.
class SchemaChecker {
 public:
  explicit SchemaChecker(const std::string &name)
      : root_(ParseJson(ReadFile(SourceDir() / "docs/schemas" / name), name)) {}

  // Empty when valid, otherwise a pointer and reason for the first problem.
  std::string Check(const Json &value) const { return Walk(root_, value, ""); }

 private:
  static bool HasType(const Json &v, const std::string &t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    FAIL("unsupported type " << t);
    return false;
  }

  const Json &Resolve(const std::string &ref) const {
    REQUIRE(ref.rfind("#/", 0) == 0);
    return root_.at(Json::json_pointer(ref.substr(1)));
  }

  std::string Walk(const Json &s, const Json &v, const std::string &at) const {
    static const std::set<std::string> kKnown = {
        "$schema", "$id", "$defs", "title", "description", "type", "const", "enum",
        "required", "properties", "additionalProperties", "items", "minItems", "maxItems",
        "minimum", "maximum", "minLength", "pattern", "$ref", "oneOf"};
    for (const auto &[k, unused] : s.items()) REQUIRE_MESSAGE(kKnown.contains(k), k);

    if (s.contains("$ref")) {
      if (auto e = Walk(Resolve(s["$ref"]), v, at); !e.empty()) return e;
    }
    if (s.contains("oneOf")) {
      int matches = 0;
      std::string last;
      for (const Json &alt : s["oneOf"]) {
        std::string e = Walk(alt, v, at);
        matches += e.empty();
        if (!e.empty()) last = e;
      }
      if (matches != 1) return at + ": " + std::to_string(matches) + " alternatives match (" + last + ")";
    }
    if (s.contains("type")) {
      bool ok = false;
      if (s["type"].is_array()) {
        for (const Json &t : s["type"]) ok |= HasType(v, t);
      } else {
        ok = HasType(v, s["type"]);
      }
      if (!ok) return at + ": expected " + s["type"].dump();
    }
    if (s.contains("const") && v != s["const"]) return at + ": expected " + s["const"].dump();
    if (s.contains("enum") &&
        std::find(s["enum"].begin(), s["enum"].end(), v) == s["enum"].end()) {
      return at + ": " + v.dump() + " not in enum";
    }
    if (v.is_number()) {
      if (s.contains("minimum") && v.get<double>() < s["minimum"].get<double>()) return at + ": below minimum";
      if (s.contains("maximum") && v.get<double>() > s["maximum"].get<double>()) return at + ": above maximum";
    }
    if (v.is_string()) {
      const std::string &str = v.get_ref<const std::string &>();
      if (s.contains("minLength") && str.size() < s["minLength"].get<size_t>()) return at + ": too short";
      if (s.contains("pattern") && !std::regex_search(str, std::regex(s["pattern"].get<std::string>()))) {
        return at + ": '" + str + "' does not match pattern";
      }
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<size_t>()) return at + ": too few items";
      if (s.contains("maxItems") && v.size() > s["maxItems"].get<size_t>()) return at + ": too many items";
      if (s.contains("items")) {
        for (size_t i = 0; i < v.size(); ++i) {
          if (auto e = Walk(s["items"], v[i], at + "/" + std::to_string(i)); !e.empty()) return e;
        }
      }
    }
    if (v.is_object()) {
      if (s.contains("required")) {
        for (const Json &k : s["required"]) {
          if (!v.contains(k.get<std::string>())) return at + ": missing " + k.get<std::string>();
        }
      }
      for (const auto &[k, child] : v.items()) {
        std::string here = at + "/" + k;
        if (s.contains("properties") && s["properties"].contains(k)) {
          if (auto e = Walk(s["properties"][k], child, here); !e.empty()) return e;
        } else if (s.contains("additionalProperties")) {
          const Json &extra = s["additionalProperties"];
          if (extra.is_boolean()) {
            if (!extra.get<bool>()) return here + ": unexpected field";
          } else if (auto e = Walk(extra, child, here); !e.empty()) {
            return e;
          }
        }
      }
    }
    return "";
  }

  Json root_;
};

std::vector<Json> Lines(const std::string &text) {
  std::vector<Json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(ParseJson(line, "line"));
  }
  return out;
}

}  // namespace

TEST_CASE("fixture documents and manifests") {
  SchemaChecker doc("document.schema.json"), manifest("manifest.schema.json");
  for (const char *name : {"mini", "dual", "synthetic48"}) {
    CAPTURE(name);
    fs::path root = Fixture(name);
    CHECK(manifest.Check(ParseJson(ReadFile(root / "manifest.json"), "")) == "");
    for (const auto &entry : fs::directory_iterator(root / "documents")) {
      CAPTURE(entry.path().string());
      CHECK(doc.Check(ParseJson(ReadFile(entry.path()), "")) == "");
    }
  }
  CHECK(manifest.Check(ParseJson(ReadFile(SourceDir() / "tests/golden/synthetic48-split13.json"), "")) == "");
}

TEST_CASE("document schema rejects what the loader rejects") {
  SchemaChecker schema("document.schema.json");
  const Json good = ParseJson(ReadFile(Fixture("mini") / "documents/mini-flood.json"), "");
  REQUIRE(schema.Check(good) == "");
  const std::vector<std::pair<std::string, Json>> edits = {
      {"/dct", "2020-03"},
      {"/schema_version", 2},
      {"/colour", "red"},
      {"/layers/ann1/0/anchor_option/option", 7},
      {"/layers/ann1/0/answers/q6", "maybe"},
      {"/layers/ann1/0/answers/q3", Json{{"answer", "no"}, {"direction", "before"}}},
      {"/layers/ann1/0/answers/q2", Json{{"answer", "yes"}, {"direction", "before"}}},
      {"/layers/ann1/0/answers/q1", Json{{"answer", "no"}, {"target", "e2"}}},
      {"/layers/ann1/0/span", Json::array({1})},
      {"/layers/ann1/0/word_class", "noun"},
      {"/layers/ann1/0/anchor", "20-03-2020"},
      {"/sentences/0", 5},
  };
  for (const auto &[pointer, value] : edits) {
    CAPTURE(pointer);
    Json bad = good;
    bad[Json::json_pointer(pointer)] = value;
    CHECK(schema.Check(bad) != "");
    CHECK_THROWS_AS(DocumentFromJson(bad, "f"), SchemaError);
  }
  Json missing = good;
  missing.erase("dct");
  CHECK(schema.Check(missing) != "");
}

TEST_CASE("relation sets") {
  SchemaChecker schema("relations.schema.json");
  CliResult printed = Cli({"generate", Fixture("mini").string()});
  REQUIRE(printed.code == 0);
  CHECK(schema.Check(ParseJson(printed.out, "stdout")) == "");
  TempDir tmp;
  REQUIRE(Cli({"generate", Fixture("synthetic48").string(), "-o", tmp.path().string()}).code == 0);
  int files = 0;
  for (const auto &entry : fs::directory_iterator(tmp.path())) {
    ++files;
    CHECK(schema.Check(ParseJson(ReadFile(entry.path()), "")) == "");
  }
  CHECK(files == 48);
  // Conflicts are part of the layout too.
  RelationSet rs;
  rs.doc_id = "d";
  rs.layer = "x";
  rs.relations.push_back({"e1", "e2", 0, RelationLabel::kBefore, Provenance::kAnchorOrder});
  rs.conflicts.push_back({ConflictKind::kTransitivity, {"e1", "e2", "e3"}, "cycle"});
  CHECK(schema.Check(ToJson(rs)) == "");
}

TEST_CASE("exported pairs") {
  SchemaChecker schema("pairs.schema.json");
  std::vector<Json> golden = Lines(ReadFile(SourceDir() / "tests/golden/synthetic48-pairs.jsonl"));
  REQUIRE_FALSE(golden.empty());
  for (const Json &j : golden) CHECK(schema.Check(j) == "");
  CliResult all = Cli({"export", Fixture("mini").string(), "--include-vague"});
  REQUIRE(all.code == 0);
  for (const Json &j : Lines(all.out)) CHECK(schema.Check(j) == "");
}

TEST_CASE("machine-readable reports") {
  SchemaChecker stats("stats.schema.json"), agreement("agreement.schema.json"),
      eval("eval.schema.json");
  CHECK(stats.Check(ParseJson(ReadFile(SourceDir() / "tests/golden/synthetic48-stats.json"), "")) == "");
  CliResult s = Cli({"stats", Fixture("mini").string(), "--json"});
  CHECK(stats.Check(ParseJson(s.out, "stdout")) == "");

  CliResult iaa = Cli({"iaa", Fixture("dual").string(), "--layer-a", "ann1", "--layer-b", "ann2", "--json"});
  REQUIRE(iaa.code == 0);
  CHECK(agreement.Check(ParseJson(iaa.out, "stdout")) == "");

  TempDir tmp;
  WriteFile(tmp.path() / "gold.jsonl", Cli({"export", Fixture("mini").string(), "--include-vague"}).out);
  WriteFile(tmp.path() / "pred.jsonl", Cli({"export", Fixture("mini").string()}).out);
  CliResult e = Cli({"eval", "--gold", (tmp.path() / "gold.jsonl").string(), "--pred",
                     (tmp.path() / "pred.jsonl").string(), "--json"});
  REQUIRE(e.code == 0);
  CHECK(eval.Check(ParseJson(e.out, "stdout")) == "");
}

TEST_CASE("service error bodies") {
  SchemaChecker schema("service-errors.schema.json");
  Corpus c = LoadCorpus(Fixture("mini"));
  AnnotatedDocument doc = c.documents[1];
  doc.layers["ann1"][3].answers.q1 = QuestionLink{"e1", std::nullopt};
  ValidationReport report = ValidateDocument(doc);
  REQUIRE_FALSE(report.admissible());
  CHECK(schema.Check(ToJson(report)) == "");
  CHECK(schema.Check(Json{{"error", {{"code", "E_STALE_VERSION"}, {"message", "m"}}}}) == "");
  CHECK(schema.Check(Json{{"error", {{"code", "E_SCHEMA"}, {"pointer", "/dct"}, {"message", "m"}}}}) == "");
  CHECK(schema.Check(Json{{"error", {{"code", "oops"}, {"message", "m"}}}}) != "");
}
