#include "timeline/corpus.h"

#include <fstream>
#include <set>
#include <sstream>

#include "timeline/error.h"

namespace timeline {

namespace fs = std::filesystem;

std::string_view ToString(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "?";
}

std::optional<Split> ParseSplit(std::string_view text) {
  for (Split s : {Split::kTrain, Split::kDev, Split::kTest}) {
    if (ToString(s) == text) return s;
  }
  return std::nullopt;
}

const AnnotatedDocument *Corpus::Find(std::string_view doc_id) const {
  for (const AnnotatedDocument &d : documents) {
    if (d.doc_id == doc_id) return &d;
  }
  return nullptr;
}

Json ToJson(const CorpusManifest &m) {
  Json splits = Json::object();
  for (const auto &[doc, split] : m.splits) splits[doc] = std::string(ToString(split));
  return {{"schema_version", kSchemaVersion},
          {"name", m.name},
          {"documents", m.documents},
          {"splits", splits},
          {"seed", m.seed ? Json(*m.seed) : Json(nullptr)}};
}

CorpusManifest ManifestFromJson(const Json &j, const std::string &file) {
  auto fail = [&](const std::string &ptr, const std::string &msg) {
    throw SchemaError(file, ptr, msg);
  };
  if (!j.is_object()) fail("", "expected an object");
  static const std::set<std::string> kAllowed = {"schema_version", "name",
                                                 "documents", "splits", "seed"};
  for (const auto &[key, v] : j.items()) {
    if (!kAllowed.contains(key)) fail(PointerAppend("", key), "unknown field '" + key + "'");
  }
  for (const std::string &key : kAllowed) {
    if (!j.contains(key)) {
      fail(PointerAppend("", key), "missing required field '" + key + "'");
    }
  }
  if (!j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int64_t>() != kSchemaVersion) {
    fail("/schema_version", "unsupported schema version");
  }
  CorpusManifest m;
  if (!j["name"].is_string()) fail("/name", "expected a string");
  m.name = j["name"].get<std::string>();
  const Json &docs = j["documents"];
  if (!docs.is_array()) fail("/documents", "expected an array");
  for (size_t i = 0; i < docs.size(); ++i) {
    if (!docs[i].is_string()) fail(PointerAppend("/documents", i), "expected a string");
    m.documents.push_back(docs[i].get<std::string>());
  }
  const Json &splits = j["splits"];
  if (!splits.is_object()) fail("/splits", "expected an object");
  for (const auto &[doc, v] : splits.items()) {
    std::string ptr = PointerAppend("/splits", doc);
    if (!v.is_string()) fail(ptr, "expected a split name");
    auto s = ParseSplit(v.get<std::string>());
    if (!s) fail(ptr, "invalid split '" + v.get<std::string>() + "'");
    m.splits.emplace(doc, *s);
  }
  const Json &seed = j["seed"];
  if (seed.is_number_unsigned()) {
    m.seed = seed.get<uint64_t>();
  } else if (!seed.is_null()) {
    fail("/seed", "expected a non-negative integer or null");
  }
  return m;
}

std::string SerializeDocument(const AnnotatedDocument &doc) {
  return Dump(ToJson(doc));
}

AnnotatedDocument ParseDocument(std::string_view text, const std::string &file) {
  return DocumentFromJson(ParseJson(text, file), file);
}

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("E_IO", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path &path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("E_IO", "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("E_IO", "write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw Error("E_IO", "cannot replace " + path.string() + ": " + ec.message());
}

std::string DocumentPath(std::string_view doc_id) {
  return "documents/" + std::string(doc_id) + ".json";
}

Corpus LoadCorpus(const fs::path &root) {
  if (!fs::is_directory(root)) {
    throw Error("E_IO", root.string() + " is not a corpus directory");
  }
  fs::path manifest_path = root / kManifestFile;
  Corpus corpus;
  corpus.manifest = ManifestFromJson(
      ParseJson(ReadFile(manifest_path), manifest_path.string()),
      manifest_path.string());
  std::set<std::string> ids;
  for (size_t i = 0; i < corpus.manifest.documents.size(); ++i) {
    fs::path p = root / corpus.manifest.documents[i];
    AnnotatedDocument doc = ParseDocument(ReadFile(p), p.string());
    if (!ids.insert(doc.doc_id).second) {
      throw SchemaError(manifest_path.string(), PointerAppend("/documents", i),
                        "duplicate doc_id '" + doc.doc_id + "'");
    }
    corpus.documents.push_back(std::move(doc));
  }
  for (const auto &[doc, split] : corpus.manifest.splits) {
    if (!ids.contains(doc)) {
      throw SchemaError(manifest_path.string(), PointerAppend("/splits", doc),
                        "split assigned to unknown document '" + doc + "'");
    }
  }
  return corpus;
}

void SaveCorpus(const Corpus &corpus, const fs::path &root) {
  if (corpus.manifest.documents.size() != corpus.documents.size()) {
    throw Error("E_IO", "manifest lists " +
                            std::to_string(corpus.manifest.documents.size()) +
                            " files for " + std::to_string(corpus.documents.size()) +
                            " documents");
  }
  for (size_t i = 0; i < corpus.documents.size(); ++i) {
    WriteFile(root / corpus.manifest.documents[i],
              SerializeDocument(corpus.documents[i]));
  }
  WriteFile(root / kManifestFile, Dump(ToJson(corpus.manifest)));
}

}  // namespace timeline
