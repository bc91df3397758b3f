#ifndef TIMELINE_CORPUS_H_
#define TIMELINE_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "timeline/json_io.h"
#include "timeline/model.h"

namespace timeline {

enum class Split { kTrain, kDev, kTest };

std::string_view ToString(Split split);
std::optional<Split> ParseSplit(std::string_view text);

// Contents of manifest.json at the corpus root.
struct CorpusManifest {
  std::string name;
  // Document files relative to the corpus root, in load order.
  std::vector<std::string> documents;
  std::map<std::string, Split> splits;  // doc_id -> split; empty if unsplit
  std::optional<uint64_t> seed;

  friend bool operator==(const CorpusManifest &, const CorpusManifest &) = default;
};

struct Corpus {
  CorpusManifest manifest;
  std::vector<AnnotatedDocument> documents;  // manifest order

  const AnnotatedDocument *Find(std::string_view doc_id) const;
};

inline constexpr std::string_view kManifestFile = "manifest.json";

Json ToJson(const CorpusManifest &manifest);
CorpusManifest ManifestFromJson(const Json &j, const std::string &file);

std::string SerializeDocument(const AnnotatedDocument &doc);
AnnotatedDocument ParseDocument(std::string_view text, const std::string &file);

// Reads a corpus directory (manifest.json plus one file per document).
// Throws SchemaError (E_SCHEMA) for malformed content and Error(E_IO) for
// unreadable files.
Corpus LoadCorpus(const std::filesystem::path &root);

// Writes manifest and documents in canonical form. Throws Error(E_IO).
void SaveCorpus(const Corpus &corpus, const std::filesystem::path &root);

// Whole-file helpers. Both throw Error(E_IO).
std::string ReadFile(const std::filesystem::path &path);
void WriteFile(const std::filesystem::path &path, std::string_view content);

// Relative path a new document is stored under.
std::string DocumentPath(std::string_view doc_id);

}  // namespace timeline

#endif  // TIMELINE_CORPUS_H_
