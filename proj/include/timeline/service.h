#ifndef TIMELINE_SERVICE_H_
#define TIMELINE_SERVICE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "timeline/corpus.h"

namespace httplib {
class Server;
}

namespace timeline {

// HTTP facade over a corpus directory for the annotation UI.
//
//   GET  /api/documents                          ["doc_id", ...]
//   GET  /api/documents/{id}                     {"document":..., "version":n}
//   PUT  /api/documents/{id}                     body {"document":..., "version":n}
//   POST /api/documents/{id}/relations:generate  RelationSet (?layer=)
//   GET  /api/documents/{id}/conflicts           [ConflictRecord] (?layer=)
//   GET  /api/corpus/stats                       CorpusStats
//   GET  /api/iaa?layerA=&layerB=                AgreementReport
//   GET  /api/anchors:resolve?option=&date=&dct= "YYYY-MM-DD"
//
// Errors: 400 malformed request, 404 unknown document, 409 stale version,
// 422 schema or validation failure. Writes are optimistic: a PUT must carry
// the version it read, and succeeds only if nobody wrote in between.
class Service {
 public:
  // Loads the corpus; throws what LoadCorpus throws.
  explicit Service(std::filesystem::path corpus_dir,
                   std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~Service();

  Service(const Service &) = delete;
  Service &operator=(const Service &) = delete;

  // Registers all routes (and the static mount) on `server`.
  void Bind(httplib::Server &server);

  // Serves until Stop(). Returns false if the port could not be bound.
  bool Listen(const std::string &host, int port);
  // Binds an ephemeral port and returns it, or -1.
  int BindAnyPort(const std::string &host);
  bool ListenAfterBind();
  void Stop();

 private:
  struct Entry {
    std::string file;  // relative to the corpus root
    std::mutex mu;
    AnnotatedDocument doc;
    uint64_t version = 1;
  };

  struct Snapshot {
    AnnotatedDocument doc;
    uint64_t version;
  };

  Entry *Find(const std::string &doc_id);
  Snapshot Read(Entry &entry);
  std::vector<AnnotatedDocument> ReadAll();

  std::filesystem::path root_;
  std::optional<std::filesystem::path> static_dir_;
  std::vector<std::string> order_;  // manifest order
  std::map<std::string, std::unique_ptr<Entry>> entries_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace timeline

#endif  // TIMELINE_SERVICE_H_
