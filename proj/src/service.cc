#include "timeline/service.h"

#include "httplib.h"
#include "timeline/anchors.h"
#include "timeline/dataset.h"
#include "timeline/error.h"
#include "timeline/json_io.h"
#include "timeline/metrics.h"
#include "timeline/relgen.h"
#include "timeline/validate.h"

namespace timeline {

namespace {

constexpr const char *kJson = "application/json";

void Reply(httplib::Response &res, int status, const Json &body) {
  res.status = status;
  res.set_content(Dump(body), kJson);
}

void ReplyError(httplib::Response &res, int status, const std::string &code,
                const std::string &message) {
  Reply(res, status, {{"error", {{"code", code}, {"message", message}}}});
}

void ReplySchemaError(httplib::Response &res, const SchemaError &e) {
  Reply(res, 422,
        {{"error",
          {{"code", e.code()}, {"pointer", e.pointer()}, {"message", e.message()}}}});
}

// 422 with the validation report when the document is not admissible.
bool RejectInvalid(httplib::Response &res, const AnnotatedDocument &doc) {
  ValidationReport report = ValidateDocument(doc);
  if (report.admissible()) return false;
  Reply(res, 422, ToJson(report));
  return true;
}

std::string LayerParam(const httplib::Request &req, const AnnotatedDocument &doc) {
  if (req.has_param("layer")) return req.get_param_value("layer");
  return doc.layers.empty() ? std::string() : doc.primary_layer();
}

}  // namespace

Service::Service(std::filesystem::path corpus_dir,
                 std::optional<std::filesystem::path> static_dir)
    : root_(std::move(corpus_dir)), static_dir_(std::move(static_dir)) {
  Corpus corpus = LoadCorpus(root_);
  for (size_t i = 0; i < corpus.documents.size(); ++i) {
    auto entry = std::make_unique<Entry>();
    entry->file = corpus.manifest.documents[i];
    entry->doc = std::move(corpus.documents[i]);
    order_.push_back(entry->doc.doc_id);
    entries_.emplace(order_.back(), std::move(entry));
  }
}

Service::~Service() { Stop(); }

Service::Entry *Service::Find(const std::string &doc_id) {
  auto it = entries_.find(doc_id);
  return it == entries_.end() ? nullptr : it->second.get();
}

Service::Snapshot Service::Read(Entry &entry) {
  std::lock_guard<std::mutex> lock(entry.mu);
  return {entry.doc, entry.version};
}

std::vector<AnnotatedDocument> Service::ReadAll() {
  std::vector<AnnotatedDocument> docs;
  for (const std::string &id : order_) docs.push_back(Read(*entries_.at(id)).doc);
  return docs;
}

void Service::Bind(httplib::Server &server) {
  if (static_dir_) server.set_mount_point("/", static_dir_->string());

  server.Get("/api/documents", [this](const httplib::Request &,
                                      httplib::Response &res) {
    Reply(res, 200, Json(order_));
  });

  server.Get(R"(/api/documents/([^/]+))", [this](const httplib::Request &req,
                                                 httplib::Response &res) {
    Entry *entry = Find(req.matches[1]);
    if (!entry) return ReplyError(res, 404, "E_NOT_FOUND", "unknown document");
    Snapshot snap = Read(*entry);
    Reply(res, 200, {{"document", ToJson(snap.doc)}, {"version", snap.version}});
  });

  server.Put(R"(/api/documents/([^/]+))", [this](const httplib::Request &req,
                                                 httplib::Response &res) {
    std::string id = req.matches[1];
    Entry *entry = Find(id);
    if (!entry) return ReplyError(res, 404, "E_NOT_FOUND", "unknown document");
    Json body;
    try {
      body = Json::parse(req.body);
    } catch (const Json::parse_error &e) {
      return ReplyError(res, 400, "E_BAD_REQUEST", e.what());
    }
    if (!body.is_object() || !body.contains("version") ||
        !body["version"].is_number_unsigned() || !body.contains("document")) {
      return ReplyError(res, 400, "E_BAD_REQUEST",
                        "expected {\"version\": n, \"document\": {...}}");
    }
    uint64_t version = body["version"].get<uint64_t>();
    AnnotatedDocument doc;
    try {
      doc = DocumentFromJson(body["document"], id);
    } catch (const SchemaError &e) {
      return ReplySchemaError(res, e);
    }
    if (doc.doc_id != id) {
      return ReplyError(res, 422, "E_DOC_ID",
                        "document id '" + doc.doc_id + "' does not match path");
    }

    std::lock_guard<std::mutex> lock(entry->mu);
    if (version != entry->version) {
      return ReplyError(res, 409, "E_STALE_VERSION",
                        "version " + std::to_string(version) + " is stale; current is " +
                            std::to_string(entry->version));
    }
    if (RejectInvalid(res, doc)) return;
    try {
      WriteFile(root_ / entry->file, SerializeDocument(doc));
    } catch (const Error &e) {
      return ReplyError(res, 500, e.code(), e.detail());
    }
    entry->doc = std::move(doc);
    ++entry->version;
    Reply(res, 200, {{"document", ToJson(entry->doc)}, {"version", entry->version}});
  });

  server.Post(R"(/api/documents/([^/]+)/relations:generate)",
              [this](const httplib::Request &req, httplib::Response &res) {
                Entry *entry = Find(req.matches[1]);
                if (!entry) return ReplyError(res, 404, "E_NOT_FOUND", "unknown document");
                Snapshot snap = Read(*entry);
                if (RejectInvalid(res, snap.doc)) return;
                std::string layer = LayerParam(req, snap.doc);
                if (!snap.doc.layers.contains(layer)) {
                  return ReplyError(res, 404, "E_LAYER", "unknown layer '" + layer + "'");
                }
                res.status = 200;
                res.set_content(Dump(ToJson(GenerateRelations(snap.doc, layer))), kJson);
              });

  server.Get(R"(/api/documents/([^/]+)/conflicts)",
             [this](const httplib::Request &req, httplib::Response &res) {
               Entry *entry = Find(req.matches[1]);
               if (!entry) return ReplyError(res, 404, "E_NOT_FOUND", "unknown document");
               Snapshot snap = Read(*entry);
               if (RejectInvalid(res, snap.doc)) return;
               std::string layer = LayerParam(req, snap.doc);
               if (!snap.doc.layers.contains(layer)) {
                 return ReplyError(res, 404, "E_LAYER", "unknown layer '" + layer + "'");
               }
               Json out = Json::array();
               for (const ConflictRecord &c :
                    GenerateRelations(snap.doc, layer).conflicts) {
                 out.push_back(ToJson(c));
               }
               Reply(res, 200, out);
             });

  server.Get("/api/corpus/stats", [this](const httplib::Request &,
                                         httplib::Response &res) {
    Corpus corpus;
    corpus.documents = ReadAll();
    for (const AnnotatedDocument &d : corpus.documents) {
      if (RejectInvalid(res, d)) return;
    }
    Reply(res, 200, ToJson(ComputeCorpusStats(GenerateCorpus(corpus))));
  });

  server.Get("/api/iaa", [this](const httplib::Request &req, httplib::Response &res) {
    if (!req.has_param("layerA") || !req.has_param("layerB")) {
      return ReplyError(res, 400, "E_BAD_REQUEST", "layerA and layerB are required");
    }
    std::string la = req.get_param_value("layerA");
    std::string lb = req.get_param_value("layerB");
    std::vector<AnnotatedDocument> docs = ReadAll();
    std::vector<LayerRelations> a, b;
    for (const AnnotatedDocument &d : docs) {
      if (!d.layers.contains(la) || !d.layers.contains(lb)) continue;
      if (RejectInvalid(res, d)) return;
      a.push_back({&d, la, GenerateRelations(d, la)});
      b.push_back({&d, lb, GenerateRelations(d, lb)});
    }
    try {
      Reply(res, 200, ToJson(RelationIaa(a, b)));
    } catch (const Error &e) {
      ReplyError(res, 422, e.code(), e.detail());
    }
  });

  server.Get("/api/anchors:resolve", [](const httplib::Request &req,
                                        httplib::Response &res) {
    if (!req.has_param("option") || !req.has_param("dct")) {
      return ReplyError(res, 400, "E_BAD_REQUEST", "option and dct are required");
    }
    std::string opt = req.get_param_value("option");
    if (opt.size() != 1 || opt[0] < '1' || opt[0] > '6') {
      return ReplyError(res, 400, "E_BAD_REQUEST", "option must be 1-6");
    }
    auto dct = GranularDate::TryParse(req.get_param_value("dct"));
    if (!dct) return ReplyError(res, 400, "E_BAD_REQUEST", "malformed dct");
    std::optional<GranularDate> date;
    if (req.has_param("date") && !req.get_param_value("date").empty()) {
      date = GranularDate::TryParse(req.get_param_value("date"));
      if (!date) return ReplyError(res, 400, "E_BAD_REQUEST", "malformed date");
    }
    try {
      GranularDate resolved =
          ResolveAnchor(static_cast<AnchorKind>(opt[0] - '0'), date, *dct);
      Reply(res, 200, Json(resolved.ToString()));
    } catch (const Error &e) {
      ReplyError(res, 422, e.code(), e.detail());
    }
  });

  server.set_exception_handler([](const httplib::Request &, httplib::Response &res,
                                  std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const Error &e) {
      ReplyError(res, 422, e.code(), e.detail());
    } catch (const std::exception &e) {
      ReplyError(res, 500, "E_INTERNAL", e.what());
    }
  });
}

bool Service::Listen(const std::string &host, int port) {
  server_ = std::make_unique<httplib::Server>();
  Bind(*server_);
  return server_->listen(host, port);
}

int Service::BindAnyPort(const std::string &host) {
  server_ = std::make_unique<httplib::Server>();
  Bind(*server_);
  return server_->bind_to_any_port(host);
}

bool Service::ListenAfterBind() { return server_ && server_->listen_after_bind(); }

void Service::Stop() {
  if (server_) server_->stop();
}

}  // namespace timeline
