#include <atomic>
#include <chrono>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "test_util.h"
#include "timeline/json_io.h"
#include "timeline/service.h"

using namespace timeline;
using testing::TempDir;
namespace fs = std::filesystem;

namespace {

// A service on an ephemeral port, running on its own thread.
class Running {
 public:
  explicit Running(const fs::path &root) : service_(root) {
    port_ = service_.BindAnyPort("127.0.0.1");
    REQUIRE(port_ > 0);
    thread_ = std::thread([this] { service_.ListenAfterBind(); });
    httplib::Client probe = Client();
    for (int i = 0; i < 200; ++i) {
      if (probe.Get("/api/documents")) return;
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    FAIL("service did not come up");
  }
  ~Running() {
    service_.Stop();
    thread_.join();
  }

  httplib::Client Client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_connection_timeout(2);
    c.set_read_timeout(10);
    return c;
  }

 private:
  Service service_;
  int port_ = -1;
  std::thread thread_;
};

Json Body(const httplib::Result &r) {
  REQUIRE(r);
  return ParseJson(r->body, "response");
}

std::string ErrorCode(const httplib::Result &r) { return Body(r)["error"]["code"]; }

std::string Put(httplib::Client &c, const std::string &id, const Json &doc, uint64_t version,
                int *status) {
  Json body = {{"document", doc}, {"version", version}};
  auto r = c.Put("/api/documents/" + id, body.dump(), "application/json");
  REQUIRE(r);
  *status = r->status;
  return r->body;
}

}  // namespace

TEST_CASE("read endpoints") {
  TempDir tmp;
  fs::path root = tmp.CopyFixture("mini");
  Running svc(root);
  httplib::Client c = svc.Client();

  CHECK(Body(c.Get("/api/documents")) == Json({"mini-flood", "mini-election"}));

  auto doc = c.Get("/api/documents/mini-election");
  REQUIRE(doc);
  CHECK(doc->status == 200);
  CHECK(doc->get_header_value("Content-Type") == "application/json");
  Json env = Body(doc);
  CHECK(env["version"] == 1);
  CHECK(Dump(env["document"]) == ReadFile(root / "documents/mini-election.json"));

  auto missing = c.Get("/api/documents/nope");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  Json stats = Body(c.Get("/api/corpus/stats"));
  CHECK(stats["documents"] == 2);

  auto conflicts = c.Get("/api/documents/mini-flood/conflicts");
  REQUIRE(conflicts);
  CHECK(conflicts->status == 200);
  CHECK(Body(conflicts) == Json::array());
}

TEST_CASE("generate matches the command line output") {
  TempDir tmp;
  fs::path root = tmp.CopyFixture("mini");
  fs::path out = tmp.path() / "out";
  REQUIRE(testing::Cli({"generate", root.string(), "-o", out.string()}).code == 0);
  Running svc(root);
  httplib::Client c = svc.Client();
  for (const char *id : {"mini-flood", "mini-election"}) {
    auto r = c.Post(std::string("/api/documents/") + id + "/relations:generate", "",
                    "application/json");
    REQUIRE(r);
    CHECK(r->status == 200);
    CHECK(r->body == ReadFile(out / (std::string(id) + ".ann1.relations.json")));
  }
  auto layer = c.Post("/api/documents/mini-flood/relations:generate?layer=ann9", "",
                      "application/json");
  REQUIRE(layer);
  CHECK(layer->status == 404);
  CHECK(ErrorCode(layer) == "E_LAYER");
}

TEST_CASE("optimistic writes") {
  TempDir tmp;
  fs::path root = tmp.CopyFixture("mini");
  fs::path file = root / "documents/mini-election.json";
  Running svc(root);
  httplib::Client c = svc.Client();
  Json doc = Body(c.Get("/api/documents/mini-election"))["document"];
  doc["title"] = "Mayor elected";

  int status = 0;
  std::string body = Put(c, "mini-election", doc, 1, &status);
  CHECK(status == 200);
  CHECK(ParseJson(body, "")["version"] == 2);
  CHECK(ParseJson(ReadFile(file), "")["title"] == "Mayor elected");

  SUBCASE("stale version leaves the file alone") {
    std::string before = ReadFile(file);
    Json other = doc;
    other["title"] = "Something else";
    Put(c, "mini-election", other, 1, &status);
    CHECK(status == 409);
    CHECK(ReadFile(file) == before);
    CHECK(Body(c.Get("/api/documents/mini-election"))["version"] == 2);
  }

  SUBCASE("invalid documents are refused") {
    std::string before = ReadFile(file);
    Json bad = doc;
    bad["layers"]["ann1"][3]["answers"]["q1"] = {{"answer", "yes"}, {"target", "e1"}};
    body = Put(c, "mini-election", bad, 2, &status);
    CHECK(status == 422);
    CHECK(ParseJson(body, "")["errors"][0]["code"] == "E_TARGET_NOT_SUBSEQUENT");
    Json schema = doc;
    schema.erase("dct");
    body = Put(c, "mini-election", schema, 2, &status);
    CHECK(status == 422);
    CHECK(ParseJson(body, "")["error"]["pointer"] == "/dct");
    Json renamed = doc;
    renamed["doc_id"] = "other";
    Put(c, "mini-election", renamed, 2, &status);
    CHECK(status == 422);
    CHECK(ReadFile(file) == before);
  }

  SUBCASE("malformed bodies") {
    auto r = c.Put("/api/documents/mini-election", "{", "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);
    r = c.Put("/api/documents/mini-election", R"({"document": {}})", "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);
    r = c.Put("/api/documents/ghost", R"({"document": {}, "version": 1})", "application/json");
    REQUIRE(r);
    CHECK(r->status == 404);
  }
}

TEST_CASE("concurrent writers: exactly one wins") {
  TempDir tmp;
  fs::path root = tmp.CopyFixture("mini");
  Running svc(root);
  httplib::Client c = svc.Client();
  Json doc = Body(c.Get("/api/documents/mini-flood"))["document"];

  constexpr int kWriters = 8;
  std::atomic<int> ok{0}, stale{0}, other{0};
  std::vector<std::thread> threads;
  for (int i = 0; i < kWriters; ++i) {
    threads.emplace_back([&, i] {
      httplib::Client mine = svc.Client();
      Json d = doc;
      d["title"] = "writer " + std::to_string(i);
      Json body = {{"document", d}, {"version", 1}};
      auto r = mine.Put("/api/documents/mini-flood", body.dump(), "application/json");
      if (r && r->status == 200) {
        ++ok;
      } else if (r && r->status == 409) {
        ++stale;
      } else {
        ++other;
      }
    });
  }
  for (std::thread &t : threads) t.join();
  CHECK(ok == 1);
  CHECK(stale == kWriters - 1);
  CHECK(other == 0);
  Json now = Body(c.Get("/api/documents/mini-flood"));
  CHECK(now["version"] == 2);
  CHECK(ParseJson(ReadFile(root / "documents/mini-flood.json"), "")["title"] ==
        now["document"]["title"]);
}

TEST_CASE("anchor resolution endpoint") {
  TempDir tmp;
  Running svc(tmp.CopyFixture("mini"));
  httplib::Client c = svc.Client();

  auto r = c.Get("/api/anchors:resolve?option=3&dct=2021-02-15");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(Body(r) == "2021-02-14");
  CHECK(Body(c.Get("/api/anchors:resolve?option=4&dct=2020-12-31")) == "2021-01-01");
  CHECK(Body(c.Get("/api/anchors:resolve?option=2&dct=2020-12-31&date=2020-08-XX")) ==
        "2020-08-XX");
  CHECK(Body(c.Get("/api/anchors:resolve?option=6&dct=2020-12-31")) == "XXXX-XX-XX");

  auto status = [&](const std::string &q) {
    auto res = c.Get("/api/anchors:resolve?" + q);
    REQUIRE(res);
    return res->status;
  };
  CHECK(status("option=1&dct=2020-12-31") == 422);
  CHECK(status("option=1&dct=2020-12-31&date=2020-08-XX") == 422);
  CHECK(status("option=7&dct=2020-12-31") == 400);
  CHECK(status("option=3") == 400);
  CHECK(status("option=3&dct=yesterday") == 400);
  CHECK(status("option=1&dct=2020-12-31&date=2020-13-01") == 400);
  CHECK(status("option=3&dct=2020-12-XX") == 422);
}

TEST_CASE("agreement endpoint") {
  TempDir tmp;
  Running svc(tmp.CopyFixture("dual"));
  httplib::Client c = svc.Client();
  Json r = Body(c.Get("/api/iaa?layerA=ann1&layerB=ann2"));
  CHECK(FormatFixed(r["kappa"].get<double>(), 4) == "0.8882");
  auto bad = c.Get("/api/iaa?layerA=ann1");
  REQUIRE(bad);
  CHECK(bad->status == 400);
}
