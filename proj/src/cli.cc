#include "timeline/cli.h"

#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "timeline/corpus.h"
#include "timeline/dataset.h"
#include "timeline/error.h"
#include "timeline/json_io.h"
#include "timeline/metrics.h"
#include "timeline/relgen.h"
#include "timeline/service.h"
#include "timeline/validate.h"

namespace timeline {

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

int ExitCodeFor(const Error &e) {
  static const std::set<std::string> kUsageCodes = {"E_IO", "E_RATIO", "E_THRESHOLD",
                                                    "E_LAYER", "E_USAGE"};
  return kUsageCodes.contains(e.code()) ? kUsage : kInvalid;
}

std::string Where(const Issue &issue) {
  std::string s;
  if (issue.layer) s += *issue.layer;
  if (issue.event_id) s += (s.empty() ? "" : "/") + *issue.event_id;
  return s;
}

void PrintIssues(std::ostream &os, const std::string &doc_id, const char *severity,
                 const std::vector<Issue> &issues) {
  for (const Issue &i : issues) {
    os << doc_id;
    std::string where = Where(i);
    if (!where.empty()) os << ' ' << where;
    os << ": " << severity << ' ' << i.code << ": " << i.message << '\n';
  }
}

// Refuses the corpus if any document has validation errors.
void RequireAdmissible(const Corpus &corpus, std::ostream &err) {
  bool ok = true;
  for (const AnnotatedDocument &doc : corpus.documents) {
    ValidationReport report = ValidateDocument(doc);
    if (!report.admissible()) {
      PrintIssues(err, doc.doc_id, "error", report.errors);
      ok = false;
    }
  }
  if (!ok) throw Error("E_VALIDATION", "corpus has validation errors; run `timeline validate`");
}

std::string Pct(double v) { return FormatFixed(v, 2) + "%"; }

class Commands {
 public:
  Commands(std::ostream &out, std::ostream &err) : out_(out), err_(err) {}

  int Validate(const fs::path &root) {
    Corpus corpus = LoadCorpus(root);
    size_t errors = 0, warnings = 0;
    for (const AnnotatedDocument &doc : corpus.documents) {
      ValidationReport report = ValidateDocument(doc);
      ValidationReport lint = LintEvents(doc);
      report.warnings.insert(report.warnings.end(), lint.warnings.begin(),
                             lint.warnings.end());
      SortIssues(&report.warnings);
      PrintIssues(out_, doc.doc_id, "error", report.errors);
      PrintIssues(out_, doc.doc_id, "warning", report.warnings);
      errors += report.errors.size();
      warnings += report.warnings.size();
    }
    out_ << corpus.documents.size() << " documents, " << errors << " errors, "
         << warnings << " warnings\n";
    return errors ? kInvalid : kOk;
  }

  int Generate(const fs::path &root, const std::string &layer,
               const std::optional<fs::path> &out_dir) {
    Corpus corpus = LoadCorpus(root);
    RequireAdmissible(corpus, err_);
    std::vector<RelationSet> sets;
    for (const AnnotatedDocument &doc : corpus.documents) {
      if (doc.layers.empty()) continue;
      if (!layer.empty() && !doc.layers.contains(layer)) continue;
      sets.push_back(GenerateRelations(doc, layer.empty() ? doc.primary_layer() : layer));
    }
    if (!layer.empty() && sets.empty()) {
      throw Error("E_LAYER", "no document has layer '" + layer + "'");
    }
    if (!out_dir) {
      Json all = Json::array();
      for (const RelationSet &rs : sets) all.push_back(ToJson(rs));
      out_ << Dump(all);
      return kOk;
    }
    for (const RelationSet &rs : sets) {
      fs::path file = *out_dir / (rs.doc_id + "." + rs.layer + ".relations.json");
      WriteFile(file, Dump(ToJson(rs)));
      out_ << file.string() << ": " << rs.relations.size() << " relations, "
           << rs.conflicts.size() << " conflicts\n";
    }
    return kOk;
  }

  int Check(const fs::path &root) {
    Corpus corpus = LoadCorpus(root);
    RequireAdmissible(corpus, err_);
    size_t total = 0;
    for (const AnnotatedDocument &doc : corpus.documents) {
      for (const auto &[id, events] : doc.layers) {
        RelationSet rs = GenerateRelations(doc, id);
        for (const ConflictRecord &c : rs.conflicts) {
          out_ << doc.doc_id << ' ' << id << ": " << ToString(c.kind) << " [";
          for (size_t i = 0; i < c.events.size(); ++i) {
            out_ << (i ? " " : "") << c.events[i];
          }
          out_ << "] " << c.detail << '\n';
        }
        total += rs.conflicts.size();
      }
    }
    out_ << total << " conflicts\n";
    return kOk;
  }

  int Stats(const fs::path &root, bool json) {
    Corpus corpus = LoadCorpus(root);
    RequireAdmissible(corpus, err_);
    CorpusStats s = ComputeCorpusStats(GenerateCorpus(corpus));
    if (json) {
      out_ << Dump(ToJson(s));
      return kOk;
    }
    out_ << "documents: " << s.documents << '\n'
         << "possible pairs: " << s.possible_pairs << '\n'
         << "non-vague pairs: " << s.non_vague_pairs << " ("
         << Pct(s.non_vague_percentage) << ")\n"
         << "pairs involving non-verb events: "
         << Pct(s.non_verb_involved_percentage) << " of non-vague\n"
         << "average window: " << FormatFixed(s.average_window, 2) << '\n'
         << "labels:\n";
    for (RelationLabel l : kAllLabels) {
      out_ << "  " << ToString(l) << ": " << s.label_counts.at(l) << " ("
           << Pct(s.label_distribution.at(l)) << ")\n";
    }
    out_ << "window histogram:\n";
    for (const auto &[w, n] : s.window_histogram) out_ << "  " << w << ": " << n << '\n';
    return kOk;
  }

  int Iaa(const fs::path &root, const std::string &la, const std::string &lb,
          bool json) {
    Corpus corpus = LoadCorpus(root);
    RequireAdmissible(corpus, err_);
    std::vector<LayerRelations> a, b;
    for (const AnnotatedDocument &doc : corpus.documents) {
      if (!doc.layers.contains(la) || !doc.layers.contains(lb)) continue;
      a.push_back({&doc, la, GenerateRelations(doc, la)});
      b.push_back({&doc, lb, GenerateRelations(doc, lb)});
    }
    if (a.empty()) {
      throw Error("E_LAYER", "no document has both layers '" + la + "' and '" + lb + "'");
    }
    AgreementReport r = RelationIaa(a, b);
    if (json) {
      out_ << Dump(ToJson(r));
      return kOk;
    }
    out_ << "documents: " << a.size() << '\n'
         << "event F1: " << Pct(r.event_f1) << '\n'
         << "relation micro-F1: " << Pct(r.relation_micro_f1) << '\n'
         << "kappa: " << FormatFixed(r.kappa, 4) << '\n'
         << "matrix (rows " << la << ", columns " << lb << "):\n        ";
    for (RelationLabel l : kAllLabels) out_ << ' ' << std::setw(7) << ToString(l);
    out_ << '\n';
    for (RelationLabel row : kAllLabels) {
      out_ << std::setw(8) << ToString(row);
      for (RelationLabel col : kAllLabels) {
        out_ << ' ' << std::setw(7)
             << r.matrix.counts[static_cast<int>(row)][static_cast<int>(col)];
      }
      out_ << '\n';
    }
    return kOk;
  }

  int AssignSplits(const fs::path &root, const SplitRatios &ratios, uint64_t seed) {
    Corpus corpus = LoadCorpus(root);
    RequireAdmissible(corpus, err_);
    std::vector<DocumentRelations> docs = GenerateCorpus(corpus);
    corpus.manifest = SplitCorpus(corpus.manifest, docs, ratios, seed);
    WriteFile(root / kManifestFile, Dump(ToJson(corpus.manifest)));

    std::map<Split, std::pair<int64_t, int64_t>> totals;  // documents, pairs
    int64_t all = 0;
    for (const DocumentRelations &d : docs) {
      int64_t n = 0;
      for (const TemporalRelation &r : d.relations.relations) {
        n += r.label != RelationLabel::kVague;
      }
      auto &t = totals[corpus.manifest.splits.at(d.doc->doc_id)];
      ++t.first;
      t.second += n;
      all += n;
    }
    for (Split s : {Split::kTrain, Split::kDev, Split::kTest}) {
      auto [ndocs, npairs] = totals[s];
      out_ << ToString(s) << ": " << ndocs << " documents, " << npairs
           << " non-vague pairs ("
           << Pct(all ? 100.0 * static_cast<double>(npairs) / static_cast<double>(all) : 0)
           << ")\n";
    }
    return kOk;
  }

  int Ablate(const fs::path &root, const AblationSpec &spec) {
    Corpus corpus = LoadCorpus(root);
    RequireAdmissible(corpus, err_);
    bool has_test = false;
    for (const auto &[doc, split] : corpus.manifest.splits) {
      has_test |= split == Split::kTest;
    }
    if (has_test) {
      std::vector<AnnotatedDocument> kept;
      for (AnnotatedDocument &doc : corpus.documents) {
        auto it = corpus.manifest.splits.find(doc.doc_id);
        if (it != corpus.manifest.splits.end() && it->second == Split::kTest) {
          kept.push_back(std::move(doc));
        }
      }
      corpus.documents = std::move(kept);
    }
    std::vector<PairRecord> pairs = ExportPairs(GenerateCorpus(corpus), false);
    auto [a, b] = timeline::Ablate(pairs, spec);
    std::string name_a, name_b;
    if (spec.criterion == AblationCriterion::kWordClass) {
      name_a = "A (verb-verb)";
      name_b = "B (non-verb involved)";
    } else {
      name_a = "A (window <= " + std::to_string(spec.threshold) + ")";
      name_b = "B (window > " + std::to_string(spec.threshold) + ")";
    }
    out_ << (has_test ? "test split" : "all documents") << ": " << pairs.size()
         << " non-vague pairs\n";
    for (const auto &[name, part] : {std::pair{name_a, &a}, std::pair{name_b, &b}}) {
      std::map<RelationLabel, int64_t> counts;
      for (const PairRecord &p : *part) ++counts[p.label];
      out_ << name << ": " << part->size() << " pairs (before " << counts[RelationLabel::kBefore]
           << ", after " << counts[RelationLabel::kAfter] << ", equal "
           << counts[RelationLabel::kEqual] << ")\n";
    }
    return kOk;
  }

  int Export(const fs::path &root, bool include_vague) {
    Corpus corpus = LoadCorpus(root);
    RequireAdmissible(corpus, err_);
    out_ << SerializePairs(ExportPairs(GenerateCorpus(corpus), include_vague));
    return kOk;
  }

  int Eval(const fs::path &gold_file, const fs::path &pred_file, bool json) {
    std::vector<LabeledPair> gold =
        ParseLabeledPairs(ReadFile(gold_file), gold_file.string());
    std::vector<LabeledPair> pred =
        ParseLabeledPairs(ReadFile(pred_file), pred_file.string());
    EvalReport r = Evaluate(gold, pred);
    if (json) {
      out_ << Dump(ToJson(r));
      return kOk;
    }
    out_ << "scored pairs: " << r.scored_pairs << " (" << r.discarded_vague
         << " vague gold pairs discarded)\n";
    for (const auto &[label, s] : r.per_label) {
      out_ << ToString(label) << ": P " << FormatFixed(s.precision, 2) << "  R "
           << FormatFixed(s.recall, 2) << "  F1 " << FormatFixed(s.f1, 2)
           << "  support " << s.support << '\n';
    }
    out_ << "micro-F1: " << FormatFixed(r.micro_f1, 2) << '\n';
    return kOk;
  }

  int Serve(const fs::path &data, int port, const std::optional<fs::path> &static_dir) {
    Service service(data, static_dir);
    err_ << "serving " << data.string() << " on port " << port << '\n';
    if (!service.Listen("0.0.0.0", port)) {
      throw Error("E_IO", "cannot listen on port " + std::to_string(port));
    }
    return kOk;
  }

 private:
  std::ostream &out_;
  std::ostream &err_;
};

}  // namespace

int RunCli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Temporal relation annotation toolkit", "timeline"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::string corpus;
  auto add_corpus = [&](CLI::App *cmd) {
    cmd->add_option("corpus", corpus, "Corpus directory (default: $TIMELINE_DATA)")
        ->envname("TIMELINE_DATA")
        ->required();
  };

  CLI::App *validate = app.add_subcommand("validate", "Check documents for errors");
  add_corpus(validate);

  std::string layer;
  std::string out_dir;
  CLI::App *generate = app.add_subcommand("generate", "Generate relation sets");
  add_corpus(generate);
  generate->add_option("--layer", layer, "Annotator layer (default: primary)");
  generate->add_option("-o", out_dir, "Write one file per document into DIR");

  CLI::App *check = app.add_subcommand("check", "Report relation conflicts");
  add_corpus(check);

  bool json = false;
  CLI::App *stats = app.add_subcommand("stats", "Corpus label statistics");
  add_corpus(stats);
  stats->add_flag("--json", json, "Machine-readable output");

  std::string layer_a, layer_b;
  CLI::App *iaa = app.add_subcommand("iaa", "Inter-annotator agreement");
  add_corpus(iaa);
  iaa->add_option("--layer-a", layer_a)->required();
  iaa->add_option("--layer-b", layer_b)->required();
  iaa->add_flag("--json", json, "Machine-readable output");

  SplitRatios ratios;
  uint64_t seed = 0;
  CLI::App *split = app.add_subcommand("split", "Assign train/dev/test splits");
  add_corpus(split);
  split->add_option("--train", ratios.train)->required();
  split->add_option("--dev", ratios.dev)->required();
  split->add_option("--test", ratios.test)->required();
  split->add_option("--seed", seed)->required();

  std::string by;
  int threshold = 4;
  CLI::App *ablate = app.add_subcommand("ablate", "Ablation splits of the test set");
  add_corpus(ablate);
  ablate->add_option("--by", by)
      ->required()
      ->check(CLI::IsMember({"word-class", "window"}));
  ablate->add_option("--threshold", threshold, "Window threshold");

  bool include_vague = false;
  CLI::App *exp = app.add_subcommand("export", "Pairwise classification records");
  add_corpus(exp);
  exp->add_flag("--include-vague", include_vague);

  std::string gold, pred;
  CLI::App *eval = app.add_subcommand("eval", "Score predictions against gold pairs");
  eval->add_option("--gold", gold)->required();
  eval->add_option("--pred", pred)->required();
  eval->add_flag("--json", json, "Machine-readable output");

  int port = 0;
  std::string data, static_dir;
  CLI::App *serve = app.add_subcommand("serve", "HTTP service for the annotation UI");
  serve->add_option("--port", port)->required()->check(CLI::Range(0, 65535));
  serve->add_option("--data", data)->envname("TIMELINE_DATA")->required();
  serve->add_option("--static", static_dir, "Serve UI assets from DIR");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n\n";
    const CLI::App *cmd = &app;
    for (const CLI::App *sub : app.get_subcommands()) cmd = sub;
    err << cmd->help();
    return kUsage;
  }

  Commands run(out, err);
  try {
    if (validate->parsed()) return run.Validate(corpus);
    if (generate->parsed()) {
      return run.Generate(corpus, layer,
                          out_dir.empty() ? std::nullopt : std::optional<fs::path>(out_dir));
    }
    if (check->parsed()) return run.Check(corpus);
    if (stats->parsed()) return run.Stats(corpus, json);
    if (iaa->parsed()) return run.Iaa(corpus, layer_a, layer_b, json);
    if (split->parsed()) return run.AssignSplits(corpus, ratios, seed);
    if (ablate->parsed()) {
      AblationSpec spec;
      spec.criterion =
          by == "window" ? AblationCriterion::kWindow : AblationCriterion::kWordClass;
      spec.threshold = threshold;
      return run.Ablate(corpus, spec);
    }
    if (exp->parsed()) return run.Export(corpus, include_vague);
    if (eval->parsed()) return run.Eval(gold, pred, json);
    if (serve->parsed()) {
      return run.Serve(data, port,
                       static_dir.empty() ? std::nullopt
                                          : std::optional<fs::path>(static_dir));
    }
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e);
  }
  return kUsage;
}

}  // namespace timeline
