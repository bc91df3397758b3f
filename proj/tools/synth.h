#ifndef TIMELINE_TOOLS_SYNTH_H_
#define TIMELINE_TOOLS_SYNTH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "timeline/model.h"

namespace timeline::synth {

// Small, portable generator (splitmix64). Fixtures must come out identical
// on every standard library, so no <random> distributions here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t Next();
  // Uniform in [lo, hi].
  int Int(int lo, int hi);
  bool Chance(double p);
  template <typename T>
  const T &Pick(const std::vector<T> &v) {
    return v[static_cast<size_t>(Int(0, static_cast<int>(v.size()) - 1))];
  }

 private:
  uint64_t state_;
};

// Assembles a document sentence by sentence. Event spans are located by
// searching for the trigger text, so callers never count code points.
class DocBuilder {
 public:
  DocBuilder(std::string doc_id, std::string_view dct, std::string title = "");

  // Appends a sentence and returns its index.
  int Sentence(std::string text);

  // Adds a MAIN verb event for the n-th occurrence of `trigger` in sentence
  // `s`, with option 3 and no answers. The reference stays valid until the
  // next Add on the same layer.
  Event &Add(const std::string &layer, std::string id, int s,
             std::string_view trigger, int occurrence = 0);

  // Ensures the layer exists even if it stays empty.
  void Layer(const std::string &layer);

  AnnotatedDocument &doc() { return doc_; }
  const AnnotatedDocument &doc() const { return doc_; }

 private:
  AnnotatedDocument doc_;
};

AnchorOption Option(AnchorKind kind, std::string cue = "");
QuestionLink Link(std::string target,
                  std::optional<Direction> direction = std::nullopt);

struct SynthOptions {
  int min_events = 3;
  int max_events = 12;
  double non_verb = 0.25;  // share of nominal triggers
  double non_main = 0.1;   // share of events off the main axis
  double coref = 0.12;     // chance an event re-mentions an earlier one
  double answer = 0.5;     // chance each applicable question is answered
};

// A random document whose annotations are all truthful to a hidden
// timeline: every event gets a latent (day, position-in-day), anchors
// contain the latent day, and every yes answer agrees with it. Relation sets
// generated from such documents are therefore free of contradictions.
AnnotatedDocument SynthesizeDocument(Rng &rng, const std::string &doc_id,
                                     const std::string &layer,
                                     const SynthOptions &options = {});

// A random document that passes validation but whose answers are otherwise
// arbitrary, so it may well contain contradictions.
AnnotatedDocument ArbitraryDocument(Rng &rng, const std::string &doc_id,
                                    const std::string &layer,
                                    const SynthOptions &options = {});

}  // namespace timeline::synth

#endif  // TIMELINE_TOOLS_SYNTH_H_
