#ifndef TIMELINE_CONSISTENCY_H_
#define TIMELINE_CONSISTENCY_H_

#include <optional>
#include <vector>

#include "timeline/model.h"
#include "timeline/relgen.h"

namespace timeline {

// Point-algebra composition over {before, after, equal}: the label implied
// for (x, z) by (x, y) and (y, z), or nullopt when nothing follows. Vague
// carries no information.
//
//          | before  after   equal
//   -------+-----------------------
//   before | before  -       before
//   after  | -       after   after
//   equal  | before  after   equal
std::optional<RelationLabel> Compose(RelationLabel xy, RelationLabel yz);

// Conflicts visible from the relations alone: TRANSITIVITY over every triple
// and EQUAL_ASYMMETRY for pairs listed more than once with labels that are
// not each other's inverse. Output is sorted and independent of the order of
// rs.relations.
std::vector<ConflictRecord> Check(const RelationSet &rs);

// Adds the checks that need the annotation layer (with resolved anchors):
// COREF_DISAGREEMENT within and around Q1 classes (every Q1 link counts,
// whatever the anchors), and ANCHOR_COREF_MISMATCH
// for Q1 links between events with different anchors.
std::vector<ConflictRecord> Check(const RelationSet &rs, const Layer &layer);

// Canonical ordering: kind, then event ids, then detail.
void SortConflicts(std::vector<ConflictRecord> *conflicts);

}  // namespace timeline

#endif  // TIMELINE_CONSISTENCY_H_
