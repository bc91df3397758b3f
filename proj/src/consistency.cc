#include "timeline/consistency.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace timeline {

namespace {

// Relations indexed by canonical event position.
class PairIndex {
 public:
  explicit PairIndex(const RelationSet &rs) {
    std::set<std::string, EventIdLess> ids;
    for (const TemporalRelation &r : rs.relations) {
      ids.insert(r.source);
      ids.insert(r.target);
    }
    ids_.assign(ids.begin(), ids.end());
    for (size_t i = 0; i < ids_.size(); ++i) pos_.emplace(ids_[i], i);
    n_ = ids_.size();
    labels_.assign(n_ * n_, std::nullopt);
    for (const TemporalRelation &r : rs.relations) {
      size_t s = pos_.at(r.source), t = pos_.at(r.target);
      if (s == t) continue;
      RelationLabel l = s < t ? r.label : Inverse(r.label);
      size_t i = std::min(s, t), j = std::max(s, t);
      auto &cell = labels_[i * n_ + j];
      if (!cell) {
        cell = l;
      } else if (*cell != l) {
        asymmetric_.insert({i, j});
      }
    }
  }

  size_t size() const { return n_; }
  const std::string &id(size_t i) const { return ids_[i]; }

  std::optional<size_t> Find(const std::string &id) const {
    auto it = pos_.find(id);
    if (it == pos_.end()) return std::nullopt;
    return it->second;
  }

  // "i <label> j"; vague when unknown or contradicted by a duplicate.
  RelationLabel Get(size_t i, size_t j) const {
    if (i == j) return RelationLabel::kEqual;
    size_t a = std::min(i, j), b = std::max(i, j);
    const auto &cell = labels_[a * n_ + b];
    if (!cell || asymmetric_.contains({a, b})) return RelationLabel::kVague;
    return i < j ? *cell : Inverse(*cell);
  }

  const std::set<std::pair<size_t, size_t>> &asymmetric() const {
    return asymmetric_;
  }

 private:
  size_t n_ = 0;
  std::vector<std::string> ids_;
  std::map<std::string, size_t> pos_;
  std::vector<std::optional<RelationLabel>> labels_;
  std::set<std::pair<size_t, size_t>> asymmetric_;
};

std::string Describe(const std::string &x, RelationLabel l, const std::string &y) {
  return x + " " + std::string(ToString(l)) + " " + y;
}

}  // namespace

std::optional<RelationLabel> Compose(RelationLabel xy, RelationLabel yz) {
  using L = RelationLabel;
  if (xy == L::kVague || yz == L::kVague) return std::nullopt;
  if (xy == L::kEqual) return yz;
  if (yz == L::kEqual) return xy;
  if (xy == yz) return xy;
  return std::nullopt;
}

void SortConflicts(std::vector<ConflictRecord> *conflicts) {
  auto key = [](const ConflictRecord &c) {
    return std::tie(c.kind, c.events, c.detail);
  };
  std::sort(conflicts->begin(), conflicts->end(),
            [&](const ConflictRecord &a, const ConflictRecord &b) {
              if (a.kind != b.kind) return a.kind < b.kind;
              if (a.events != b.events) {
                return std::lexicographical_compare(
                    a.events.begin(), a.events.end(), b.events.begin(),
                    b.events.end(), [](const std::string &x, const std::string &y) {
                      return CompareEventIds(x, y) < 0;
                    });
              }
              return key(a) < key(b);
            });
}

std::vector<ConflictRecord> Check(const RelationSet &rs) {
  PairIndex idx(rs);
  std::vector<ConflictRecord> out;

  for (const auto &[i, j] : idx.asymmetric()) {
    out.push_back({ConflictKind::kEqualAsymmetry,
                   {idx.id(i), idx.id(j)},
                   "pair " + idx.id(i) + "/" + idx.id(j) +
                       " is listed with contradictory labels"});
  }

  const size_t n = idx.size();
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a + 1; b < n; ++b) {
      RelationLabel ab = idx.Get(a, b);
      if (ab == RelationLabel::kVague) continue;
      for (size_t c = b + 1; c < n; ++c) {
        // Each element of the triple in turn as the middle point.
        const size_t order[3][3] = {{a, b, c}, {b, a, c}, {a, c, b}};
        for (const auto &o : order) {
          size_t x = o[0], y = o[1], z = o[2];
          auto implied = Compose(idx.Get(x, y), idx.Get(y, z));
          RelationLabel actual = idx.Get(x, z);
          if (!implied || actual == RelationLabel::kVague || actual == *implied) {
            continue;
          }
          out.push_back({ConflictKind::kTransitivity,
                         {idx.id(a), idx.id(b), idx.id(c)},
                         Describe(idx.id(x), idx.Get(x, y), idx.id(y)) + ", " +
                             Describe(idx.id(y), idx.Get(y, z), idx.id(z)) +
                             ", but " + Describe(idx.id(x), actual, idx.id(z))});
          break;
        }
      }
    }
  }
  SortConflicts(&out);
  return out;
}

std::vector<ConflictRecord> Check(const RelationSet &rs, const Layer &layer) {
  std::vector<ConflictRecord> out = Check(rs);
  PairIndex idx(rs);

  for (const std::vector<std::string> &cls : CorefClasses(layer, false)) {
    std::vector<size_t> members;
    for (const std::string &id : cls) {
      if (auto p = idx.Find(id)) members.push_back(*p);
    }
    for (size_t x = 0; x < members.size(); ++x) {
      for (size_t y = x + 1; y < members.size(); ++y) {
        RelationLabel l = idx.Get(members[x], members[y]);
        if (l == RelationLabel::kBefore || l == RelationLabel::kAfter) {
          out.push_back({ConflictKind::kCorefDisagreement,
                         {idx.id(members[x]), idx.id(members[y])},
                         "coreferent events labelled " +
                             Describe(idx.id(members[x]), l, idx.id(members[y]))});
        }
      }
    }
    for (size_t e = 0; e < idx.size(); ++e) {
      if (std::find(members.begin(), members.end(), e) != members.end()) continue;
      std::optional<size_t> first;
      for (size_t m : members) {
        RelationLabel l = idx.Get(m, e);
        if (l == RelationLabel::kVague) continue;
        if (!first) {
          first = m;
        } else if (idx.Get(*first, e) != l) {
          std::vector<std::string> ev = {idx.id(*first), idx.id(m), idx.id(e)};
          std::sort(ev.begin(), ev.end(), EventIdLess{});
          out.push_back({ConflictKind::kCorefDisagreement, ev,
                         "coreferent " + idx.id(*first) + " and " + idx.id(m) +
                             " disagree toward " + idx.id(e) + ": " +
                             Describe(idx.id(*first), idx.Get(*first, e), idx.id(e)) +
                             " vs " + Describe(idx.id(m), l, idx.id(e))});
          break;
        }
      }
    }
  }

  std::map<std::string, const Event *> by_id;
  for (const Event &e : layer) by_id.emplace(e.id, &e);
  for (const Event *e : MainEvents(layer)) {
    if (!e->answers.q1) continue;
    auto it = by_id.find(e->answers.q1->target);
    if (it == by_id.end() || !it->second->main_axis()) continue;
    const Event &t = *it->second;
    if (e->anchor && t.anchor && *e->anchor != *t.anchor) {
      out.push_back({ConflictKind::kAnchorCorefMismatch,
                     {e->id, t.id},
                     "Q1 links " + e->id + " (" + e->anchor->ToString() +
                         ") and " + t.id + " (" + t.anchor->ToString() +
                         ") but their anchors differ"});
    }
  }
  SortConflicts(&out);
  return out;
}

}  // namespace timeline
