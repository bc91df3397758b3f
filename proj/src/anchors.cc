#include "timeline/anchors.h"

#include "timeline/error.h"

namespace timeline {

GranularDate ResolveAnchor(AnchorKind option,
                           const std::optional<GranularDate> &explicit_date,
                           const GranularDate &dct) {
  if (!dct.exact()) {
    throw Error("E_DCT_FUZZY", "DCT " + dct.ToString() + " is not exact");
  }
  switch (option) {
    case AnchorKind::kExplicit:
    case AnchorKind::kExternal:
      if (!explicit_date) {
        throw Error("E_NEED_DATE", std::string("option ") +
                                       std::string(ToString(option)) +
                                       " requires a date");
      }
      if (!explicit_date->exact()) {
        throw Error("E_FUZZY_FORBIDDEN",
                    std::string("option ") + std::string(ToString(option)) +
                        " requires an exact date, got " +
                        explicit_date->ToString());
      }
      return *explicit_date;
    case AnchorKind::kImplicit:
      if (!explicit_date) {
        throw Error("E_NEED_DATE", "option implicit requires a date");
      }
      return *explicit_date;
    case AnchorKind::kNcPast:
      return dct.AddDays(-1);
    case AnchorKind::kFuture:
      return explicit_date ? *explicit_date : dct.AddDays(1);
    case AnchorKind::kUnknown:
      return GranularDate::Unknown();
  }
  throw Error("E_OPTION", "unknown anchor option");
}

AnchorComparison Compare(const GranularDate &a, const GranularDate &b) {
  if (a == b) return AnchorComparison::kSame;
  auto a_last = a.Last();
  auto b_first = b.First();
  if (a_last && b_first && *a_last < *b_first) return AnchorComparison::kBefore;
  auto a_first = a.First();
  auto b_last = b.Last();
  if (a_first && b_last && *b_last < *a_first) return AnchorComparison::kAfter;
  return AnchorComparison::kIndeterminate;
}

AnchorComparison Reverse(AnchorComparison c) {
  switch (c) {
    case AnchorComparison::kBefore: return AnchorComparison::kAfter;
    case AnchorComparison::kAfter: return AnchorComparison::kBefore;
    default: return c;
  }
}

std::string_view ToString(AnchorComparison c) {
  switch (c) {
    case AnchorComparison::kBefore: return "BEFORE";
    case AnchorComparison::kAfter: return "AFTER";
    case AnchorComparison::kSame: return "SAME";
    case AnchorComparison::kIndeterminate: return "INDETERMINATE";
  }
  return "?";
}

}  // namespace timeline
