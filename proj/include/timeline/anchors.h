#ifndef TIMELINE_ANCHORS_H_
#define TIMELINE_ANCHORS_H_

#include <optional>
#include <string_view>

#include "timeline/granular_date.h"
#include "timeline/model.h"

namespace timeline {

enum class AnchorComparison { kBefore, kAfter, kSame, kIndeterminate };

// Resolves an anchor option against the document creation time.
//
//   explicit / external   the given date, which must be exact
//   implicit              the given date, wildcards allowed
//   nc_past               dct - 1 day
//   future                the given date if any, else dct + 1 day
//   unknown               XXXX-XX-XX
//
// Throws Error(E_NEED_DATE) when an option that needs a date gets none,
// Error(E_FUZZY_FORBIDDEN) when explicit/external gets a fuzzy date, and
// Error(E_DCT_FUZZY) when dct is not exact.
GranularDate ResolveAnchor(AnchorKind option,
                           const std::optional<GranularDate> &explicit_date,
                           const GranularDate &dct);

// Orders two anchors by their completion intervals. kSame iff the canonical
// forms are identical; kBefore iff a ends strictly before b begins.
AnchorComparison Compare(const GranularDate &a, const GranularDate &b);

AnchorComparison Reverse(AnchorComparison c);

std::string_view ToString(AnchorComparison c);

}  // namespace timeline

#endif  // TIMELINE_ANCHORS_H_
