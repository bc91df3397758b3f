#include "timeline/granular_date.h"

#include <cctype>
#include <cstdio>

#include "timeline/error.h"

namespace timeline {

namespace chr = std::chrono;

namespace {

bool AllChar(std::string_view s, char c) {
  for (char ch : s) {
    if (ch != c) return false;
  }
  return true;
}

std::optional<int> ParseDigits(std::string_view s) {
  int value = 0;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return std::nullopt;
    value = value * 10 + (ch - '0');
  }
  return value;
}

// Returns {ok, value}; value is nullopt for the wildcard form.
bool ParseComponent(std::string_view s, std::optional<int> *out) {
  if (AllChar(s, 'X')) {
    *out = std::nullopt;
    return true;
  }
  auto v = ParseDigits(s);
  if (!v) return false;
  *out = *v;
  return true;
}

}  // namespace

int DaysInMonth(int year, int month) {
  chr::year_month_day_last last{chr::year{year},
                                chr::month_day_last{chr::month(month)}};
  return static_cast<int>(static_cast<unsigned>(last.day()));
}

GranularDate::GranularDate(std::optional<int> year, std::optional<int> month,
                           std::optional<int> day)
    : year_(year), month_(month), day_(day) {
  if (!year_ && month_) throw Error("E_DATE", "month given without a year");
  if (!month_ && day_) throw Error("E_DATE", "day given without a month");
  if (year_ && (*year_ < kMinYear || *year_ > kMaxYear)) {
    throw Error("E_DATE", "year " + std::to_string(*year_) + " out of range");
  }
  if (month_ && (*month_ < 1 || *month_ > 12)) {
    throw Error("E_DATE", "month " + std::to_string(*month_) + " out of range");
  }
  if (day_ && (*day_ < 1 || *day_ > DaysInMonth(*year_, *month_))) {
    throw Error("E_DATE", "day " + std::to_string(*day_) +
                              " does not exist in " + std::to_string(*year_) +
                              "-" + std::to_string(*month_));
  }
}

GranularDate GranularDate::FromSysDays(chr::sys_days days) {
  chr::year_month_day ymd{days};
  return GranularDate(static_cast<int>(ymd.year()),
                      static_cast<int>(static_cast<unsigned>(ymd.month())),
                      static_cast<int>(static_cast<unsigned>(ymd.day())));
}

std::optional<GranularDate> GranularDate::TryParse(std::string_view text) {
  try {
    return Parse(text);
  } catch (const Error &) {
    return std::nullopt;
  }
}

GranularDate GranularDate::Parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw Error("E_DATE", "expected YYYY-MM-DD, got '" + std::string(text) + "'");
  }
  std::optional<int> y, m, d;
  if (!ParseComponent(text.substr(0, 4), &y) ||
      !ParseComponent(text.substr(5, 2), &m) ||
      !ParseComponent(text.substr(8, 2), &d)) {
    throw Error("E_DATE", "malformed date '" + std::string(text) + "'");
  }
  return GranularDate(y, m, d);
}

std::string GranularDate::ToString() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d", year_.value_or(0));
  std::string out = year_ ? buf : "XXXX";
  out += '-';
  if (month_) {
    std::snprintf(buf, sizeof(buf), "%02d", *month_);
    out += buf;
  } else {
    out += "XX";
  }
  out += '-';
  if (day_) {
    std::snprintf(buf, sizeof(buf), "%02d", *day_);
    out += buf;
  } else {
    out += "XX";
  }
  return out;
}

std::optional<chr::sys_days> GranularDate::First() const {
  if (!year_) return std::nullopt;
  return chr::sys_days{chr::year_month_day{
      chr::year{*year_}, chr::month(month_.value_or(1)),
      chr::day(day_.value_or(1))}};
}

std::optional<chr::sys_days> GranularDate::Last() const {
  if (!year_) return std::nullopt;
  int month = month_.value_or(12);
  int day = day_.value_or(DaysInMonth(*year_, month));
  return chr::sys_days{
      chr::year_month_day{chr::year{*year_}, chr::month(month), chr::day(day)}};
}

chr::sys_days GranularDate::ToSysDays() const {
  if (!exact()) {
    throw Error("E_DATE", "date " + ToString() + " is not fully specified");
  }
  return *First();
}

GranularDate GranularDate::AddDays(int delta) const {
  return FromSysDays(ToSysDays() + chr::days{delta});
}

}  // namespace timeline
