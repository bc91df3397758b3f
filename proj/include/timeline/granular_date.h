#ifndef TIMELINE_GRANULAR_DATE_H_
#define TIMELINE_GRANULAR_DATE_H_

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace timeline {

// A calendar date whose trailing components may be unknown. Text form is
// YYYY-MM-DD with XXXX / XX standing in for unknown components, e.g.
// "2020-08-XX" or "XXXX-XX-XX". Unknown components only ever form a suffix:
// a date with an unknown month never has a known day.
//
// A GranularDate denotes the closed interval of all its completions.
class GranularDate {
 public:
  static constexpr int kMinYear = 1000;
  static constexpr int kMaxYear = 2999;

  // Fully unknown date (XXXX-XX-XX).
  GranularDate() = default;

  // Throws Error(E_DATE) when the components are out of range, break the
  // suffix rule, or name a day that does not exist in that month.
  GranularDate(std::optional<int> year, std::optional<int> month,
               std::optional<int> day);

  static GranularDate Exact(int year, int month, int day) {
    return GranularDate(year, month, day);
  }
  static GranularDate Month(int year, int month) {
    return GranularDate(year, month, std::nullopt);
  }
  static GranularDate Year(int year) {
    return GranularDate(year, std::nullopt, std::nullopt);
  }
  static GranularDate Unknown() { return GranularDate(); }

  static GranularDate FromSysDays(std::chrono::sys_days days);

  // Parses the canonical text form. Throws Error(E_DATE) on anything else.
  static GranularDate Parse(std::string_view text);
  static std::optional<GranularDate> TryParse(std::string_view text);

  std::string ToString() const;

  const std::optional<int> &year() const { return year_; }
  const std::optional<int> &month() const { return month_; }
  const std::optional<int> &day() const { return day_; }

  bool exact() const { return day_.has_value(); }
  bool unknown() const { return !year_.has_value(); }

  // Interval bounds; nullopt means unbounded (fully unknown date).
  std::optional<std::chrono::sys_days> First() const;
  std::optional<std::chrono::sys_days> Last() const;

  // Only valid for exact dates.
  std::chrono::sys_days ToSysDays() const;
  GranularDate AddDays(int delta) const;

  friend bool operator==(const GranularDate &, const GranularDate &) = default;

 private:
  std::optional<int> year_;
  std::optional<int> month_;
  std::optional<int> day_;
};

int DaysInMonth(int year, int month);

}  // namespace timeline

#endif  // TIMELINE_GRANULAR_DATE_H_
