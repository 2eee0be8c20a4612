#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace corrnet {

// Calendar day stored as days since 1970-01-01. No timezone; daily bars only.
class Date {
 public:
  Date() = default;
  explicit constexpr Date(std::int32_t days_since_epoch) : days_(days_since_epoch) {}

  // Parses strict ISO-8601 "YYYY-MM-DD". Throws errc::malformed_input.
  static Date parse(std::string_view text);
  static Date from_ymd(int year, unsigned month, unsigned day);

  std::int32_t days() const noexcept { return days_; }
  int year() const;
  std::string to_string() const;

  friend constexpr auto operator<=>(Date a, Date b) noexcept = default;

  friend constexpr Date operator+(Date d, std::int32_t n) noexcept { return Date(d.days_ + n); }
  friend constexpr std::int32_t operator-(Date a, Date b) noexcept { return a.days_ - b.days_; }

 private:
  std::int32_t days_ = 0;
};

}  // namespace corrnet
