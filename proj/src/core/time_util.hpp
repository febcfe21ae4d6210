#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace colcur {

// Proleptic Gregorian day arithmetic (Howard Hinnant's algorithms), UTC only.
constexpr int64_t days_from_civil(int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

constexpr void civil_from_days(int64_t z, int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y += m <= 2;
}

// Day index for a posix timestamp: floor(ts / 86400), UTC.
inline int64_t day_from_posix(double ts) {
  return static_cast<int64_t>(std::floor(ts / 86400.0));
}

namespace detail {
inline bool parse_uint_exact(std::string_view s, unsigned& out) {
  unsigned v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return false;
  out = v;
  return true;
}
}  // namespace detail

// Accepts exactly "YYYY-MM-DD hh:mm:ss" and "YYYY-MM-DD" (UTC). Returns posix
// seconds, or nullopt on any other shape.
inline std::optional<double> parse_datetime(std::string_view s) {
  if (s.size() != 10 && s.size() != 19) return std::nullopt;
  if (s[4] != '-' || s[7] != '-') return std::nullopt;
  unsigned y, mo, d;
  if (!detail::parse_uint_exact(s.substr(0, 4), y)) return std::nullopt;
  if (!detail::parse_uint_exact(s.substr(5, 2), mo)) return std::nullopt;
  if (!detail::parse_uint_exact(s.substr(8, 2), d)) return std::nullopt;
  if (mo < 1 || mo > 12 || d < 1 || d > 31) return std::nullopt;
  int64_t secs = 0;
  if (s.size() == 19) {
    if (s[10] != ' ' || s[13] != ':' || s[16] != ':') return std::nullopt;
    unsigned h, mi, se;
    if (!detail::parse_uint_exact(s.substr(11, 2), h)) return std::nullopt;
    if (!detail::parse_uint_exact(s.substr(14, 2), mi)) return std::nullopt;
    if (!detail::parse_uint_exact(s.substr(17, 2), se)) return std::nullopt;
    if (h > 23 || mi > 59 || se > 60) return std::nullopt;
    secs = static_cast<int64_t>(h) * 3600 + mi * 60 + se;
  }
  const int64_t days = days_from_civil(static_cast<int64_t>(y), mo, d);
  return static_cast<double>(days * 86400 + secs);
}

// Date-only form "YYYY-MM-DD".
inline std::optional<double> parse_date(std::string_view s) {
  if (s.size() != 10) return std::nullopt;
  return parse_datetime(s);
}

// Formats a posix timestamp as "YYYY-MM-DD hh:mm:ss" (UTC, floored to whole
// seconds). Timestamps outside the civil range are printed as a raw number.
inline std::string format_datetime(double ts) {
  if (!std::isfinite(ts) || std::fabs(ts) > 2.5e17) {
    char buf[64];
    int n = std::snprintf(buf, sizeof buf, "%.17g", ts);
    return std::string(buf, static_cast<size_t>(n));
  }
  const int64_t whole = static_cast<int64_t>(std::floor(ts));
  int64_t days = whole / 86400;
  int64_t sod = whole % 86400;
  if (sod < 0) {
    sod += 86400;
    days -= 1;
  }
  int64_t y;
  unsigned mo, d;
  civil_from_days(days, y, mo, d);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04lld-%02u-%02u %02lld:%02lld:%02lld",
                static_cast<long long>(y), mo, d,
                static_cast<long long>(sod / 3600),
                static_cast<long long>((sod / 60) % 60),
                static_cast<long long>(sod % 60));
  return buf;
}

// Current wall-clock time as an ISO-8601 UTC string, for metadata stamps.
std::string utc_now_iso8601();
double posix_now();

}  // namespace colcur
