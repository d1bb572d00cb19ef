// SPDX-License-Identifier: Apache-2.0
#include "botlens/timeutil.hpp"

#include <array>
#include <charconv>
#include <chrono>

#include <fmt/format.h>

namespace botlens {
namespace {

using namespace std::chrono;

constexpr std::array<std::string_view, 12> kMonths = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                      "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
constexpr std::array<std::string_view, 7> kWeekdays = {"Mon", "Tue", "Wed", "Thu",
                                                       "Fri", "Sat", "Sun"};

bool read_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::optional<Timestamp> make_time(int y, int mo, int d, int h, int mi, int s) {
  if (mo < 1 || mo > 12 || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 60) {
    return std::nullopt;
  }
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  auto days_since = sys_days{ymd}.time_since_epoch().count();
  return static_cast<Timestamp>(days_since) * 86400 + h * 3600 + mi * 60 + s;
}

bool parse_clock(std::string_view s, int& h, int& mi, int& sec) {
  return s.size() == 8 && s[2] == ':' && s[5] == ':' && read_int(s.substr(0, 2), h) &&
         read_int(s.substr(3, 2), mi) && read_int(s.substr(6, 2), sec);
}

// YYYY-MM-DD HH:MM:SS
std::optional<Timestamp> parse_iso(std::string_view s) {
  if (s.size() != 19 || s[4] != '-' || s[7] != '-' || (s[10] != ' ' && s[10] != 'T')) {
    return std::nullopt;
  }
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  if (!read_int(s.substr(0, 4), y) || !read_int(s.substr(5, 2), mo) ||
      !read_int(s.substr(8, 2), d) || !parse_clock(s.substr(11), h, mi, sec)) {
    return std::nullopt;
  }
  return make_time(y, mo, d, h, mi, sec);
}

// ccc MMM dd HH:mm:ss ZZZZ yyyy, e.g. "Fri Aug 19 15:06:17 +0000 2016"
std::optional<Timestamp> parse_twitter(std::string_view s) {
  if (s.size() != 30 || s[3] != ' ' || s[7] != ' ' || s[10] != ' ' || s[19] != ' ' ||
      s[25] != ' ') {
    return std::nullopt;
  }
  bool weekday_ok = false;
  for (auto w : kWeekdays) weekday_ok = weekday_ok || s.substr(0, 3) == w;
  if (!weekday_ok) return std::nullopt;

  int mo = 0;
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    if (s.substr(4, 3) == kMonths[i]) mo = static_cast<int>(i) + 1;
  }
  int d = 0, h = 0, mi = 0, sec = 0, y = 0, off_h = 0, off_m = 0;
  if (mo == 0 || !read_int(s.substr(8, 2), d) || !parse_clock(s.substr(11, 8), h, mi, sec)) {
    return std::nullopt;
  }
  char sign = s[20];
  if ((sign != '+' && sign != '-') || !read_int(s.substr(21, 2), off_h) ||
      !read_int(s.substr(23, 2), off_m) || !read_int(s.substr(26, 4), y)) {
    return std::nullopt;
  }
  auto local = make_time(y, mo, d, h, mi, sec);
  if (!local) return std::nullopt;
  Timestamp offset = off_h * 3600 + off_m * 60;
  return sign == '+' ? *local - offset : *local + offset;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  if (auto t = parse_iso(text)) return t;
  return parse_twitter(text);
}

std::string format_timestamp(Timestamp t) {
  auto days_count = t >= 0 ? t / 86400 : (t - 86399) / 86400;
  auto secs = t - days_count * 86400;
  year_month_day ymd{sys_days{days{days_count}}};
  return fmt::format("{:04d}-{:02d}-{:02d} {:02d}:{:02d}:{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                     secs / 3600, (secs / 60) % 60, secs % 60);
}

}  // namespace botlens
