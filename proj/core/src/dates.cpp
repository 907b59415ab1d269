#include "issuecast/dates.hpp"

#include <charconv>
#include <cstdio>

#include "issuecast/error.hpp"

namespace issuecast {
namespace {

int parse_field(std::string_view text, std::size_t pos, std::size_t len, std::string_view whole) {
    int value = 0;
    const char* first = text.data() + pos;
    const char* last = first + len;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw Error(Errc::FormatError, "malformed date/time '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Date parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw Error(Errc::FormatError, "expected YYYY-MM-DD, got '" + std::string(text) + "'");
    }
    const int y = parse_field(text, 0, 4, text);
    const int m = parse_field(text, 5, 2, text);
    const int d = parse_field(text, 8, 2, text);
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        throw Error(Errc::FormatError, "invalid calendar date '" + std::string(text) + "'");
    }
    return Date{ymd};
}

std::string format_date(Date date) {
    const std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

Timestamp parse_timestamp(std::string_view text) {
    const Date day = parse_date(text.substr(0, std::min<std::size_t>(text.size(), 10)));
    if (text.size() == 10) {
        return Timestamp{day};
    }
    if (text.size() < 19 || text[10] != 'T' || text[13] != ':' || text[16] != ':') {
        throw Error(Errc::FormatError, "expected YYYY-MM-DDTHH:MM:SSZ, got '" + std::string(text) + "'");
    }
    const int hh = parse_field(text, 11, 2, text);
    const int mm = parse_field(text, 14, 2, text);
    const int ss = parse_field(text, 17, 2, text);
    if (hh > 23 || mm > 59 || ss > 60) {
        throw Error(Errc::FormatError, "invalid time of day in '" + std::string(text) + "'");
    }
    return Timestamp{day} + std::chrono::hours{hh} + std::chrono::minutes{mm} + std::chrono::seconds{ss};
}

std::string format_timestamp(Timestamp ts) {
    const Date day = std::chrono::floor<std::chrono::days>(ts);
    const std::chrono::hh_mm_ss hms{ts - day};
    char buf[16];
    std::snprintf(buf, sizeof buf, "T%02d:%02d:%02dZ", static_cast<int>(hms.hours().count()),
                  static_cast<int>(hms.minutes().count()), static_cast<int>(hms.seconds().count()));
    return format_date(day) + buf;
}

}  // namespace issuecast
