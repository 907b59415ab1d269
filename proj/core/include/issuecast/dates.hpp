#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace issuecast {

using Date = std::chrono::sys_days;
using Timestamp = std::chrono::sys_seconds;

/// Parses `YYYY-MM-DD`. Throws Error{FormatError} on malformed input.
Date parse_date(std::string_view text);
std::string format_date(Date date);

/// Parses the ISO-8601 UTC form used by repository APIs
/// (`YYYY-MM-DDTHH:MM:SSZ`); a bare date is accepted as midnight.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp ts);

}  // namespace issuecast
