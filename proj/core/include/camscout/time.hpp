#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace camscout {

/// Wall-clock instant in UTC with microsecond resolution.
using Timestamp = std::chrono::sys_time<std::chrono::microseconds>;
using Millis = std::chrono::milliseconds;

Timestamp utc_now();

/// Formats as RFC 3339 UTC, e.g. "2020-04-24T11:09:03.000123Z".
std::string format_rfc3339(Timestamp t);

/// Accepts "YYYY-MM-DDTHH:MM:SS[.fraction](Z|+HH:MM|-HH:MM)".
std::optional<Timestamp> parse_rfc3339(std::string_view text);

struct CivilTime {
    int year, month, day, hour, minute, second;
};
CivilTime to_civil_utc(Timestamp t);

}  // namespace camscout
