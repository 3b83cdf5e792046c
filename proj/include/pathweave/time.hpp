#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pathweave {

/// Seconds since the Unix epoch, UTC.
using Instant = std::int64_t;
/// Length of a time span in seconds.
using Seconds = std::int64_t;

/// Parses "YYYY-MM-DDTHH:MM:SS[.frac](Z|+HH:MM|-HH:MM)". Fractional seconds
/// are truncated.
std::optional<Instant> parse_rfc3339(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_rfc3339(Instant t);

/// Accepts a plain number of seconds or a number with one unit suffix:
/// s, m, h, d, w (e.g. "90", "6h", "1w").
std::optional<Seconds> parse_duration(std::string_view text);

/// Largest multiple of `interval` not after `t`.
Instant floor_to_interval(Instant t, Seconds interval);

}  // namespace pathweave
