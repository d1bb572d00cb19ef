// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "botlens/types.hpp"

namespace botlens {

/// Parses either `YYYY-MM-DD HH:MM:SS` (taken as UTC) or the Twitter form
/// `Fri Aug 19 15:06:17 +0000 2016`; the zone offset is applied.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// `YYYY-MM-DD HH:MM:SS` in UTC.
std::string format_timestamp(Timestamp t);

}  // namespace botlens
