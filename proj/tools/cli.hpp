#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kempner/digitstat.hpp"

namespace kempner::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Parses `s2`, `sb:<b>` and `word:<w>`. Returns nullopt when malformed.
std::optional<StatisticSpec> parse_spec(std::string_view text);

/// Parses "a..b" or a single "a". Returns nullopt when malformed.
std::optional<std::pair<unsigned, unsigned>> parse_k_range(std::string_view text);

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kempner::cli
