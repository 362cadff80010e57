#pragma once

#include <string>
#include <string_view>

namespace bipara {

/// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

/// Parses the whole of `text` as a double; returns false on any leftover input.
bool parse_double(std::string_view text, double& out);

}  // namespace bipara
