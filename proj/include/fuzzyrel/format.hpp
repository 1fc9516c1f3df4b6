#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace fuzzyrel {

/// Shortest decimal text that round-trips to the same double.
[[nodiscard]] inline std::string format_number(double x) {
	if (x == 0.0) {
		return "0"; // folds -0
	}
	char buf[64];
	auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
	if (ec != std::errc{}) {
		return std::to_string(x);
	}
	return std::string(buf, end);
}

} // namespace fuzzyrel
