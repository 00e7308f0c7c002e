#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nfd::text {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);

/// Splits on '\n'; a trailing '\r' on each line is dropped. A final newline
/// does not produce an empty trailing element.
std::vector<std::string_view> lines(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Strips a UTF-8 BOM, converts CRLF to LF and leaves exactly one trailing
/// newline. Empty input stays empty.
std::string canonical(std::string_view s);

std::size_t count_whitespace_tokens(std::string_view s);

/// Cuts `s` to at most `max_bytes` without splitting a UTF-8 sequence.
std::string_view utf8_prefix(std::string_view s, std::size_t max_bytes);

bool is_kebab_case(std::string_view s);

}  // namespace nfd::text
