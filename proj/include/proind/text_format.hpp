#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace proind::text {

struct Line {
  int number = 0;
  std::string text;
};

// Splits a sectioned text file. A section starts at a line `name:` whose name
// is one of `known`; anything after the colon on that line becomes the first
// content line. Comments (`#` to end of line) and blank lines are dropped.
// Content before the first header is a parse error.
std::map<std::string, std::vector<Line>> split_sections(
    std::string_view input, std::span<const std::string_view> known);

std::string trim(std::string_view s);
std::vector<std::string> split_ws(std::string_view s);
// Splits on a literal separator, trimming each piece.
std::vector<std::string> split_on(std::string_view s, std::string_view sep);

bool is_identifier(std::string_view s);

}  // namespace proind::text
