#include "proind/text_format.hpp"

#include <algorithm>
#include <cctype>

#include "proind/errors.hpp"

namespace proind::text {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string> split_on(std::string_view s, std::string_view sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(s.substr(start)));
      return out;
    }
    out.push_back(trim(s.substr(start, pos - start)));
    start = pos + sep.size();
  }
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' ||
           c == '.' || c == '-';
  });
}

std::map<std::string, std::vector<Line>> split_sections(
    std::string_view input, std::span<const std::string_view> known) {
  std::map<std::string, std::vector<Line>> sections;
  std::string current;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= input.size()) {
    std::size_t end = input.find('\n', pos);
    if (end == std::string_view::npos) end = input.size();
    std::string_view raw = input.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) {
      if (end == input.size()) break;
      continue;
    }
    if (auto colon = line.find(':'); colon != std::string::npos) {
      std::string head = trim(std::string_view(line).substr(0, colon));
      if (std::find(known.begin(), known.end(), head) != known.end()) {
        current = head;
        sections[current];
        std::string rest = trim(std::string_view(line).substr(colon + 1));
        if (!rest.empty()) sections[current].push_back({number, rest});
        if (end == input.size()) break;
        continue;
      }
    }
    if (current.empty()) throw ParseError(number, "content before any section header: '" + line + "'");
    sections[current].push_back({number, line});
    if (end == input.size()) break;
  }
  return sections;
}

}  // namespace proind::text
