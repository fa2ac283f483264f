#pragma once

#include <charconv>
#include <string_view>
#include <vector>

namespace xorsat::detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  constexpr std::string_view kBlank = " \t\r";
  std::vector<std::string_view> tokens;
  std::size_t pos = line.find_first_not_of(kBlank);
  while (pos != std::string_view::npos) {
    const std::size_t end = line.find_first_of(kBlank, pos);
    tokens.push_back(line.substr(pos, end == std::string_view::npos ? end : end - pos));
    pos = end == std::string_view::npos ? end : line.find_first_not_of(kBlank, end);
  }
  return tokens;
}

template <typename Int>
bool parse_int(std::string_view token, Int& out) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

/// Calls fn(line_number, line) for each line; numbering starts at 1.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    fn(++line_no, text.substr(pos, end - pos));
    pos = end + 1;
  }
}

}  // namespace xorsat::detail
