#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ghw/construct.hpp"

namespace ghw {

/// Names of the built-in catalog, in report order.
inline std::vector<std::string> const& catalog_names() {
  static std::vector<std::string> const names = [] {
    std::vector<std::string> v;
    for (int n = 1; n <= 16; ++n) v.push_back("C" + std::to_string(n));
    for (char const* s : {"C2xC2", "C2xC4", "C2xC2xC2", "S3", "S4", "A4", "A5", "D4", "D5", "D6",
                          "Q8", "C3xS3"})
      v.emplace_back(s);
    return v;
  }();
  return names;
}

namespace detail {

// Splits on commas that are not inside parentheses or brackets.
inline std::vector<std::string> split_top_level(std::string_view text, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

/// Resolves a catalog filter to group descriptors. The filter is a
/// comma-separated list of tokens: `all` (the whole catalog), `order<=N`
/// (catalog groups of order at most N), or any group descriptor. An empty
/// filter selects nothing. Duplicates are dropped, first occurrence wins.
inline std::vector<std::string> resolve_catalog_filter(std::string_view filter,
                                                       Limits const& limits = {}) {
  std::vector<std::string> out;
  auto add = [&](std::string const& name) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  };
  if (detail::trim(filter).empty()) return out;
  for (auto const& raw : detail::split_top_level(filter)) {
    std::string tok = detail::trim(raw);
    if (tok.empty()) continue;
    if (tok == "all") {
      for (auto const& n : catalog_names()) add(n);
    } else if (tok.starts_with("order<=")) {
      std::size_t bound = 0;
      try {
        bound = std::stoul(tok.substr(7));
      } catch (std::exception const&) {
        throw Error(ErrorKind::InvalidArgument, "bad catalog token '" + tok + "'");
      }
      for (auto const& n : catalog_names())
        if (build_group(n, limits).order() <= bound) add(n);
    } else {
      parse_group_spec(tok);  // validate eagerly
      add(tok);
    }
  }
  return out;
}

}  // namespace ghw
