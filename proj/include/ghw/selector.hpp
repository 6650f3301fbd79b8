#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ghw/catalog.hpp"
#include "ghw/group.hpp"

namespace ghw {

/// "order:d:i" where S is the i-th subgroup of order d in canonical order.
inline std::string selector_name(std::span<Subgroup const> lattice, Subgroup const& S) {
  std::size_t i = 0;
  for (auto const& T : lattice) {
    if (T.order() != S.order()) continue;
    if (T == S) return "order:" + std::to_string(S.order()) + ":" + std::to_string(i);
    ++i;
  }
  throw Error(ErrorKind::InvalidArgument, "subgroup not in lattice");
}

/// Resolves a subgroup selector: `full`, `trivial`, `gen:<label>,<label>,...`
/// or `order:<d>:<i>`. Labels are matched exactly; `#<index>` names an element
/// by its index.
inline Subgroup select_subgroup(FiniteGroup const& G, std::string_view selector, Limits const& limits = {}) {
  auto bad = [&](std::string const& why) {
    return Error(ErrorKind::InvalidArgument, "bad subgroup selector '" + std::string(selector) + "': " + why);
  };
  if (selector == "full") return G.whole();
  if (selector == "trivial") return G.trivial();
  if (selector.starts_with("gen:")) {
    std::vector<Elem> seed;
    for (auto const& raw : detail::split_top_level(selector.substr(4))) {
      std::string tok = detail::trim(raw);
      if (tok.empty()) continue;
      if (tok[0] == '#') {
        std::size_t v = 0;
        try {
          v = std::stoul(tok.substr(1));
        } catch (std::exception const&) {
          throw bad("bad element index '" + tok + "'");
        }
        if (v >= G.order()) throw bad("element index out of range");
        seed.push_back(Elem(v));
      } else if (auto e = G.find_label(tok)) {
        seed.push_back(*e);
      } else {
        throw bad("no element labelled '" + tok + "' in " + G.name());
      }
    }
    return closure(G, seed);
  }
  if (selector.starts_with("order:")) {
    auto rest = std::string(selector.substr(6));
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw bad("expected order:<d>:<i>");
    std::size_t d = 0, i = 0;
    try {
      d = std::stoul(rest.substr(0, colon));
      i = std::stoul(rest.substr(colon + 1));
    } catch (std::exception const&) {
      throw bad("expected order:<d>:<i>");
    }
    std::size_t seen = 0;
    for (auto const& S : all_subgroups(G, limits)) {
      if (S.order() != d) continue;
      if (seen++ == i) return S;
    }
    throw bad("no such subgroup");
  }
  throw bad("unknown selector form");
}

}  // namespace ghw
