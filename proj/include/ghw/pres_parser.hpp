#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ghw/construct.hpp"
#include "ghw/error.hpp"
#include "ghw/presentation.hpp"

namespace ghw {

/// Everything a presentation file can declare.
struct InputBundle {
  Presentation pres;
  std::optional<Indexation> idx;
  SubgroupSpec W;      // defaults to all of F
  bool W_declared = false;
  std::optional<GroupSpec> group;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string const& line, std::size_t offset = 0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), offset + start + 1});
  }
  return out;
}

class PresentationParser {
 public:
  PresentationParser(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  InputBundle parse() {
    std::string line;
    std::vector<std::pair<std::size_t, std::string>> rels, degs, ws;
    std::optional<std::pair<std::size_t, std::string>> group_line;
    while (std::getline(in_, line)) {
      ++lineno_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      auto toks = tokenize(line);
      std::string const& kw = toks[0].text;
      if (kw == "gens") {
        if (names_) fail(toks[0].column, "duplicate 'gens' directive");
        std::vector<std::string> names;
        for (std::size_t i = 1; i < toks.size(); ++i) {
          check_identifier(toks[i]);
          if (std::find(names.begin(), names.end(), toks[i].text) != names.end())
            fail(toks[i].column, "generator '" + toks[i].text + "' declared twice");
          names.push_back(toks[i].text);
        }
        if (names.empty()) fail(toks[0].column, "'gens' needs at least one generator");
        names_ = std::move(names);
      } else if (kw == "rel") {
        rels.emplace_back(lineno_, line);
      } else if (kw == "deg") {
        if (!degs.empty()) fail(toks[0].column, "duplicate 'deg' directive");
        degs.emplace_back(lineno_, line);
      } else if (kw == "W:" || kw.starts_with("W:")) {
        if (!ws.empty()) fail(toks[0].column, "duplicate 'W:' directive");
        ws.emplace_back(lineno_, line);
      } else if (kw == "group") {
        if (group_line) fail(toks[0].column, "duplicate 'group' directive");
        group_line.emplace(lineno_, line);
      } else {
        fail(toks[0].column, "unknown directive '" + kw + "'");
      }
    }
    if (!names_) {
      lineno_ = 1;
      fail(1, "missing 'gens' directive");
    }

    std::vector<Word> relators;
    for (auto const& [ln, text] : rels) {
      lineno_ = ln;
      auto toks = tokenize(text);
      if (toks.size() < 2) fail(toks[0].column, "'rel' needs a word");
      relators.push_back(parse_word(std::span(toks).subspan(1)));
    }
    InputBundle bundle{Presentation(*names_, std::move(relators)), std::nullopt, {}, false, std::nullopt};
    bundle.W = SubgroupSpec::whole(bundle.pres);

    if (!degs.empty()) {
      lineno_ = degs[0].first;
      bundle.idx = parse_deg(degs[0].second, bundle.pres);
    }
    if (!ws.empty()) {
      lineno_ = ws[0].first;
      bundle.W = parse_w(ws[0].second);
      bundle.W_declared = true;
    }
    if (group_line) {
      lineno_ = group_line->first;
      auto toks = tokenize(group_line->second);
      if (toks.size() != 2) fail(toks[0].column, "expected 'group <spec>'");
      try {
        bundle.group = parse_group_spec(toks[1].text);
      } catch (Error const& e) {
        fail(toks[1].column, e.what());
      }
    }
    return bundle;
  }

 private:
  [[noreturn]] void fail(std::size_t column, std::string const& msg) const {
    throw ParseError(source_, lineno_, column, msg);
  }

  void check_identifier(Token const& t) const {
    bool ok = !t.text.empty() && (std::isalpha(static_cast<unsigned char>(t.text[0])) || t.text[0] == '_');
    for (char c : t.text) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ok) fail(t.column, "invalid generator name '" + t.text + "'");
  }

  std::uint32_t gen_of(std::string const& name, std::size_t column) const {
    auto it = std::find(names_->begin(), names_->end(), name);
    if (it == names_->end()) fail(column, "undeclared generator '" + name + "'");
    return std::uint32_t(it - names_->begin());
  }

  static std::optional<std::int64_t> parse_int(std::string const& s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return std::nullopt;
    for (std::size_t k = i; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) return std::nullopt;
    if (s.size() > 18) return std::nullopt;
    return std::stoll(s);
  }

  Word parse_word(std::span<Token const> toks) const {
    std::vector<Syllable> syl;
    for (auto const& t : toks) {
      if (t.text == "1" && toks.size() == 1) return Word();
      auto caret = t.text.find('^');
      std::string name = t.text.substr(0, caret);
      std::int64_t exp = 1;
      if (caret != std::string::npos) {
        auto e = parse_int(t.text.substr(caret + 1));
        if (!e) fail(t.column + caret + 1, "bad exponent in '" + t.text + "'");
        exp = *e;
      }
      syl.push_back({gen_of(name, t.column), exp});
    }
    return Word(syl);
  }

  // deg N: x=a y=b
  Indexation parse_deg(std::string const& line, Presentation const& P) const {
    auto colon = line.find(':');
    if (colon == std::string::npos) fail(1, "expected 'deg N: name=value ...'");
    auto head = tokenize(line.substr(0, colon));
    if (head.size() != 2) fail(1, "expected 'deg N:'");
    auto n = parse_int(head[1].text);
    if (!n || *n < 0) fail(head[1].column, "modulus must be a non-negative integer");
    std::vector<std::optional<std::int64_t>> degs(P.num_gens());
    for (auto const& t : tokenize(line.substr(colon + 1), colon + 1)) {
      auto eq = t.text.find('=');
      if (eq == std::string::npos) fail(t.column, "expected name=value, got '" + t.text + "'");
      auto g = gen_of(t.text.substr(0, eq), t.column);
      auto v = parse_int(t.text.substr(eq + 1));
      if (!v) fail(t.column + eq + 1, "bad degree value");
      if (degs[g]) fail(t.column, "degree of '" + names_->at(g) + "' given twice");
      degs[g] = *v;
    }
    std::vector<std::int64_t> values;
    for (std::size_t i = 0; i < degs.size(); ++i) {
      if (!degs[i]) fail(colon + 1, "missing degree for generator '" + names_->at(i) + "'");
      values.push_back(*degs[i]);
    }
    Indexation idx(Count(*n), std::move(values));
    auto violations = validate_indexation(P, idx);
    if (!violations.empty()) fail(head[0].column, "invalid indexation: " + violations[0].message);
    return idx;
  }

  // W: w1, w2 ; order=N ; center=trivial|whole|cyclic:d[:word]
  SubgroupSpec parse_w(std::string const& line) const {
    auto colon = line.find(':');
    std::vector<std::pair<std::size_t, std::string>> parts;
    std::size_t start = colon + 1;
    for (std::size_t i = start; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ';') {
        parts.emplace_back(start, line.substr(start, i - start));
        start = i + 1;
      }
    }
    SubgroupSpec W;
    // Generator words, comma separated.
    {
      auto const& [off, text] = parts[0];
      std::size_t s = 0;
      for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
          auto toks = tokenize(text.substr(s, i - s), off + s);
          if (!toks.empty()) W.gen_words.push_back(parse_word(toks));
          else if (i < text.size() || s > 0) fail(off + s + 1, "empty word in W");
          s = i + 1;
        }
      }
    }
    for (std::size_t p = 1; p < parts.size(); ++p) {
      auto const& [off, text] = parts[p];
      auto toks = tokenize(text, off);
      if (toks.empty()) fail(off + 1, "empty W option");
      std::string const opt = text.substr(text.find_first_not_of(" \t"));
      std::size_t const col = toks[0].column;
      if (opt.starts_with("order=")) {
        if (toks.size() != 1) fail(col, "unexpected text after order");
        auto v = parse_int(toks[0].text.substr(6));
        if (!v || *v <= 0) fail(col + 6, "order must be a positive integer");
        if (W.known_order) fail(col, "order given twice");
        W.known_order = Count(*v);
      } else if (opt.starts_with("center=")) {
        if (W.center) fail(col, "center given twice");
        std::string val = opt.substr(7);
        while (!val.empty() && std::isspace(static_cast<unsigned char>(val.back()))) val.pop_back();
        CenterKnowledge c;
        if (val == "trivial") {
          c.kind = CenterKnowledge::Kind::trivial;
          c.order = 1;
        } else if (val == "whole") {
          c.kind = CenterKnowledge::Kind::whole;
        } else if (val.starts_with("cyclic:")) {
          c.kind = CenterKnowledge::Kind::cyclic;
          std::string rest = val.substr(7);
          auto c2 = rest.find(':');
          auto d = parse_int(rest.substr(0, c2));
          if (!d || *d <= 0) fail(col + 14, "cyclic center order must be positive");
          c.order = Count(*d);
          if (c2 != std::string::npos) {
            auto toks2 = tokenize(rest.substr(c2 + 1), col + 14 + c2);
            if (toks2.empty()) fail(col, "missing center generator word");
            c.generator = parse_word(toks2);
          }
        } else {
          fail(col + 7, "center must be trivial, whole or cyclic:d");
        }
        W.center = c;
      } else {
        fail(col, "unknown W option '" + toks[0].text + "'");
      }
    }
    return W;
  }

  std::istream& in_;
  std::string source_;
  std::size_t lineno_ = 0;
  std::optional<std::vector<std::string>> names_;
};

}  // namespace detail

/// Parses the line-oriented presentation format:
///
///     gens x y
///     rel x^3
///     rel y^5
///     deg 15: x=10 y=3
///     W: x ; order=3 ; center=whole
///     group A5
///
/// Blank lines and lines starting with '#' are ignored; any other unknown
/// directive is an error.
inline InputBundle parse_presentation(std::istream& in, std::string const& source) {
  return detail::PresentationParser(in, source).parse();
}

inline InputBundle parse_presentation(std::string const& text) {
  std::istringstream in(text);
  return parse_presentation(in, "<string>");
}

inline InputBundle parse_inputs(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  return parse_presentation(in, path);
}

}  // namespace ghw
