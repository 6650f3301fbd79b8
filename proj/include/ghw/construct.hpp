#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ghw/error.hpp"
#include "ghw/group.hpp"

namespace ghw {

/// A permutation of the points 1..degree, stored 0-based.
///
/// Products apply the left factor first: (p * q)(x) = q(p(x)). With this
/// convention (1 2)(2 3) = (1 3 2).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree) : img_(degree) {
    for (std::size_t i = 0; i < degree; ++i) img_[i] = std::uint32_t(i);
  }

  /// `images[i]` is the 0-based image of point i.
  static Permutation from_images(std::vector<std::uint32_t> images) {
    std::vector<char> seen(images.size(), 0);
    for (auto v : images) {
      if (v >= images.size() || seen[v]++)
        throw Error(ErrorKind::BadPermutation, "image list is not a bijection");
    }
    Permutation p;
    p.img_ = std::move(images);
    return p;
  }

  /// Cycle notation with 1-based points, e.g. "(1 2 3)(4 5)" or "(1,2)";
  /// "()" is the identity. The result is padded to at least `degree` points.
  static Permutation parse_cycles(std::string_view text, std::size_t degree = 0);

  std::size_t degree() const noexcept { return img_.size(); }
  std::uint32_t operator()(std::uint32_t point) const { return img_.at(point); }
  std::vector<std::uint32_t> const& images() const noexcept { return img_; }

  Permutation extended(std::size_t degree) const {
    Permutation p = *this;
    for (std::size_t i = p.img_.size(); i < degree; ++i) p.img_.push_back(std::uint32_t(i));
    return p;
  }

  friend Permutation operator*(Permutation const& p, Permutation const& q) {
    std::size_t const d = std::max(p.degree(), q.degree());
    Permutation a = p.extended(d), b = q.extended(d);
    Permutation r(d);
    for (std::size_t x = 0; x < d; ++x) r.img_[x] = b.img_[a.img_[x]];
    return r;
  }

  friend bool operator==(Permutation const&, Permutation const&) = default;
  friend auto operator<=>(Permutation const&, Permutation const&) = default;

  bool is_even() const {
    std::vector<char> seen(degree(), 0);
    std::size_t transpositions = 0;
    for (std::size_t i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = img_[j]) {
        seen[j] = 1;
        ++len;
      }
      transpositions += len - 1;
    }
    return transpositions % 2 == 0;
  }

  /// Cycle notation; points are separated by spaces only when degree > 9.
  std::string to_cycles() const {
    std::string out;
    std::vector<char> seen(degree(), 0);
    bool const spaced = degree() > 9;
    for (std::size_t i = 0; i < degree(); ++i) {
      if (seen[i] || img_[i] == i) continue;
      out += '(';
      bool first = true;
      for (std::size_t j = i; !seen[j]; j = img_[j]) {
        seen[j] = 1;
        if (!first && spaced) out += ' ';
        out += std::to_string(j + 1);
        first = false;
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

 private:
  std::vector<std::uint32_t> img_;
};

inline Permutation Permutation::parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw Error(ErrorKind::BadPermutation, "empty permutation text");
  while (i < text.size()) {
    if (text[i] != '(') throw Error(ErrorKind::BadPermutation, "expected '(' in \"" + std::string(text) + "\"");
    ++i;
    std::vector<std::uint32_t> cyc;
    for (;;) {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
      if (i == text.size()) throw Error(ErrorKind::BadPermutation, "unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw Error(ErrorKind::BadPermutation, "unexpected character in \"" + std::string(text) + "\"");
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + std::uint64_t(text[i] - '0');
        if (v > 100000) throw Error(ErrorKind::BadPermutation, "point too large");
        ++i;
      }
      if (v == 0) throw Error(ErrorKind::BadPermutation, "points are numbered from 1");
      cyc.push_back(std::uint32_t(v - 1));
    }
    cycles.push_back(std::move(cyc));
    skip_ws();
  }
  std::size_t d = degree;
  for (auto const& c : cycles)
    for (auto v : c) d = std::max<std::size_t>(d, v + 1);
  std::vector<std::uint32_t> img(d);
  for (std::size_t k = 0; k < d; ++k) img[k] = std::uint32_t(k);
  std::vector<char> moved(d, 0);
  for (auto const& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (moved[c[k]]++) throw Error(ErrorKind::BadPermutation, "point " + std::to_string(c[k] + 1) + " repeated");
      img[c[k]] = c[(k + 1) % c.size()];
    }
  }
  return from_images(std::move(img));
}

/// Descriptors for the supported group constructions.
struct GroupSpec;

namespace spec {
struct Cyclic { std::uint32_t n; };
/// Dihedral group of order 2n.
struct Dihedral { std::uint32_t n; };
struct Symmetric { std::uint32_t n; };
struct Alternating { std::uint32_t n; };
struct Quaternion8 {};
struct DirectProduct { std::vector<GroupSpec> factors; };
struct Permutations { std::vector<Permutation> generators; };
struct PermutationFile { std::string path; };
struct CayleyFile { std::string path; };
}  // namespace spec

struct GroupSpec {
  std::variant<spec::Cyclic, spec::Dihedral, spec::Symmetric, spec::Alternating, spec::Quaternion8,
               spec::DirectProduct, spec::Permutations, spec::PermutationFile, spec::CayleyFile>
      value;
};

std::string to_string(GroupSpec const& s);

namespace detail {

/// Closes a set of permutations into a group table. Elements are ordered
/// lexicographically by image list, so the identity comes first.
inline FiniteGroup group_from_permutations(std::vector<Permutation> gens, std::string name,
                                           Limits const& limits) {
  std::size_t degree = 1;
  for (auto const& g : gens) degree = std::max(degree, g.degree());
  for (auto& g : gens) g = g.extended(degree);

  std::map<Permutation, Elem> index;
  std::vector<Permutation> elems{Permutation(degree)};
  index.emplace(elems[0], 0);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (auto const& g : gens) {
      Permutation p = elems[i] * g;
      if (index.emplace(p, Elem(elems.size())).second) {
        elems.push_back(std::move(p));
        if (elems.size() > limits.order_cap)
          throw Error(ErrorKind::OrderCapExceeded,
                      name + " has order above the cap " + std::to_string(limits.order_cap));
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  Elem k = 0;
  for (auto const& p : elems) index[p] = k++;

  std::size_t const n = elems.size();
  std::vector<Elem> mul(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = index.at(elems[a] * elems[b]);
  std::vector<std::string> labels;
  for (auto const& p : elems) labels.push_back(p.to_cycles());
  return FiniteGroup::from_table(std::move(mul), std::move(labels), std::move(name),
                                 TableOrigin::constructed, limits);
}

inline std::string power_label(char base, std::uint32_t k) {
  if (k == 0) return "";
  if (k == 1) return std::string(1, base);
  return std::string(1, base) + "^" + std::to_string(k);
}

}  // namespace detail

/// Labels: "e", "a", "a^2", ...
inline FiniteGroup cyclic_group(std::uint32_t n, Limits const& limits = {}) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "cyclic group order must be positive");
  if (n > limits.order_cap) throw Error(ErrorKind::OrderCapExceeded, "C" + std::to_string(n));
  std::vector<Elem> mul(std::size_t(n) * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) mul[std::size_t(a) * n + b] = (a + b) % n;
  std::vector<std::string> labels{"e"};
  for (std::uint32_t k = 1; k < n; ++k) labels.push_back(detail::power_label('a', k));
  return FiniteGroup::from_table(std::move(mul), std::move(labels), "C" + std::to_string(n),
                                 TableOrigin::constructed, limits);
}

/// Symmetries of the regular n-gon, order 2n. Elements r^i s^j, labels
/// "e", "r", "r^2", ..., "s", "rs", "r^2s", ...
inline FiniteGroup dihedral_group(std::uint32_t n, Limits const& limits = {}) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "dihedral parameter must be positive");
  std::size_t const order = 2 * std::size_t(n);
  if (order > limits.order_cap) throw Error(ErrorKind::OrderCapExceeded, "D" + std::to_string(n));
  auto idx = [n](std::uint32_t i, std::uint32_t j) { return Elem(j * n + i); };
  std::vector<Elem> mul(order * order);
  for (std::uint32_t j1 = 0; j1 < 2; ++j1)
    for (std::uint32_t i1 = 0; i1 < n; ++i1)
      for (std::uint32_t j2 = 0; j2 < 2; ++j2)
        for (std::uint32_t i2 = 0; i2 < n; ++i2) {
          // s r^i = r^-i s
          std::uint32_t i = j1 ? (i1 + n - i2) % n : (i1 + i2) % n;
          mul[std::size_t(idx(i1, j1)) * order + idx(i2, j2)] = idx(i, (j1 + j2) % 2);
        }
  std::vector<std::string> labels(order);
  for (std::uint32_t j = 0; j < 2; ++j)
    for (std::uint32_t i = 0; i < n; ++i) {
      std::string l = detail::power_label('r', i) + (j ? "s" : "");
      labels[idx(i, j)] = l.empty() ? "e" : l;
    }
  return FiniteGroup::from_table(std::move(mul), std::move(labels), "D" + std::to_string(n),
                                 TableOrigin::constructed, limits);
}

inline FiniteGroup symmetric_group(std::uint32_t n, Limits const& limits = {}) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "symmetric group degree must be positive");
  std::vector<Permutation> gens;
  if (n >= 2) {
    gens.push_back(Permutation::parse_cycles("(1 2)", n));
    std::vector<std::uint32_t> img(n);
    for (std::uint32_t i = 0; i < n; ++i) img[i] = (i + 1) % n;
    gens.push_back(Permutation::from_images(img));
  } else {
    gens.push_back(Permutation(1));
  }
  return detail::group_from_permutations(gens, "S" + std::to_string(n), limits);
}

/// Generated by the 3-cycles (1 2 k), k = 3..n.
inline FiniteGroup alternating_group(std::uint32_t n, Limits const& limits = {}) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "alternating group degree must be positive");
  std::vector<Permutation> gens{Permutation(n)};
  for (std::uint32_t k = 3; k <= n; ++k)
    gens.push_back(Permutation::parse_cycles("(1 2 " + std::to_string(k) + ")", n));
  return detail::group_from_permutations(gens, "A" + std::to_string(n), limits);
}

/// Labels "1", "-1", "i", "-i", "j", "-j", "k", "-k".
inline FiniteGroup quaternion_group(Limits const& limits = {}) {
  // Element (sign, unit) with unit 0..3 = 1, i, j, k; index = 2*unit + sign.
  static constexpr int unit_mul[4][4][2] = {
      // {result unit, negate}
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
      {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
      {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
  };
  std::vector<Elem> mul(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      auto [u, neg] = std::pair{unit_mul[a / 2][b / 2][0], unit_mul[a / 2][b / 2][1]};
      int sign = (a % 2) ^ (b % 2) ^ neg;
      mul[a * 8 + b] = Elem(2 * u + sign);
    }
  std::vector<std::string> labels{"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  return FiniteGroup::from_table(std::move(mul), std::move(labels), "Q8", TableOrigin::constructed,
                                 limits);
}

/// Labels "[a,b,...]" built from the factor labels.
inline FiniteGroup direct_product(std::vector<FiniteGroup> const& factors, std::string name,
                                  Limits const& limits = {}) {
  if (factors.empty()) throw Error(ErrorKind::InvalidArgument, "direct product needs factors");
  std::size_t order = 1;
  for (auto const& f : factors) {
    order *= f.order();
    if (order > limits.order_cap) throw Error(ErrorKind::OrderCapExceeded, name);
  }
  // Mixed radix with the first factor most significant.
  auto split = [&](std::size_t x) {
    std::vector<Elem> parts(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      parts[i] = Elem(x % factors[i].order());
      x /= factors[i].order();
    }
    return parts;
  };
  auto join_idx = [&](std::vector<Elem> const& parts) {
    std::size_t x = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) x = x * factors[i].order() + parts[i];
    return Elem(x);
  };
  std::vector<Elem> mul(order * order);
  for (std::size_t a = 0; a < order; ++a) {
    auto pa = split(a);
    for (std::size_t b = 0; b < order; ++b) {
      auto pb = split(b);
      std::vector<Elem> pc(factors.size());
      for (std::size_t i = 0; i < factors.size(); ++i) pc[i] = factors[i].mul(pa[i], pb[i]);
      mul[a * order + b] = join_idx(pc);
    }
  }
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < order; ++x) {
    auto p = split(x);
    std::string l = "[";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) l += ',';
      l += factors[i].label(p[i]);
    }
    labels.push_back(l + "]");
  }
  return FiniteGroup::from_table(std::move(mul), std::move(labels), std::move(name),
                                 TableOrigin::constructed, limits);
}

/// Cayley-table text: line 1 is the order N, the next N lines are the rows of
/// the multiplication table, optionally followed by `label i name` lines.
inline FiniteGroup parse_cayley_table(std::istream& in, std::string const& source,
                                      Limits const& limits = {}) {
  std::string line;
  std::size_t lineno = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_content_line()) throw ParseError(source, 1, 1, "missing order line");
  std::size_t order = 0;
  {
    std::istringstream ls(line);
    long long v;
    std::string extra;
    if (!(ls >> v) || v <= 0 || (ls >> extra)) throw ParseError(source, lineno, 1, "expected a positive order");
    order = std::size_t(v);
  }
  if (order > limits.order_cap)
    throw Error(ErrorKind::OrderCapExceeded, source + ": order " + std::to_string(order));
  std::vector<Elem> mul;
  mul.reserve(order * order);
  for (std::size_t r = 0; r < order; ++r) {
    if (!next_content_line()) throw ParseError(source, lineno + 1, 1, "missing table row " + std::to_string(r));
    std::istringstream ls(line);
    std::string tok;
    std::size_t count = 0;
    while (ls >> tok) {
      std::size_t col = line.find(tok) + 1;
      char* end = nullptr;
      long long v = std::strtoll(tok.c_str(), &end, 10);
      if (*end != '\0' || v < 0 || std::size_t(v) >= order)
        throw ParseError(source, lineno, col, "bad table entry '" + tok + "'");
      mul.push_back(Elem(v));
      ++count;
    }
    if (count != order)
      throw ParseError(source, lineno, 1, "row has " + std::to_string(count) + " entries, expected " +
                                              std::to_string(order));
  }
  std::vector<std::string> labels(order);
  for (std::size_t i = 0; i < order; ++i) labels[i] = std::to_string(i);
  while (next_content_line()) {
    std::istringstream ls(line);
    std::string kw, name, extra;
    long long i;
    if (!(ls >> kw) || kw != "label") throw ParseError(source, lineno, 1, "expected 'label i name'");
    if (!(ls >> i) || i < 0 || std::size_t(i) >= order) throw ParseError(source, lineno, 7, "bad label index");
    if (!(ls >> name) || (ls >> extra)) throw ParseError(source, lineno, 1, "expected 'label i name'");
    labels[std::size_t(i)] = name;
  }
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError(source, lineno, 1, "duplicate element labels");
  return FiniteGroup::from_table(std::move(mul), std::move(labels), "cayley:" + source,
                                 TableOrigin::untrusted, limits);
}

inline void write_cayley_table(std::ostream& out, FiniteGroup const& G) {
  out << G.order() << '\n';
  for (Elem a = 0; a < G.order(); ++a) {
    for (Elem b = 0; b < G.order(); ++b) out << (b ? " " : "") << G.mul(a, b);
    out << '\n';
  }
  for (Elem a = 0; a < G.order(); ++a) out << "label " << a << ' ' << G.label(a) << '\n';
}

/// One cycle-notation permutation per non-blank line.
inline std::vector<Permutation> parse_permutation_file(std::istream& in, std::string const& source) {
  std::vector<Permutation> gens;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      gens.push_back(Permutation::parse_cycles(line));
    } catch (Error const& e) {
      throw ParseError(source, lineno, 1, e.what());
    }
  }
  if (gens.empty()) throw ParseError(source, lineno + 1, 1, "no permutations");
  return gens;
}

inline FiniteGroup build_group(GroupSpec const& s, Limits const& limits = {}) {
  return std::visit(
      [&](auto const& v) -> FiniteGroup {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, spec::Cyclic>) {
          return cyclic_group(v.n, limits);
        } else if constexpr (std::is_same_v<T, spec::Dihedral>) {
          return dihedral_group(v.n, limits);
        } else if constexpr (std::is_same_v<T, spec::Symmetric>) {
          return symmetric_group(v.n, limits);
        } else if constexpr (std::is_same_v<T, spec::Alternating>) {
          return alternating_group(v.n, limits);
        } else if constexpr (std::is_same_v<T, spec::Quaternion8>) {
          return quaternion_group(limits);
        } else if constexpr (std::is_same_v<T, spec::DirectProduct>) {
          std::vector<FiniteGroup> fs;
          for (auto const& f : v.factors) fs.push_back(build_group(f, limits));
          return direct_product(fs, to_string(s), limits);
        } else if constexpr (std::is_same_v<T, spec::Permutations>) {
          if (v.generators.empty()) throw Error(ErrorKind::InvalidArgument, "no generators");
          return detail::group_from_permutations(v.generators, to_string(s), limits);
        } else if constexpr (std::is_same_v<T, spec::PermutationFile>) {
          std::ifstream in(v.path);
          if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + v.path);
          return detail::group_from_permutations(parse_permutation_file(in, v.path), to_string(s), limits);
        } else {
          std::ifstream in(v.path);
          if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + v.path);
          return parse_cayley_table(in, v.path, limits);
        }
      },
      s.value);
}

inline std::string to_string(GroupSpec const& s) {
  return std::visit(
      [](auto const& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, spec::Cyclic>) return "C" + std::to_string(v.n);
        else if constexpr (std::is_same_v<T, spec::Dihedral>) return "D" + std::to_string(v.n);
        else if constexpr (std::is_same_v<T, spec::Symmetric>) return "S" + std::to_string(v.n);
        else if constexpr (std::is_same_v<T, spec::Alternating>) return "A" + std::to_string(v.n);
        else if constexpr (std::is_same_v<T, spec::Quaternion8>) return "Q8";
        else if constexpr (std::is_same_v<T, spec::DirectProduct>) {
          std::string out;
          for (auto const& f : v.factors) out += (out.empty() ? "" : "x") + to_string(f);
          return out;
        } else if constexpr (std::is_same_v<T, spec::Permutations>) {
          std::string out = "perm:";
          for (std::size_t i = 0; i < v.generators.size(); ++i)
            out += (i ? ";" : "") + v.generators[i].to_cycles();
          return out;
        } else if constexpr (std::is_same_v<T, spec::PermutationFile>) {
          return "permfile:" + v.path;
        } else {
          return "cayley:" + v.path;
        }
      },
      s.value);
}

/// Parses descriptors such as "C6", "D4" (order 8), "S4", "A5", "Q8",
/// "C3xS3", "perm:(1 2 3);(1 2)", "permfile:<path>", "cayley:<path>".
inline GroupSpec parse_group_spec(std::string_view text) {
  auto bad = [&](std::string const& why) {
    return Error(ErrorKind::InvalidArgument, "bad group spec '" + std::string(text) + "': " + why);
  };
  if (text.starts_with("perm:")) {
    spec::Permutations p;
    std::string_view rest = text.substr(5);
    while (!rest.empty()) {
      auto pos = rest.find(';');
      p.generators.push_back(Permutation::parse_cycles(rest.substr(0, pos)));
      if (pos == std::string_view::npos) break;
      rest = rest.substr(pos + 1);
    }
    if (p.generators.empty()) throw bad("no generators");
    return {p};
  }
  if (text.starts_with("permfile:")) return {spec::PermutationFile{std::string(text.substr(9))}};
  if (text.starts_with("cayley:")) return {spec::CayleyFile{std::string(text.substr(7))}};

  std::vector<GroupSpec> factors;
  std::string_view rest = text;
  while (true) {
    auto pos = rest.find('x');
    std::string_view tok = rest.substr(0, pos);
    if (tok == "Q8") {
      factors.push_back({spec::Quaternion8{}});
    } else {
      if (tok.size() < 2) throw bad("unknown factor '" + std::string(tok) + "'");
      std::uint32_t n = 0;
      for (char c : tok.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw bad("expected a number after '" + std::string(1, tok[0]) + "'");
        n = n * 10 + std::uint32_t(c - '0');
        if (n > 100000) throw bad("parameter too large");
      }
      if (n == 0) throw bad("parameter must be positive");
      switch (tok[0]) {
        case 'C': factors.push_back({spec::Cyclic{n}}); break;
        case 'D': factors.push_back({spec::Dihedral{n}}); break;
        case 'S': factors.push_back({spec::Symmetric{n}}); break;
        case 'A': factors.push_back({spec::Alternating{n}}); break;
        default: throw bad("unknown family '" + std::string(1, tok[0]) + "'");
      }
    }
    if (pos == std::string_view::npos) break;
    rest = rest.substr(pos + 1);
  }
  if (factors.size() == 1) return factors.front();
  return {spec::DirectProduct{std::move(factors)}};
}

inline FiniteGroup build_group(std::string_view text, Limits const& limits = {}) {
  return build_group(parse_group_spec(text), limits);
}

}  // namespace ghw
