#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghw/error.hpp"
#include "ghw/group.hpp"
#include "ghw/numeric.hpp"
#include "ghw/snf.hpp"

namespace ghw {

struct Syllable {
  std::uint32_t gen;
  std::int64_t exp;
  friend bool operator==(Syllable const&, Syllable const&) = default;
};

/// A freely reduced word in the generators: no zero exponents and no two
/// adjacent syllables on the same generator. Reduction happens on construction.
class Word {
 public:
  Word() = default;

  explicit Word(std::vector<Syllable> const& syllables) {
    for (Syllable s : syllables) push(s);
  }

  static Word generator(std::uint32_t gen, std::int64_t exp = 1) { return Word({{gen, exp}}); }

  std::span<Syllable const> syllables() const noexcept { return syl_; }
  bool empty() const noexcept { return syl_.empty(); }

  Word inverse() const {
    Word w;
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) w.push({it->gen, checked_neg(it->exp)});
    return w;
  }

  Word pow(std::int64_t e) const {
    Word base = e < 0 ? inverse() : *this;
    std::int64_t k = e < 0 ? checked_neg(e) : e;
    if (base.syl_.size() == 1) return Word::generator(base.syl_[0].gen, checked_mul(base.syl_[0].exp, k));
    Word out;
    for (std::int64_t i = 0; i < k; ++i) out = out * base;
    return out;
  }

  friend Word operator*(Word const& a, Word const& b) {
    Word w = a;
    for (Syllable s : b.syl_) w.push(s);
    return w;
  }

  friend bool operator==(Word const&, Word const&) = default;

  /// Exponent sum of each generator.
  std::vector<std::int64_t> exponent_sums(std::size_t num_gens) const {
    std::vector<std::int64_t> v(num_gens, 0);
    for (Syllable s : syl_) v.at(s.gen) = checked_add(v.at(s.gen), s.exp);
    return v;
  }

  std::optional<std::uint32_t> max_generator() const {
    if (syl_.empty()) return std::nullopt;
    std::uint32_t m = 0;
    for (Syllable s : syl_) m = std::max(m, s.gen);
    return m;
  }

 private:
  void push(Syllable s) {
    if (s.exp == 0) return;
    if (!syl_.empty() && syl_.back().gen == s.gen) {
      syl_.back().exp = checked_add(syl_.back().exp, s.exp);
      if (syl_.back().exp == 0) syl_.pop_back();
    } else {
      syl_.push_back(s);
    }
  }

  std::vector<Syllable> syl_;
};

/// Structural classification of a presentation, inferred from its relators.
struct ShapeTag {
  enum class Kind { free, free_product_of_cyclics, generic };
  Kind kind = Kind::generic;
  /// For free / free_product_of_cyclics: one order per generator, 0 meaning
  /// an infinite cyclic factor.
  std::vector<std::uint64_t> orders;

  /// Number of factors other than the trivial group.
  std::size_t nontrivial_factors() const {
    return std::size_t(std::count_if(orders.begin(), orders.end(), [](auto k) { return k != 1; }));
  }
};

/// A finitely presented group ⟨gens | relators⟩.
class Presentation {
 public:
  Presentation(std::vector<std::string> gen_names, std::vector<Word> relators)
      : names_(std::move(gen_names)), relators_(std::move(relators)) {
    if (names_.empty()) throw Error(ErrorKind::InvalidArgument, "presentation needs at least one generator");
    for (auto const& r : relators_)
      if (auto m = r.max_generator(); m && *m >= names_.size())
        throw Error(ErrorKind::InvalidArgument, "relator uses an undeclared generator");
    shape_ = infer_shape();
  }

  /// ⟨x1, ..., xm | x1^k1, ..., xm^km⟩ with ki = 0 meaning no relator.
  /// Generators are named x, y, z for m <= 3 and x1..xm otherwise.
  static Presentation free_product_of_cyclics(std::vector<std::uint64_t> const& orders) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < orders.size(); ++i)
      names.push_back(orders.size() <= 3 ? std::string(1, "xyz"[i]) : "x" + std::to_string(i + 1));
    std::vector<Word> rels;
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (orders[i] != 0) rels.push_back(Word::generator(std::uint32_t(i), std::int64_t(orders[i])));
    return Presentation(std::move(names), std::move(rels));
  }

  std::size_t num_gens() const noexcept { return names_.size(); }
  std::vector<std::string> const& gen_names() const noexcept { return names_; }
  std::vector<Word> const& relators() const noexcept { return relators_; }
  ShapeTag const& shape() const noexcept { return shape_; }

  std::optional<std::uint32_t> gen_index(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return std::uint32_t(it - names_.begin());
  }

  std::string word_to_string(Word const& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (Syllable s : w.syllables()) {
      if (!out.empty()) out += ' ';
      out += names_[s.gen];
      if (s.exp != 1) out += "^" + std::to_string(s.exp);
    }
    return out;
  }

  std::string to_string() const {
    std::string out = "<";
    for (std::size_t i = 0; i < names_.size(); ++i) out += (i ? "," : "") + names_[i];
    out += " |";
    for (std::size_t i = 0; i < relators_.size(); ++i) out += (i ? ", " : " ") + word_to_string(relators_[i]);
    return out + ">";
  }

 private:
  ShapeTag infer_shape() const {
    ShapeTag tag;
    tag.orders.assign(names_.size(), 0);
    if (relators_.empty()) {
      tag.kind = ShapeTag::Kind::free;
      return tag;
    }
    for (auto const& r : relators_) {
      if (r.syllables().size() != 1 || tag.orders[r.syllables()[0].gen] != 0) return {};
      std::int64_t e = r.syllables()[0].exp;
      tag.orders[r.syllables()[0].gen] = std::uint64_t(e < 0 ? -e : e);
    }
    tag.kind = ShapeTag::Kind::free_product_of_cyclics;
    return tag;
  }

  std::vector<std::string> names_;
  std::vector<Word> relators_;
  ShapeTag shape_;
};

/// Declared knowledge of Z(W). Computing the center of an arbitrary finitely
/// presented subgroup is undecidable, so it is supplied by the user.
struct CenterKnowledge {
  enum class Kind { trivial, whole, cyclic };
  Kind kind = Kind::trivial;
  Count order = 0;                // for cyclic: |Z(W)|
  std::optional<Word> generator;  // for cyclic: a word generating Z(W)
};

/// A subgroup W of F given by generating words.
struct SubgroupSpec {
  std::vector<Word> gen_words;
  std::optional<Count> known_order;
  std::optional<CenterKnowledge> center;

  /// W = F, generated by every generator.
  static SubgroupSpec whole(Presentation const& P) {
    SubgroupSpec w;
    for (std::uint32_t i = 0; i < P.num_gens(); ++i) w.gen_words.push_back(Word::generator(i));
    return w;
  }
};

/// deg: F -> Z_n given on generators. Degrees are stored reduced to [0, n)
/// when n > 0.
struct Indexation {
  Count n = 0;
  std::vector<std::int64_t> degrees;

  Indexation() = default;
  Indexation(Count modulus, std::vector<std::int64_t> degs) : n(modulus), degrees(std::move(degs)) {
    if (n > 0)
      for (auto& d : degrees) d = mod_floor(d, std::int64_t(n));
  }
};

struct AbelianInvariants {
  std::vector<std::int64_t> torsion;  // d1 | d2 | ..., each > 1
  std::size_t free_rank = 0;
  friend bool operator==(AbelianInvariants const&, AbelianInvariants const&) = default;
};

/// φ(w) for the homomorphism sending generator i to images[i].
inline Elem word_eval(Word const& w, std::span<Elem const> images, FiniteGroup const& G) {
  Elem acc = G.identity();
  for (Syllable s : w.syllables()) acc = G.mul(acc, G.pow(images[s.gen], s.exp));
  return acc;
}

namespace detail {

inline AbelianInvariants invariants_of_rows(IntMatrix rows, std::size_t cols) {
  auto diag = smith_invariant_factors(std::move(rows), cols);
  AbelianInvariants inv;
  inv.free_rank = cols - diag.size();
  for (auto d : diag)
    if (d > 1) inv.torsion.push_back(d);
  return inv;
}

inline IntMatrix relation_matrix(Presentation const& P, std::span<Word const> extra) {
  IntMatrix rows;
  for (auto const& r : P.relators()) rows.push_back(r.exponent_sums(P.num_gens()));
  for (auto const& w : extra) rows.push_back(w.exponent_sums(P.num_gens()));
  return rows;
}

}  // namespace detail

/// F/F' via Smith normal form of the relator exponent-sum matrix.
inline AbelianInvariants abelianization(Presentation const& P) {
  return detail::invariants_of_rows(detail::relation_matrix(P, {}), P.num_gens());
}

/// exp of an abelian group; 0 when it is infinite.
inline Count exp_of_invariants(AbelianInvariants const& inv) {
  if (inv.free_rank > 0) return 0;
  if (inv.torsion.empty()) return 1;
  return Count(inv.torsion.back());
}

/// exp(F / (F' N)) where N is generated by `words`.
inline Count exp_mod_words(Presentation const& P, std::span<Word const> words) {
  return exp_of_invariants(detail::invariants_of_rows(detail::relation_matrix(P, words), P.num_gens()));
}

/// exp(F / (F'W)).
inline Count exp_mod_subgroup(Presentation const& P, SubgroupSpec const& W) {
  return exp_mod_words(P, W.gen_words);
}

/// Σ exponent × degree, reduced mod n (a plain integer when n = 0).
inline std::int64_t deg_of_word(Indexation const& idx, Word const& w) {
  std::int64_t d = 0;
  for (Syllable s : w.syllables()) {
    std::int64_t term = checked_mul(s.exp, idx.degrees.at(s.gen));
    d = checked_add(d, idx.n > 0 ? mod_floor(term, std::int64_t(idx.n)) : term);
    if (idx.n > 0) d = mod_floor(d, std::int64_t(idx.n));
  }
  return d;
}

struct IndexationViolation {
  enum class Kind { wrong_arity, relator_degree, not_surjective };
  Kind kind;
  std::size_t relator = 0;  // for relator_degree
  std::string message;
};

/// Checks that deg is a well-defined epimorphism F -> Z_n. Returns every
/// violation found (empty means valid).
inline std::vector<IndexationViolation> validate_indexation(Presentation const& P, Indexation const& idx) {
  std::vector<IndexationViolation> out;
  if (idx.degrees.size() != P.num_gens()) {
    out.push_back({IndexationViolation::Kind::wrong_arity, 0,
                   "expected " + std::to_string(P.num_gens()) + " degrees, got " +
                       std::to_string(idx.degrees.size())});
    return out;
  }
  for (std::size_t i = 0; i < P.relators().size(); ++i) {
    std::int64_t d = deg_of_word(idx, P.relators()[i]);
    if (d != 0)
      out.push_back({IndexationViolation::Kind::relator_degree, i,
                     "relator " + P.word_to_string(P.relators()[i]) + " has degree " + std::to_string(d) +
                         (idx.n ? " mod " + std::to_string(idx.n) : "")});
  }
  std::int64_t g = std::int64_t(idx.n);
  for (auto d : idx.degrees) g = std::gcd(g, d);
  if (g != 1)
    out.push_back({IndexationViolation::Kind::not_surjective, 0,
                   "degrees generate a proper subgroup (gcd " + std::to_string(g) + ")"});
  return out;
}

/// k with deg(W) = kZ_n. For trivial deg(W) and n > 0 this is n itself.
inline Count deg_subgroup_index(Indexation const& idx, SubgroupSpec const& W) {
  std::int64_t g = std::int64_t(idx.n);
  for (auto const& w : W.gen_words) g = std::gcd(g, deg_of_word(idx, w));
  return Count(g < 0 ? -g : g);
}

/// A word of degree 1 built from a Bézout combination of the generators.
inline Word degree_one_word(Indexation const& idx) {
  if (idx.n == 1) return Word();
  std::int64_t g = std::int64_t(idx.n);
  std::vector<std::int64_t> coef(idx.degrees.size(), 0);
  for (std::size_t i = 0; i < idx.degrees.size(); ++i) {
    auto [ng, a, b] = extended_gcd(g, idx.degrees[i]);
    if (ng == g) continue;
    for (auto& c : coef) c = checked_mul(c, a);
    coef[i] = checked_add(coef[i], b);
    if (idx.n > 0)
      for (auto& c : coef) c = mod_floor(c, std::int64_t(idx.n));
    g = ng;
  }
  if (g != 1) throw Error(ErrorKind::BadDegree, "indexation is not surjective; no element of degree 1");
  std::vector<Syllable> syl;
  for (std::size_t i = 0; i < coef.size(); ++i)
    if (coef[i] != 0) syl.push_back({std::uint32_t(i), coef[i]});
  Word w(syl);
  if (deg_of_word(idx, w) != (idx.n == 1 ? 0 : 1))
    throw Error(ErrorKind::BadDegree, "Bezout construction failed");
  return w;
}

namespace detail {

// True iff the words are exactly the generators of P, each once.
inline bool is_all_generators(Presentation const& P, std::vector<Word> const& words) {
  if (words.size() != P.num_gens()) return false;
  std::vector<char> seen(P.num_gens(), 0);
  for (auto const& w : words) {
    if (w.syllables().size() != 1 || std::abs(w.syllables()[0].exp) != 1) return false;
    if (seen[w.syllables()[0].gen]++) return false;
  }
  return true;
}

}  // namespace detail

/// Center knowledge for W: the declared descriptor, or trivial when W = F is
/// a free product of at least two nontrivial cyclic groups.
inline std::optional<CenterKnowledge> effective_center(Presentation const& P, SubgroupSpec const& W) {
  if (W.center) return W.center;
  auto const& shape = P.shape();
  if (shape.kind != ShapeTag::Kind::generic && shape.nontrivial_factors() >= 2 &&
      detail::is_all_generators(P, W.gen_words))
    return CenterKnowledge{CenterKnowledge::Kind::trivial, 1, std::nullopt};
  return std::nullopt;
}

/// Generating words of Z(W), when known.
inline std::optional<std::vector<Word>> center_words(Presentation const& P, SubgroupSpec const& W) {
  auto c = effective_center(P, W);
  if (!c) return std::nullopt;
  switch (c->kind) {
    case CenterKnowledge::Kind::trivial: return std::vector<Word>{};
    case CenterKnowledge::Kind::whole: return W.gen_words;
    case CenterKnowledge::Kind::cyclic:
      if (!c->generator) return std::nullopt;
      return std::vector<Word>{*c->generator};
  }
  return std::nullopt;
}

enum class MarginalCheck { ok, not_applicable, violation };

/// Whether deg vanishes on {w in Z(W) : w^n = 1}. Only decidable for the
/// supported center shapes; otherwise not_applicable.
inline MarginalCheck marginal_degree_check(Presentation const& P, SubgroupSpec const& W, Indexation const& idx) {
  auto c = effective_center(P, W);
  if (!c) return MarginalCheck::not_applicable;
  Count d = 0;
  Word u;
  switch (c->kind) {
    case CenterKnowledge::Kind::trivial:
      return MarginalCheck::ok;
    case CenterKnowledge::Kind::whole:
      if (W.gen_words.empty()) return MarginalCheck::ok;
      if (W.gen_words.size() != 1 || !W.known_order) return MarginalCheck::not_applicable;
      d = *W.known_order;
      u = W.gen_words[0];
      break;
    case CenterKnowledge::Kind::cyclic:
      if (!c->generator || c->order == 0) return MarginalCheck::not_applicable;
      d = c->order;
      u = *c->generator;
      break;
  }
  // u^j has (u^j)^n = 1 iff j is a multiple of d / gcd(d, n).
  std::int64_t const delta = deg_of_word(idx, u);
  Count const step = d / std::gcd(d, idx.n);
  if (step >= d) return MarginalCheck::ok;  // only j = 0
  if (idx.n == 0) return delta == 0 ? MarginalCheck::ok : MarginalCheck::violation;
  std::int64_t v = mod_floor(checked_mul(std::int64_t(step), delta), std::int64_t(idx.n));
  return v == 0 ? MarginalCheck::ok : MarginalCheck::violation;
}

}  // namespace ghw
