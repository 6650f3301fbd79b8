#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ghw/error.hpp"
#include "ghw/numeric.hpp"

namespace ghw {

/// Index of an element inside its FiniteGroup. Index 0 is always the identity.
using Elem = std::uint32_t;

/// Size limits shared by the constructors and the exhaustive algorithms.
struct Limits {
  std::size_t order_cap = 360;       // largest group any constructor may build
  std::size_t subgroup_cap = 128;    // largest group whose lattice we enumerate
  std::size_t validation_cap = 256;  // associativity is checked up to this order
};

/// Where a multiplication table came from. Tables read from disk are always
/// fully validated; tables produced by a trusted construction (permutation
/// composition, direct products) skip the cubic associativity check above
/// Limits::validation_cap.
enum class TableOrigin { untrusted, constructed };

class Subgroup;

/// A finite group given by its multiplication table. Immutable and cheap to
/// copy: copies share the underlying table.
class FiniteGroup {
 public:
  /// `mul` is row-major, mul[a * order + b] = a*b. The identity may sit at any
  /// index; it is moved to index 0 (swapping with whatever was there).
  static FiniteGroup from_table(std::vector<Elem> mul, std::vector<std::string> labels,
                                std::string name, TableOrigin origin = TableOrigin::untrusted,
                                Limits const& limits = {});

  std::size_t order() const noexcept { return d_->order; }
  std::string const& name() const noexcept { return d_->name; }

  Elem identity() const noexcept { return 0; }
  Elem mul(Elem a, Elem b) const noexcept { return d_->mul[std::size_t(a) * d_->order + b]; }
  Elem inv(Elem a) const noexcept { return d_->inv[a]; }

  /// g^e for any integer e (negative exponents use the inverse).
  Elem pow(Elem g, std::int64_t e) const noexcept {
    std::int64_t ord = d_->orders[g];
    e = mod_floor(e, ord);
    Elem result = 0;
    Elem base = g;
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  /// x^y = y^-1 x y.
  Elem conj(Elem x, Elem y) const noexcept { return mul(mul(inv(y), x), y); }

  /// [a, b] = a^-1 b^-1 a b.
  Elem commutator(Elem a, Elem b) const noexcept { return mul(mul(inv(a), inv(b)), mul(a, b)); }

  std::uint32_t element_order(Elem g) const noexcept { return d_->orders[g]; }

  std::string const& label(Elem g) const { return d_->labels.at(g); }
  std::vector<std::string> const& labels() const noexcept { return d_->labels; }

  std::optional<Elem> find_label(std::string_view label) const {
    auto it = std::find(d_->labels.begin(), d_->labels.end(), label);
    if (it == d_->labels.end()) return std::nullopt;
    return Elem(it - d_->labels.begin());
  }

  bool same_as(FiniteGroup const& other) const noexcept { return d_ == other.d_; }

  Subgroup whole() const;
  Subgroup trivial() const;

 private:
  struct Data {
    std::size_t order = 0;
    std::vector<Elem> mul;
    std::vector<Elem> inv;
    std::vector<std::uint32_t> orders;
    std::vector<std::string> labels;
    std::string name;
  };

  explicit FiniteGroup(std::shared_ptr<Data const> d) : d_(std::move(d)) {}

  std::shared_ptr<Data const> d_;
};

/// A subgroup stored canonically as a strictly increasing list of element
/// indices, together with a membership bitmap.
class Subgroup {
 public:
  /// Validating factory: `elems` must form a subgroup of `parent`.
  static Subgroup from_elements(FiniteGroup const& parent, std::vector<Elem> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    for (Elem e : elems)
      if (e >= parent.order())
        throw Error(ErrorKind::InvalidArgument, "element index out of range");
    Subgroup s(parent, std::move(elems));
    if (s.elems_.empty() || s.elems_.front() != 0)
      throw Error(ErrorKind::InvalidArgument, "subgroup must contain the identity");
    for (Elem a : s.elems_) {
      if (!s.contains(parent.inv(a)))
        throw Error(ErrorKind::InvalidArgument, "subset is not closed under inverses");
      for (Elem b : s.elems_)
        if (!s.contains(parent.mul(a, b)))
          throw Error(ErrorKind::InvalidArgument, "subset is not closed under multiplication");
    }
    if (parent.order() % s.order() != 0)
      throw Error(ErrorKind::InvalidArgument, "subgroup order does not divide group order");
    return s;
  }

  FiniteGroup const& parent() const noexcept { return parent_; }
  std::span<Elem const> elements() const noexcept { return elems_; }
  std::size_t order() const noexcept { return elems_.size(); }

  bool contains(Elem g) const noexcept {
    return g < parent_.order() && ((bits_[g >> 6] >> (g & 63)) & 1u);
  }

  bool is_subset_of(Subgroup const& other) const noexcept {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] & ~other.bits_[i]) return false;
    return true;
  }

  bool is_trivial() const noexcept { return elems_.size() == 1; }
  bool is_whole() const noexcept { return elems_.size() == parent_.order(); }

  friend bool operator==(Subgroup const& a, Subgroup const& b) noexcept {
    return a.parent_.same_as(b.parent_) && a.elems_ == b.elems_;
  }

  std::size_t hash() const noexcept {
    std::size_t h = elems_.size();
    for (Elem e : elems_) h = h * 1000003u ^ e;
    return h;
  }

 private:
  friend class FiniteGroup;
  friend Subgroup closure(FiniteGroup const&, std::span<Elem const>);
  friend Subgroup intersect(Subgroup const&, Subgroup const&);
  friend Subgroup subgroup_from_predicate(FiniteGroup const&, std::function<bool(Elem)> const&);

  // `elems` must already be sorted, unique and closed.
  Subgroup(FiniteGroup parent, std::vector<Elem> elems)
      : parent_(std::move(parent)), elems_(std::move(elems)), bits_((parent_.order() + 63) / 64, 0) {
    for (Elem e : elems_) bits_[e >> 6] |= std::uint64_t(1) << (e & 63);
  }

  FiniteGroup parent_;
  std::vector<Elem> elems_;
  std::vector<std::uint64_t> bits_;
};

/// Canonical lattice order: by order, then lexicographically by elements.
inline bool canonical_less(Subgroup const& a, Subgroup const& b) noexcept {
  if (a.order() != b.order()) return a.order() < b.order();
  return std::lexicographical_compare(a.elements().begin(), a.elements().end(),
                                      b.elements().begin(), b.elements().end());
}

struct SubgroupHash {
  std::size_t operator()(Subgroup const& s) const noexcept { return s.hash(); }
};

inline FiniteGroup FiniteGroup::from_table(std::vector<Elem> mul, std::vector<std::string> labels,
                                           std::string name, TableOrigin origin,
                                           Limits const& limits) {
  std::size_t const n = labels.size();
  if (n == 0) throw Error(ErrorKind::InvalidTable, "empty group");
  if (n > limits.order_cap)
    throw Error(ErrorKind::OrderCapExceeded,
                "order " + std::to_string(n) + " exceeds cap " + std::to_string(limits.order_cap));
  if (origin == TableOrigin::untrusted && n > limits.validation_cap)
    throw Error(ErrorKind::OrderCapExceeded, "order " + std::to_string(n) +
                                                 " is above the validation cap for unverified tables");
  if (mul.size() != n * n) throw Error(ErrorKind::InvalidTable, "table is not order x order");
  for (Elem v : mul)
    if (v >= n) throw Error(ErrorKind::InvalidTable, "table entry out of range");

  // Latin square.
  std::vector<char> seen(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      if (seen[mul[a * n + b]]++) throw Error(ErrorKind::InvalidTable, "row " + std::to_string(a) + " repeats an entry");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      if (seen[mul[b * n + a]]++) throw Error(ErrorKind::InvalidTable, "column " + std::to_string(a) + " repeats an entry");
    }
  }

  // Locate the identity and move it to index 0.
  std::optional<std::size_t> id;
  for (std::size_t e = 0; e < n && !id; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = mul[e * n + g] == g && mul[g * n + e] == g;
    if (ok) id = e;
  }
  if (!id) throw Error(ErrorKind::InvalidTable, "no identity element");
  if (*id != 0) {
    std::vector<Elem> perm(n);
    std::iota(perm.begin(), perm.end(), Elem(0));
    std::swap(perm[0], perm[*id]);  // old index -> new index (an involution)
    std::vector<Elem> relabelled(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) relabelled[perm[a] * n + perm[b]] = perm[mul[a * n + b]];
    mul = std::move(relabelled);
    std::swap(labels[0], labels[*id]);
  }

  if (origin == TableOrigin::untrusted || n <= limits.validation_cap) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::size_t ab = mul[a * n + b];
        for (std::size_t c = 0; c < n; ++c)
          if (mul[ab * n + c] != mul[a * n + mul[b * n + c]])
            throw Error(ErrorKind::InvalidTable, "associativity fails at (" + std::to_string(a) + ", " +
                                                     std::to_string(b) + ", " + std::to_string(c) + ")");
      }
  }

  auto d = std::make_shared<Data>();
  d->order = n;
  d->inv.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (mul[a * n + b] == 0) {
        d->inv[a] = Elem(b);
        break;
      }
  d->orders.assign(n, 1);
  for (std::size_t a = 0; a < n; ++a) {
    Elem x = Elem(a);
    std::uint32_t k = 1;
    while (x != 0) {
      x = mul[x * n + a];
      ++k;
    }
    d->orders[a] = k;
  }
  d->mul = std::move(mul);
  d->labels = std::move(labels);
  d->name = std::move(name);
  return FiniteGroup(std::move(d));
}

/// Smallest subgroup containing `seed`; an empty seed gives the trivial group.
inline Subgroup closure(FiniteGroup const& G, std::span<Elem const> seed) {
  std::size_t const n = G.order();
  std::vector<Elem> gens;
  for (Elem s : seed) {
    if (s >= n) throw Error(ErrorKind::InvalidArgument, "seed element out of range");
    if (s != 0) gens.push_back(s);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  std::vector<char> in(n, 0);
  std::vector<Elem> elems{0};
  in[0] = 1;
  // Right multiplication by generators from the identity reaches the monoid
  // they generate, which is the subgroup since G is finite.
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (Elem s : gens) {
      Elem y = G.mul(elems[i], s);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return Subgroup(G, std::move(elems));
}

inline Subgroup closure(FiniteGroup const& G, std::initializer_list<Elem> seed) {
  return closure(G, std::span<Elem const>(seed.begin(), seed.size()));
}

/// The set {g : pred(g)}, which the caller guarantees is a subgroup.
inline Subgroup subgroup_from_predicate(FiniteGroup const& G, std::function<bool(Elem)> const& pred) {
  std::vector<Elem> elems;
  for (Elem g = 0; g < G.order(); ++g)
    if (pred(g)) elems.push_back(g);
  return Subgroup(G, std::move(elems));
}

inline Subgroup FiniteGroup::whole() const {
  std::vector<Elem> all(order());
  std::iota(all.begin(), all.end(), Elem(0));
  return Subgroup(*this, std::move(all));
}

inline Subgroup FiniteGroup::trivial() const { return Subgroup(*this, {0}); }

inline Subgroup intersect(Subgroup const& a, Subgroup const& b) {
  std::vector<Elem> out;
  std::set_intersection(a.elems_.begin(), a.elems_.end(), b.elems_.begin(), b.elems_.end(),
                        std::back_inserter(out));
  return Subgroup(a.parent_, std::move(out));
}

/// ⟨U ∪ V⟩.
inline Subgroup join(Subgroup const& a, Subgroup const& b) {
  std::vector<Elem> seed(a.elements().begin(), a.elements().end());
  seed.insert(seed.end(), b.elements().begin(), b.elements().end());
  return closure(a.parent(), seed);
}

inline std::uint32_t element_order(FiniteGroup const& G, Elem g) { return G.element_order(g); }

/// LCM of the element orders of A.
inline Count exponent(Subgroup const& A) {
  Count e = 1;
  for (Elem g : A.elements()) e = std::lcm(e, Count(A.parent().element_order(g)));
  return e;
}

/// H^g = g^-1 H g.
inline Subgroup conjugate(Subgroup const& H, Elem g) {
  FiniteGroup const& G = H.parent();
  std::vector<Elem> out;
  out.reserve(H.order());
  for (Elem h : H.elements()) out.push_back(G.conj(h, g));
  std::sort(out.begin(), out.end());
  return Subgroup::from_elements(G, std::move(out));
}

/// {g in G : gs = sg for all s in S}.
inline Subgroup centralizer(FiniteGroup const& G, std::span<Elem const> S) {
  return subgroup_from_predicate(G, [&](Elem g) {
    for (Elem s : S)
      if (G.mul(g, s) != G.mul(s, g)) return false;
    return true;
  });
}

inline Subgroup centralizer(FiniteGroup const& G, Subgroup const& S) {
  return centralizer(G, S.elements());
}

/// {g in G : H^g = H}.
inline Subgroup normalizer(FiniteGroup const& G, Subgroup const& H) {
  return subgroup_from_predicate(G, [&](Elem g) {
    for (Elem h : H.elements())
      if (!H.contains(G.conj(h, g))) return false;
    return true;
  });
}

inline Subgroup center(FiniteGroup const& G) {
  Subgroup all = G.whole();
  return centralizer(G, all.elements());
}

/// Center of a subgroup, as a subgroup of the same parent.
inline Subgroup center(Subgroup const& A) {
  return intersect(A, centralizer(A.parent(), A.elements()));
}

/// A' = ⟨[a, b] : a, b in A⟩.
inline Subgroup commutator_subgroup(Subgroup const& A) {
  FiniteGroup const& G = A.parent();
  std::vector<char> in(G.order(), 0);
  std::vector<Elem> seed;
  for (Elem a : A.elements())
    for (Elem b : A.elements()) {
      Elem c = G.commutator(a, b);
      if (!in[c]) {
        in[c] = 1;
        seed.push_back(c);
      }
    }
  return closure(G, seed);
}

/// A^n = ⟨a^n : a in A⟩. n = 0 gives the trivial subgroup.
inline Subgroup power_subgroup(Subgroup const& A, Count n) {
  FiniteGroup const& G = A.parent();
  std::vector<Elem> seed;
  for (Elem a : A.elements()) seed.push_back(G.pow(a, std::int64_t(n % G.element_order(a))));
  return closure(G, seed);
}

/// A'A^n, the verbal subgroup for abelian groups of exponent n.
inline Subgroup verbal_subgroup(Subgroup const& A, Count n) {
  return join(commutator_subgroup(A), power_subgroup(A, n));
}

/// true iff u^v in U for all u in U, v in V. Requires U ⊆ V.
inline bool is_normal(Subgroup const& U, Subgroup const& V) {
  if (!U.is_subset_of(V)) throw Error(ErrorKind::NotASubset, "is_normal requires U ⊆ V");
  FiniteGroup const& G = U.parent();
  for (Elem v : V.elements())
    for (Elem u : U.elements())
      if (!U.contains(G.conj(u, v))) return false;
  return true;
}

/// Every subgroup of A exactly once, in canonical order (by order, then
/// lexicographically). Seeds with the cyclic subgroups and extends each found
/// subgroup by one cyclic generator at a time.
inline std::vector<Subgroup> all_subgroups(Subgroup const& A, Limits const& limits = {}) {
  if (A.order() > limits.subgroup_cap)
    throw Error(ErrorKind::OrderCapExceeded, "subgroup enumeration limited to order " +
                                                 std::to_string(limits.subgroup_cap) + ", got " +
                                                 std::to_string(A.order()));
  FiniteGroup const& G = A.parent();

  // One generator per distinct cyclic subgroup.
  std::vector<Elem> cyclic_gens;
  std::unordered_set<Subgroup, SubgroupHash> cyclic;
  for (Elem g : A.elements()) {
    Subgroup c = closure(G, {g});
    if (cyclic.insert(c).second) cyclic_gens.push_back(g);
  }

  std::unordered_set<Subgroup, SubgroupHash> found;
  std::deque<std::pair<Subgroup, std::vector<Elem>>> queue;
  for (Elem g : cyclic_gens) {
    Subgroup c = closure(G, {g});
    if (found.insert(c).second) queue.emplace_back(c, std::vector<Elem>{g});
  }
  while (!queue.empty()) {
    auto [S, gens] = std::move(queue.front());
    queue.pop_front();
    for (Elem g : cyclic_gens) {
      if (S.contains(g)) continue;
      std::vector<Elem> next = gens;
      next.push_back(g);
      Subgroup T = closure(G, next);
      if (found.insert(T).second) queue.emplace_back(std::move(T), std::move(next));
    }
  }

  std::vector<Subgroup> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

inline std::vector<Subgroup> all_subgroups(FiniteGroup const& G, Limits const& limits = {}) {
  return all_subgroups(G.whole(), limits);
}

enum class GcdMethod { definition, sylow, both };

/// GCD(A, n) from a precomputed lattice of A: the LCM of the orders of
/// subgroups whose order divides n. n = 0 gives |A|.
inline Count gcd_group_from_lattice(std::span<Subgroup const> lattice, Count n) {
  Count result = 1;
  for (Subgroup const& S : lattice)
    if (divides(S.order(), n)) result = std::lcm(result, Count(S.order()));
  return result;
}

/// GCD(A, n). The `sylow` route is gcd(|A|, n); `both` cross-checks the two.
inline Count gcd_group(Subgroup const& A, Count n, GcdMethod method = GcdMethod::sylow,
                       Limits const& limits = {}) {
  Count const fast = std::gcd(Count(A.order()), n);
  if (method == GcdMethod::sylow) return fast;
  auto lattice = all_subgroups(A, limits);
  Count const slow = gcd_group_from_lattice(lattice, n);
  if (method == GcdMethod::both && slow != fast)
    throw Error(ErrorKind::MethodMismatch, "GCD(" + A.parent().name() + ", " + std::to_string(n) +
                                               "): definition gives " + std::to_string(slow) +
                                               ", Sylow gives " + std::to_string(fast));
  return slow;
}

inline Count gcd_group(FiniteGroup const& G, Count n, GcdMethod method = GcdMethod::sylow,
                       Limits const& limits = {}) {
  return gcd_group(G.whole(), n, method, limits);
}

}  // namespace ghw
