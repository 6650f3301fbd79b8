#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "ghw/error.hpp"
#include "ghw/group.hpp"
#include "ghw/homs.hpp"
#include "ghw/presentation.hpp"

namespace ghw {

// ---------------------------------------------------------------------------
// φ-cores
// ---------------------------------------------------------------------------

/// Images attached to a homomorphism φ from an n-indexed group: φ(ker deg)
/// and φ(F). Both come from the finite image of F in G × Z_n.
struct PhiImages {
  Subgroup deg_zero_image;
  Subgroup full_image;
};

struct PhiCoreResult {
  Subgroup core;
  Subgroup deg_zero_image;
  Subgroup full_image;
};

inline PhiImages phi_images(Homomorphism const& h, Indexation const& idx) {
  if (idx.n == 0) throw Error(ErrorKind::UnsupportedIndexZero, "φ-core needs n >= 1");
  FiniteGroup const& G = h.target;
  std::size_t const n = idx.n;
  if (idx.degrees.size() != h.images.size()) throw Error(ErrorKind::InvalidArgument, "indexation arity mismatch");

  // Close {(φ(x_i), deg x_i)} in G × Z_n; pair (g, d) is encoded as g*n + d.
  std::vector<std::pair<Elem, std::size_t>> gens;
  for (std::size_t i = 0; i < h.images.size(); ++i)
    gens.emplace_back(h.images[i], std::size_t(idx.degrees[i]) % n);
  std::vector<char> in(G.order() * n, 0);
  std::vector<std::size_t> elems{0};
  in[0] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    Elem g = Elem(elems[i] / n);
    std::size_t d = elems[i] % n;
    for (auto [s, ds] : gens) {
      std::size_t p = std::size_t(G.mul(g, s)) * n + (d + ds) % n;
      if (!in[p]) {
        in[p] = 1;
        elems.push_back(p);
      }
    }
  }
  std::vector<char> zero(G.order(), 0), full(G.order(), 0);
  for (std::size_t p : elems) {
    full[p / n] = 1;
    if (p % n == 0) zero[p / n] = 1;
  }
  return {subgroup_from_predicate(G, [&](Elem g) { return zero[g] != 0; }),
          subgroup_from_predicate(G, [&](Elem g) { return full[g] != 0; })};
}

/// H_φ = {h in H : h^g in H for g in φ(F), and h^g = h for g in φ(ker deg)}.
inline Subgroup phi_core_of(PhiImages const& images, Subgroup const& H) {
  FiniteGroup const& G = H.parent();
  return subgroup_from_predicate(G, [&](Elem h) {
    if (!H.contains(h)) return false;
    for (Elem g : images.deg_zero_image.elements())
      if (G.mul(g, h) != G.mul(h, g)) return false;
    for (Elem g : images.full_image.elements())
      if (!H.contains(G.conj(h, g))) return false;
    return true;
  });
}

inline PhiCoreResult phi_core(Homomorphism const& h, Indexation const& idx, Subgroup const& H) {
  if (!H.parent().same_as(h.target)) throw Error(ErrorKind::InvalidArgument, "H is not a subgroup of the target");
  PhiImages images = phi_images(h, idx);
  Subgroup core = phi_core_of(images, H);
  return {std::move(core), std::move(images.deg_zero_image), std::move(images.full_image)};
}

// ---------------------------------------------------------------------------
// Twisting a homomorphism by a core element
// ---------------------------------------------------------------------------

namespace detail {

// ψ(x_i) = φ(x_i f1^{-d_i}) · (φ(f1) c)^{d_i}, with d_i the lift of deg x_i to [0, n).
inline std::vector<Elem> twist_images(Homomorphism const& h, Indexation const& idx, Elem c, Elem phi_f1) {
  FiniteGroup const& G = h.target;
  Elem const twisted = G.mul(phi_f1, c);
  std::vector<Elem> out(h.images.size());
  for (std::size_t i = 0; i < h.images.size(); ++i) {
    std::int64_t d = idx.degrees[i];
    out[i] = G.mul(G.mul(h.images[i], G.pow(phi_f1, -d)), G.pow(twisted, d));
  }
  return out;
}

inline bool satisfies_relators(Presentation const& P, std::span<Elem const> images, FiniteGroup const& G) {
  for (auto const& r : P.relators())
    if (word_eval(r, images, G) != G.identity()) return false;
  return true;
}

}  // namespace detail

/// The homomorphism ψ agreeing with φ on degree-zero elements and sending the
/// degree-one word f1 to φ(f1)·core_elt. `core_elt` must lie in the φ-core of H.
inline Homomorphism twist_hom(Homomorphism const& h, Indexation const& idx, Subgroup const& H, Elem core_elt,
                              Word const& f1) {
  if (idx.n == 0) throw Error(ErrorKind::UnsupportedIndexZero, "twisting needs n >= 1");
  if (deg_of_word(idx, f1) != std::int64_t(1 % idx.n))
    throw Error(ErrorKind::BadDegree, "f1 must have degree 1");
  if (!phi_core(h, idx, H).core.contains(core_elt))
    throw Error(ErrorKind::NotInCore, "element " + h.target.label(core_elt) + " is not in the φ-core");
  Homomorphism psi{h.source, h.target, detail::twist_images(h, idx, core_elt, h(f1))};
  if (!detail::satisfies_relators(*h.source, psi.images, h.target))
    throw Error(ErrorKind::NotAHomomorphism, "twisted map violates a relator");
  return psi;
}

// ---------------------------------------------------------------------------
// Brauer lemma
// ---------------------------------------------------------------------------

struct BrauerWitness {
  Elem u;
  Elem c;  // (vu)^|U| = c^-1 v^|U| c
};

/// For U normal in ⟨U, v⟩, finds for every u in U an element c in U with
/// (vu)^|U| = (v^|U|)^c.
inline std::vector<BrauerWitness> brauer_witness(FiniteGroup const& G, Subgroup const& U, Elem v) {
  if (!U.parent().same_as(G)) throw Error(ErrorKind::InvalidArgument, "U is not a subgroup of G");
  if (!is_normal(U, join(U, closure(G, {v}))))
    throw Error(ErrorKind::NotNormal, "U is not normal in <U, v>");
  std::int64_t const m = std::int64_t(U.order());
  Elem const vm = G.pow(v, m);
  std::vector<BrauerWitness> out;
  for (Elem u : U.elements()) {
    Elem const target = G.pow(G.mul(v, u), m);
    auto it = std::find_if(U.elements().begin(), U.elements().end(),
                           [&](Elem c) { return G.conj(vm, c) == target; });
    if (it == U.elements().end())
      throw Error(ErrorKind::NoWitness, "Brauer lemma fails for v=" + G.label(v) + ", u=" + G.label(u) +
                                            " in " + G.name());
    out.push_back({u, *it});
  }
  return out;
}

// ---------------------------------------------------------------------------
// (B, k, Φ)-smoothness
// ---------------------------------------------------------------------------

/// B̂ certifies smoothness for one φ when B̂ ⊆ H_φ ∩ B, B̂ is normal in
/// ⟨H_φ ∪ φ(F)⟩ and |H_φ : B̂| divides k.
inline bool is_smoothness_witness(Subgroup const& core, Subgroup const& B, Count k, Subgroup const& full_image,
                                  Subgroup const& Bhat) {
  if (!Bhat.is_subset_of(core) || !Bhat.is_subset_of(B)) return false;
  if (!divides(Count(core.order() / Bhat.order()), k)) return false;
  return is_normal(Bhat, join(core, full_image));
}

struct SmoothnessWitness {
  /// One entry per homomorphism; nullopt marks failure.
  std::vector<std::optional<Subgroup>> per_hom;

  bool smooth() const {
    return std::all_of(per_hom.begin(), per_hom.end(), [](auto const& s) { return s.has_value(); });
  }
};

/// Caches subgroup lattices and witness searches across many (φ, H) pairs in
/// the same target group.
class SmoothnessSearcher {
 public:
  explicit SmoothnessSearcher(Limits limits = {}) : limits_(limits) {}

  /// Largest subgroup B̂ of core ∩ B that is normal in ⟨core ∪ image⟩ with
  /// |core : B̂| dividing k, or nullopt.
  std::optional<Subgroup> find(Subgroup const& core, Subgroup const& B, Count k, Subgroup const& full_image) {
    Key key{core, B, full_image, k};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Subgroup const ambient = join(core, full_image);
    std::optional<Subgroup> result;
    Subgroup X = intersect(core, B);
    auto const& lattice = subgroups_of(X);
    for (auto it = lattice.rbegin(); it != lattice.rend(); ++it) {
      if (!divides(Count(core.order() / it->order()), k)) continue;
      if (is_normal(*it, ambient)) {
        result = *it;
        break;
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  std::vector<Subgroup> const& subgroups_of(Subgroup const& X) {
    auto it = lattices_.find(X);
    if (it == lattices_.end()) {
      auto subs = all_subgroups(X, limits_);
      // Largest first when walked backwards: order ascending, and within an
      // order keep the canonical sequence reversed so ties resolve to the
      // lexicographically first subgroup.
      std::stable_sort(subs.begin(), subs.end(), [](Subgroup const& a, Subgroup const& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return canonical_less(b, a);
      });
      it = lattices_.emplace(X, std::move(subs)).first;
    }
    return it->second;
  }

 private:
  struct Key {
    Subgroup core, B, image;
    Count k;
    friend bool operator==(Key const&, Key const&) = default;
  };
  struct KeyHash {
    std::size_t operator()(Key const& k) const noexcept {
      return k.core.hash() ^ (k.B.hash() * 31) ^ (k.image.hash() * 131) ^ std::hash<Count>{}(k.k);
    }
  };

  Limits limits_;
  std::unordered_map<Key, std::optional<Subgroup>, KeyHash> memo_;
  std::unordered_map<Subgroup, std::vector<Subgroup>, SubgroupHash> lattices_;
};

inline SmoothnessWitness smoothness_witness(Subgroup const& H, Subgroup const& B, Count k,
                                            std::span<Homomorphism const> homs, Indexation const& idx,
                                            Limits const& limits = {}) {
  if (idx.n == 0) throw Error(ErrorKind::UnsupportedIndexZero, "smoothness needs n >= 1");
  if (H.order() > limits.subgroup_cap)
    throw Error(ErrorKind::OrderCapExceeded, "H has order above the subgroup enumeration cap");
  SmoothnessSearcher searcher(limits);
  SmoothnessWitness w;
  for (auto const& h : homs) {
    PhiImages images = phi_images(h, idx);
    Subgroup core = phi_core_of(images, H);
    w.per_hom.push_back(searcher.find(core, B, k, images.full_image));
  }
  return w;
}

// ---------------------------------------------------------------------------
// Predicted divisors
// ---------------------------------------------------------------------------

struct DivisorClaim {
  std::string clause;  // e.g. "frob.a", "cor.b2"
  FamilyKind kind;
  Count divisor = 1;
  bool applicable = true;
  std::string note;  // why a clause does not apply, or extra context
  std::optional<Count> count;

  /// divisor | count under the 0 conventions; unset counts never fail.
  bool verdict() const { return !applicable || !count || divides(divisor, *count); }
};

struct DivisorReport {
  std::string instance;
  std::vector<DivisorClaim> claims;

  void fill_counts(Count hom, Count epi, std::optional<Count> mono) {
    for (auto& c : claims) {
      switch (c.kind) {
        case FamilyKind::hom: c.count = hom; break;
        case FamilyKind::epi: c.count = epi; break;
        case FamilyKind::mono: c.count = mono; break;
      }
    }
  }

  bool all_pass() const {
    return std::all_of(claims.begin(), claims.end(), [](auto const& c) { return c.verdict(); });
  }

  DivisorClaim const* find(std::string_view clause, FamilyKind kind) const {
    for (auto const& c : claims)
      if (c.clause == clause && c.kind == kind) return &c;
    return nullptr;
  }
};

namespace detail {

inline Count gcd3(Count a, Count b, Count c) { return std::gcd(std::gcd(a, b), c); }

}  // namespace detail

/// Every divisor the Frobeniusian theorem and the corollary of Theorem 1
/// predict for Hom/Epi/Mono(F, W; G, A). The corollary clauses need an
/// indexation; without one only the Frobeniusian clauses are produced.
inline DivisorReport predicted_divisors(Presentation const& P, SubgroupSpec const& W,
                                        std::optional<Indexation> const& idx, FiniteGroup const& G,
                                        Subgroup const& A, Limits const& limits = {}) {
  if (!A.parent().same_as(G)) throw Error(ErrorKind::InvalidArgument, "A is not a subgroup of G");
  DivisorReport r;
  bool const mono_ok = W.known_order.has_value();
  auto add = [&](std::string clause, FamilyKind kind, Count d, bool applicable = true, std::string note = {}) {
    if (kind == FamilyKind::mono && !mono_ok) {
      applicable = false;
      note = "order of W unknown";
    }
    r.claims.push_back({std::move(clause), kind, applicable ? d : 1, applicable, std::move(note), std::nullopt});
  };

  Count const e = exp_of_invariants(abelianization(P));
  Count const eW = exp_mod_subgroup(P, W);
  Subgroup const NA = normalizer(G, A);
  bool const A_normal = NA.is_whole();

  Count const frob_a = gcd_group(NA, eW);
  for (auto kind : {FamilyKind::hom, FamilyKind::epi, FamilyKind::mono}) add("frob.a", kind, frob_a);
  add("frob.b", FamilyKind::hom, gcd_group(A, e));
  add("frob.c", FamilyKind::epi, gcd_group(verbal_subgroup(A, e), e));
  if (auto zw = center_words(P, W))
    add("frob.d", FamilyKind::mono, gcd_group(A, exp_mod_words(P, *zw)));
  else
    add("frob.d", FamilyKind::mono, 1, false, "center of W unknown");

  if (!idx) return r;
  Count const n = idx->n;
  Count const k = deg_subgroup_index(*idx, W);
  if (k == 0) return r;  // deg(W) = 0 in Z: no positive k
  for (auto kind : {FamilyKind::hom, FamilyKind::epi, FamilyKind::mono}) add("cor.k", kind, gcd_group(NA, k));

  add("cor.a1", FamilyKind::hom, gcd_group(A, n));
  add("cor.a2", FamilyKind::hom, detail::gcd3(n, G.order(), k * A.order()), A_normal,
      A_normal ? "" : "A not normal");

  Subgroup const V = verbal_subgroup(A, n);
  add("cor.b1", FamilyKind::epi, gcd_group(V, n));
  if (NA.order() <= limits.subgroup_cap) {
    Subgroup const CV = centralizer(G, V);
    Subgroup const ZV = center(V);
    Count lcm = 1;
    std::size_t qualifying = 0;
    for (auto const& H : all_subgroups(NA, limits)) {
      Count index = intersect(CV, H).order() / intersect(ZV, H).order();
      if (divides(index, k)) {
        lcm = std::lcm(lcm, gcd_group(H, n));
        ++qualifying;
      }
    }
    add("cor.b2", FamilyKind::epi, lcm, true, std::to_string(qualifying) + " qualifying H");
  } else {
    add("cor.b2", FamilyKind::epi, 1, false, "N(A) above subgroup enumeration cap");
  }
  add("cor.b3", FamilyKind::epi, detail::gcd3(n, G.order(), k * V.order()), A_normal,
      A_normal ? "" : "A not normal");

  bool const marginal = marginal_degree_check(P, W, *idx) == MarginalCheck::ok;
  std::string const why = marginal ? "" : "deg does not vanish on the n-torsion of Z(W)";
  add("cor.c1", FamilyKind::mono, gcd_group(A, n), marginal, why);
  add("cor.c2", FamilyKind::mono, detail::gcd3(n, G.order(), k * A.order()), marginal && A_normal,
      !marginal ? why : (A_normal ? "" : "A not normal"));
  return r;
}

// ---------------------------------------------------------------------------
// Theorem 1: divisors from smooth subgroups
// ---------------------------------------------------------------------------

struct Theorem1Result {
  Count divisor = 1;             // LCM of GCD(H, n) over smooth H
  std::size_t smooth = 0;        // number of smooth H found
  std::size_t candidates = 0;    // subgroups of N(A) examined
};

/// Searches every subgroup H of N(A) for (B, k, Φ)-smoothness and returns
/// the LCM of GCD(H, n) over the smooth ones. `family` is Φ, and
/// `images[i]` holds the φ-images of family[i].
inline Theorem1Result theorem1_divisor(std::span<Homomorphism const> family, std::span<PhiImages const> images,
                                       Subgroup const& B, Count k, Count n, std::span<Subgroup const> candidates,
                                       SmoothnessSearcher& searcher) {
  Theorem1Result res;
  for (auto const& H : candidates) {
    ++res.candidates;
    bool smooth = true;
    for (std::size_t i = 0; i < family.size() && smooth; ++i) {
      Subgroup core = phi_core_of(images[i], H);
      smooth = searcher.find(core, B, k, images[i].full_image).has_value();
    }
    if (smooth) {
      ++res.smooth;
      res.divisor = std::lcm(res.divisor, gcd_group(H, n));
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Closure under the conjugation and twist conditions
// ---------------------------------------------------------------------------

struct BkvCounterexample {
  enum class Condition { conjugation, twist };
  Condition condition;
  std::size_t hom_index;
  Elem h;
  std::vector<Elem> produced;
};

/// Checks that Φ = `homs` is closed under conjugation by H and under the
/// twist by every φ-core element of H. H must normalize A and |H| must
/// divide n, which is what makes every twist a homomorphism.
inline std::optional<BkvCounterexample> verify_bkv_closure(std::span<Homomorphism const> homs,
                                                           HomFamilySpec const& spec, Indexation const& idx,
                                                           Subgroup const& H) {
  if (idx.n == 0) throw Error(ErrorKind::UnsupportedIndexZero, "closure check needs n >= 1");
  if (!H.is_subset_of(normalizer(spec.G, spec.A)))
    throw Error(ErrorKind::InvalidArgument, "H must lie in the normalizer of A");
  if (!divides(H.order(), idx.n)) throw Error(ErrorKind::InvalidArgument, "|H| must divide n");

  FiniteGroup const& G = spec.G;
  std::set<std::vector<Elem>> members;
  for (auto const& h : homs) members.insert(h.images);

  Word const f1 = degree_one_word(idx);
  for (std::size_t i = 0; i < homs.size(); ++i) {
    Homomorphism const& phi = homs[i];
    for (Elem h : H.elements()) {
      std::vector<Elem> conj(phi.images.size());
      for (std::size_t j = 0; j < conj.size(); ++j) conj[j] = G.conj(phi.images[j], h);
      if (!members.contains(conj))
        return BkvCounterexample{BkvCounterexample::Condition::conjugation, i, h, std::move(conj)};
    }
    Subgroup core = phi_core(phi, idx, H).core;
    Elem const phi_f1 = phi(f1);
    for (Elem c : core.elements()) {
      auto psi = detail::twist_images(phi, idx, c, phi_f1);
      if (!detail::satisfies_relators(*phi.source, psi, G))
        throw Error(ErrorKind::NotAHomomorphism, "twist by a core element violates a relator");
      if (!members.contains(psi))
        return BkvCounterexample{BkvCounterexample::Condition::twist, i, c, std::move(psi)};
    }
  }
  return std::nullopt;
}

}  // namespace ghw
