#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ghw/error.hpp"
#include "ghw/group.hpp"
#include "ghw/presentation.hpp"

namespace ghw {

/// A homomorphism F -> G, recorded by the images of F's generators.
struct Homomorphism {
  std::shared_ptr<Presentation const> source;
  FiniteGroup target;
  std::vector<Elem> images;

  Elem operator()(Word const& w) const { return word_eval(w, images, target); }

  friend bool operator==(Homomorphism const& a, Homomorphism const& b) {
    return a.target.same_as(b.target) && a.images == b.images;
  }
};

inline constexpr Count default_budget = 1'000'000'000;

/// The node budget, overridable through the GHW_BUDGET environment variable.
inline Count budget_from_env(Count fallback = default_budget) {
  if (char const* s = std::getenv("GHW_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return Count(v);
    throw Error(ErrorKind::InvalidArgument, std::string("GHW_BUDGET must be a positive integer, got '") + s + "'");
  }
  return fallback;
}

struct EnumerateOptions {
  Count budget = default_budget;
  /// Number of slices the first generator's images are split into, each
  /// searched on its own thread. Output order does not depend on it.
  unsigned partitions = 1;
};

namespace detail {

class HomSearch {
 public:
  HomSearch(Presentation const& P, FiniteGroup const& G, Count budget, std::atomic<Count>& visited)
      : P_(P), G_(G), budget_(budget), visited_(visited), by_depth_(P.num_gens()) {
    // Each relator is checked at the depth of the largest generator it uses.
    for (auto const& r : P.relators())
      if (auto m = r.max_generator()) by_depth_[*m].push_back(&r);
    images_.assign(P.num_gens(), 0);
  }

  template <typename Visit>
  void run(Elem first_lo, Elem first_hi, Visit&& visit) {
    for (Elem g = first_lo; g < first_hi; ++g) {
      images_[0] = g;
      tick();
      if (relators_hold(0)) descend(1, visit);
    }
  }

 private:
  void tick() {
    if (visited_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_)
      throw Error(ErrorKind::BudgetExceeded, "enumeration exceeded " + std::to_string(budget_) + " nodes");
  }

  bool relators_hold(std::size_t depth) const {
    for (Word const* r : by_depth_[depth])
      if (word_eval(*r, images_, G_) != G_.identity()) return false;
    return true;
  }

  template <typename Visit>
  void descend(std::size_t depth, Visit& visit) {
    if (depth == images_.size()) {
      visit(images_);
      return;
    }
    for (Elem g = 0; g < G_.order(); ++g) {
      images_[depth] = g;
      tick();
      if (relators_hold(depth)) descend(depth + 1, visit);
    }
  }

  Presentation const& P_;
  FiniteGroup const& G_;
  Count budget_;
  std::atomic<Count>& visited_;
  std::vector<std::vector<Word const*>> by_depth_;
  std::vector<Elem> images_;
};

}  // namespace detail

/// Calls `visit(images)` for every homomorphism F -> G in lexicographic order
/// of image tuples.
inline void for_each_hom(Presentation const& P, FiniteGroup const& G,
                         std::function<void(std::vector<Elem> const&)> const& visit,
                         Count budget = default_budget) {
  std::atomic<Count> visited{0};
  detail::HomSearch search(P, G, budget, visited);
  search.run(0, Elem(G.order()), visit);
}

/// All homomorphisms F -> G, lexicographic in their image tuples.
inline std::vector<Homomorphism> enumerate_homs(Presentation const& P, FiniteGroup const& G,
                                                EnumerateOptions const& opts = {}) {
  auto source = std::make_shared<Presentation const>(P);
  unsigned const parts = std::max(1u, std::min<unsigned>(opts.partitions, unsigned(G.order())));
  std::vector<std::vector<std::vector<Elem>>> found(parts);
  std::atomic<Count> visited{0};

  auto work = [&](unsigned slice) {
    Elem lo = Elem(G.order() * slice / parts), hi = Elem(G.order() * (slice + 1) / parts);
    detail::HomSearch search(P, G, opts.budget, visited);
    search.run(lo, hi, [&](std::vector<Elem> const& imgs) { found[slice].push_back(imgs); });
  };

  if (parts == 1) {
    work(0);
  } else {
    std::vector<std::exception_ptr> errors(parts);
    std::vector<std::thread> threads;
    for (unsigned s = 0; s < parts; ++s)
      threads.emplace_back([&, s] {
        try {
          work(s);
        } catch (...) {
          errors[s] = std::current_exception();
        }
      });
    for (auto& t : threads) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<Homomorphism> out;
  for (auto& slice : found)
    for (auto& imgs : slice) out.push_back({source, G, std::move(imgs)});
  return out;
}

/// ⟨φ(w) : w in words⟩.
inline Subgroup image_of_words(Homomorphism const& h, std::span<Word const> words) {
  std::vector<Elem> seed;
  for (auto const& w : words) seed.push_back(h(w));
  return closure(h.target, seed);
}

enum class FamilyKind { hom, epi, mono };

inline std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::hom: return "hom";
    case FamilyKind::epi: return "epi";
    case FamilyKind::mono: return "mono";
  }
  return "?";
}

/// Hom/Epi/Mono(F, W; G, A).
struct HomFamilySpec {
  Presentation P;
  SubgroupSpec W;
  FiniteGroup G;
  Subgroup A;
  FamilyKind kind = FamilyKind::hom;
};

struct Membership {
  bool in_hom = false;
  bool in_epi = false;
  std::optional<bool> in_mono;  // unset when |W| is unknown
};

/// Membership from a precomputed image φ(W). Injectivity on a finite W is
/// |φ(W)| = |W|.
inline Membership classify_image(Subgroup const& image, Subgroup const& A, std::optional<Count> W_order) {
  Membership m;
  m.in_hom = image.is_subset_of(A);
  m.in_epi = image == A;
  if (W_order) m.in_mono = m.in_hom && image.order() == *W_order;
  return m;
}

inline Membership classify(Homomorphism const& h, HomFamilySpec const& spec) {
  if (spec.kind == FamilyKind::mono && !spec.W.known_order)
    throw Error(ErrorKind::UnknownOrder, "Mono needs the order of W");
  return classify_image(image_of_words(h, spec.W.gen_words), spec.A, spec.W.known_order);
}

inline bool in_family(Membership const& m, FamilyKind kind) {
  switch (kind) {
    case FamilyKind::hom: return m.in_hom;
    case FamilyKind::epi: return m.in_epi;
    case FamilyKind::mono: return m.in_mono.value_or(false);
  }
  return false;
}

inline Count count_family(HomFamilySpec const& spec, Count budget = default_budget) {
  if (spec.kind == FamilyKind::mono && !spec.W.known_order)
    throw Error(ErrorKind::UnknownOrder, "Mono needs the order of W");
  if (!spec.A.parent().same_as(spec.G)) throw Error(ErrorKind::InvalidArgument, "A is not a subgroup of G");
  Count n = 0;
  std::vector<Elem> seed(spec.W.gen_words.size());
  for_each_hom(
      spec.P, spec.G,
      [&](std::vector<Elem> const& imgs) {
        for (std::size_t i = 0; i < seed.size(); ++i) seed[i] = word_eval(spec.W.gen_words[i], imgs, spec.G);
        if (in_family(classify_image(closure(spec.G, seed), spec.A, spec.W.known_order), spec.kind)) ++n;
      },
      budget);
  return n;
}

/// |{x in G : x^n = 1}|.
inline Count count_power_solutions(FiniteGroup const& G, std::int64_t n) {
  Count c = 0;
  for (Elem g = 0; g < G.order(); ++g)
    if (G.pow(g, n) == G.identity()) ++c;
  return c;
}

/// |{x in G : x^n in A}|.
inline Count count_nth_roots_in(FiniteGroup const& G, Subgroup const& A, std::int64_t n) {
  Count c = 0;
  for (Elem g = 0; g < G.order(); ++g)
    if (A.contains(G.pow(g, n))) ++c;
  return c;
}

/// Tuples (g1, ..., gm) generating G with gi^ki = 1; ki = 0 imposes nothing.
inline Count count_generating_tuples(FiniteGroup const& G, std::span<Count const> ks,
                                     Count budget = default_budget) {
  std::vector<std::vector<Elem>> choices;
  for (Count k : ks) {
    std::vector<Elem> c;
    for (Elem g = 0; g < G.order(); ++g)
      if (k == 0 || G.pow(g, std::int64_t(k % G.element_order(g))) == G.identity()) c.push_back(g);
    choices.push_back(std::move(c));
  }
  Count visited = 0, total = 0;
  std::vector<Elem> tuple(ks.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (++visited > budget)
      throw Error(ErrorKind::BudgetExceeded, "tuple enumeration exceeded " + std::to_string(budget) + " nodes");
    if (i == ks.size()) {
      if (closure(G, tuple).order() == G.order()) ++total;
      return;
    }
    for (Elem g : choices[i]) {
      tuple[i] = g;
      rec(i + 1);
    }
  };
  rec(0);
  return total;
}

}  // namespace ghw
