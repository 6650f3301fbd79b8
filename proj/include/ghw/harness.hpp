#pragma once

#include <array>
#include <chrono>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "ghw/catalog.hpp"
#include "ghw/construct.hpp"
#include "ghw/divisibility.hpp"
#include "ghw/homs.hpp"
#include "ghw/pres_parser.hpp"
#include "ghw/presentation.hpp"
#include "ghw/selector.hpp"

namespace ghw {

enum class Theorem {
  frobenius,
  solomon,
  iwasaki,
  grv,
  gen_tuples,
  frobeniusian_abcd,
  theorem1,
  corollary3,
  bkv_closure,
  brauer,
};

inline constexpr std::array all_theorems{
    Theorem::frobenius,         Theorem::solomon,  Theorem::iwasaki,    Theorem::grv,
    Theorem::gen_tuples,        Theorem::frobeniusian_abcd, Theorem::theorem1, Theorem::corollary3,
    Theorem::bkv_closure,       Theorem::brauer,
};

inline std::string_view to_string(Theorem t) {
  switch (t) {
    case Theorem::frobenius: return "frobenius";
    case Theorem::solomon: return "solomon";
    case Theorem::iwasaki: return "iwasaki";
    case Theorem::grv: return "grv";
    case Theorem::gen_tuples: return "gen-tuples";
    case Theorem::frobeniusian_abcd: return "frobeniusian-abcd";
    case Theorem::theorem1: return "theorem1";
    case Theorem::corollary3: return "corollary3";
    case Theorem::bkv_closure: return "bkv-closure";
    case Theorem::brauer: return "brauer";
  }
  return "?";
}

inline std::optional<Theorem> parse_theorem(std::string_view s) {
  for (auto t : all_theorems)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

enum class ReportFormat { table, csv, jsonl };

struct CheckSpec {
  Theorem theorem = Theorem::frobenius;
  std::optional<std::string> catalog;  // unset: the suite's default groups
  std::optional<Count> nmax;
  std::vector<Count> ks{3, 5};
  std::optional<std::string> presentation_file;
  std::size_t max_order = 24;  // brauer
  Limits limits;
  Count budget = default_budget;
};

struct CheckRow {
  std::string instance;
  Count count = 0;
  Count divisor = 1;
  bool pass = true;
};

struct CheckOutcome {
  std::vector<CheckRow> rows;
  std::size_t passed = 0;
  std::size_t failed = 0;
  double wall_seconds = 0;

  std::size_t total() const { return rows.size(); }

  void add(std::string instance, Count count, Count divisor, bool pass) {
    rows.push_back({std::move(instance), count, divisor, pass});
    (pass ? passed : failed)++;
  }
  void add_divisibility(std::string instance, Count count, Count divisor) {
    add(std::move(instance), count, divisor, divides(divisor, count));
  }
};

// ---------------------------------------------------------------------------
// Built-in presentations and fixtures
// ---------------------------------------------------------------------------

/// Two generators, one relator: fewer equations than unknowns.
inline std::vector<Presentation> solomon_presentations() {
  auto x = [](std::int64_t e = 1) { return Word::generator(0, e); };
  auto y = [](std::int64_t e = 1) { return Word::generator(1, e); };
  std::vector<std::string> names{"x", "y"};
  return {
      Presentation(names, {x(2)}),
      Presentation(names, {x(3)}),
      Presentation(names, {x() * y() * x(-1) * y(-1) * x()}),
      Presentation(names, {x(2) * y(3)}),
  };
}

/// Presentations whose abelianization has positive free rank.
inline std::vector<Presentation> grv_presentations() {
  auto x = [](std::int64_t e = 1) { return Word::generator(0, e); };
  auto y = [](std::int64_t e = 1) { return Word::generator(1, e); };
  std::vector<std::string> names{"x", "y"};
  return {
      Presentation(names, {x(2)}),
      Presentation(names, {x(-1) * y(-1) * x() * y()}),
      Presentation(names, {x() * y(2) * x(-1) * y(-1)}),
      Presentation(names, {x(3) * y(3)}),
      Presentation({"x", "y", "z"}, {Word::generator(2, 2)}),
  };
}

struct Fixture {
  std::string name;
  Presentation P;
  std::vector<Indexation> indexations;
  std::vector<std::pair<std::string, SubgroupSpec>> Ws;
  std::vector<std::string> targets;
};

namespace detail {

inline SubgroupSpec cyclic_w(std::uint32_t gen, Count order) {
  SubgroupSpec w;
  w.gen_words.push_back(Word::generator(gen));
  w.known_order = order;
  w.center = CenterKnowledge{CenterKnowledge::Kind::whole, order, std::nullopt};
  return w;
}

}  // namespace detail

/// The fixtures behind the frobeniusian-abcd, theorem1, corollary3 and
/// bkv-closure suites.
inline std::vector<Fixture> default_fixtures() {
  Presentation p35 = Presentation::free_product_of_cyclics({3, 5});
  std::vector<std::pair<std::string, SubgroupSpec>> ws35{
      {"F", SubgroupSpec::whole(p35)},
      {"<x>", detail::cyclic_w(0, 3)},
      {"<y>", detail::cyclic_w(1, 5)},
  };
  Presentation p4 = Presentation::free_product_of_cyclics({4});
  return {
      Fixture{"x3y5-mod15", p35, {Indexation(15, {10, 3}), Indexation(15, {5, 3}), Indexation(15, {10, 6})},
              ws35, {"C15", "S3", "A5", "C3xS3"}},
      // Indexations that kill the n-torsion of a cyclic W, so the Mono
      // clauses apply.
      Fixture{"x3y5-small-n", p35, {Indexation(5, {0, 1}), Indexation(3, {1, 0})}, ws35,
              {"C15", "S3", "A5", "C3xS3"}},
      Fixture{"z4-mod4", p4, {Indexation(4, {1})}, {{"<x>", detail::cyclic_w(0, 4)}}, {"C8"}},
  };
}

inline Fixture fixture_from_bundle(InputBundle const& b, std::string name) {
  Fixture f{std::move(name), b.pres, {}, {{"W", b.W}}, {}};
  if (b.idx) f.indexations.push_back(*b.idx);
  if (b.group) f.targets.push_back(to_string(*b.group));
  return f;
}

// ---------------------------------------------------------------------------
// Per-target caches for the fixture suites
// ---------------------------------------------------------------------------

namespace detail {

class TargetContext {
 public:
  TargetContext(Fixture const& fx, FiniteGroup G, Limits const& limits, Count budget)
      : fx_(fx), G_(std::move(G)), limits_(limits) {
    lattice_ = all_subgroups(G_, limits);
    for (std::size_t i = 0; i < lattice_.size(); ++i) ids_.emplace(lattice_[i], i);
    homs_ = enumerate_homs(fx.P, G_, {budget, 1});
    for (auto const& [wname, W] : fx.Ws) {
      std::vector<std::size_t> ids;
      for (auto const& h : homs_) ids.push_back(ids_.at(image_of_words(h, W.gen_words)));
      image_ids_.push_back(std::move(ids));
    }
  }

  FiniteGroup const& group() const { return G_; }
  std::vector<Subgroup> const& lattice() const { return lattice_; }
  std::vector<Homomorphism> const& homs() const { return homs_; }

  std::string selector(Subgroup const& S) const { return selector_name(lattice_, S); }

  /// Indices of homs in Hom/Epi/Mono(F, W; G, A).
  std::vector<std::size_t> family(std::size_t w, Subgroup const& A, FamilyKind kind) const {
    auto const& W = fx_.Ws[w].second;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < homs_.size(); ++i) {
      Subgroup const& img = lattice_[image_ids_[w][i]];
      if (in_family(classify_image(img, A, W.known_order), kind)) out.push_back(i);
    }
    return out;
  }

  std::vector<PhiImages> const& phi_images_for(std::size_t idx_pos) {
    auto it = phi_.find(idx_pos);
    if (it == phi_.end()) {
      std::vector<PhiImages> v;
      for (auto const& h : homs_) v.push_back(phi_images(h, fx_.indexations[idx_pos]));
      it = phi_.emplace(idx_pos, std::move(v)).first;
    }
    return it->second;
  }

  SmoothnessSearcher& searcher() { return searcher_; }

 private:
  Fixture const& fx_;
  FiniteGroup G_;
  Limits limits_;
  std::vector<Subgroup> lattice_;
  std::unordered_map<Subgroup, std::size_t, SubgroupHash> ids_;
  std::vector<Homomorphism> homs_;
  std::vector<std::vector<std::size_t>> image_ids_;
  std::map<std::size_t, std::vector<PhiImages>> phi_;
  SmoothnessSearcher searcher_{limits_};
};

inline std::string deg_name(Presentation const& P, Indexation const& idx) {
  std::string s = "deg" + std::to_string(idx.n) + "(";
  for (std::size_t i = 0; i < idx.degrees.size(); ++i)
    s += (i ? "," : "") + P.gen_names()[i] + "=" + std::to_string(idx.degrees[i]);
  return s + ")";
}

inline std::vector<FamilyKind> kinds_for(SubgroupSpec const& W) {
  std::vector<FamilyKind> k{FamilyKind::hom, FamilyKind::epi};
  if (W.known_order) k.push_back(FamilyKind::mono);
  return k;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

namespace detail {

class Runner {
 public:
  explicit Runner(CheckSpec const& spec) : spec_(spec) {}

  CheckOutcome run() {
    auto start = std::chrono::steady_clock::now();
    switch (spec_.theorem) {
      case Theorem::frobenius: frobenius(); break;
      case Theorem::solomon: solomon(); break;
      case Theorem::iwasaki: iwasaki(); break;
      case Theorem::grv: grv(); break;
      case Theorem::gen_tuples: gen_tuples(); break;
      case Theorem::frobeniusian_abcd:
      case Theorem::theorem1:
      case Theorem::corollary3:
      case Theorem::bkv_closure: fixtures(); break;
      case Theorem::brauer: brauer(); break;
    }
    out_.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::move(out_);
  }

 private:
  std::vector<std::string> groups(std::string_view default_filter) const {
    return resolve_catalog_filter(spec_.catalog.value_or(std::string(default_filter)), spec_.limits);
  }

  FiniteGroup group(std::string const& name) {
    auto it = cache_.find(name);
    if (it == cache_.end()) it = cache_.emplace(name, build_group(name, spec_.limits)).first;
    return it->second;
  }

  static std::string gname(FiniteGroup const& G) { return "G=" + G.name(); }

  void frobenius() {
    Count const nmax = spec_.nmax.value_or(30);
    for (auto const& name : groups("all")) {
      FiniteGroup G = group(name);
      for (Count n = 1; n <= nmax; ++n)
        out_.add_divisibility("frobenius " + gname(G) + " n=" + std::to_string(n),
                              count_power_solutions(G, std::int64_t(n)), gcd_group(G, n, GcdMethod::sylow));
    }
  }

  void solomon() {
    auto pres = solomon_presentations();
    for (auto const& name : groups("order<=60")) {
      FiniteGroup G = group(name);
      for (auto const& P : pres) {
        if (P.relators().size() >= P.num_gens())
          throw Error(ErrorKind::InvalidArgument, "Solomon presentations need fewer relators than generators");
        Count homs = 0;
        for_each_hom(P, G, [&](auto const&) { ++homs; }, spec_.budget);
        out_.add_divisibility("solomon " + gname(G) + " P=" + P.to_string(), homs, G.order());
      }
    }
  }

  void iwasaki() {
    Count const nmax = spec_.nmax.value_or(12);
    for (auto const& name : groups("order<=48")) {
      FiniteGroup G = group(name);
      auto lattice = all_subgroups(G, spec_.limits);
      for (auto const& A : lattice)
        for (Count n = 1; n <= nmax; ++n)
          out_.add_divisibility("iwasaki " + gname(G) + " A=" + selector_name(lattice, A) + " n=" + std::to_string(n),
                                count_nth_roots_in(G, A, std::int64_t(n)), A.order());
    }
  }

  void grv() {
    auto pres = grv_presentations();
    for (auto const& name : groups("all")) {
      FiniteGroup G = group(name);
      for (auto const& P : pres) {
        Count const e = exp_of_invariants(abelianization(P));
        if (e != 0) throw Error(ErrorKind::InvalidArgument, P.to_string() + " has finite abelianization");
        Count homs = 0;
        for_each_hom(P, G, [&](auto const&) { ++homs; }, spec_.budget);
        out_.add_divisibility("grv " + gname(G) + " P=" + P.to_string(), homs, gcd_group(G, e));
      }
    }
  }

  void gen_tuples() {
    Count L = 1;
    std::string ks;
    for (Count k : spec_.ks) {
      L = lcm_checked(L, k);
      ks += (ks.empty() ? "" : ",") + std::to_string(k);
    }
    if (spec_.ks.empty()) throw Error(ErrorKind::InvalidArgument, "gen-tuples needs at least one k");
    for (auto const& name : groups("all")) {
      FiniteGroup G = group(name);
      Count const divisor = gcd_group(verbal_subgroup(G.whole(), L), L);
      out_.add_divisibility("gen-tuples " + gname(G) + " ks=(" + ks + ")",
                            count_generating_tuples(G, spec_.ks, spec_.budget), divisor);
    }
  }

  std::vector<Fixture> fixture_list() const {
    if (!spec_.presentation_file) {
      auto fx = default_fixtures();
      if (spec_.catalog) {
        auto targets = resolve_catalog_filter(*spec_.catalog, spec_.limits);
        for (auto& f : fx) f.targets = targets;
      }
      return fx;
    }
    Fixture f = fixture_from_bundle(parse_inputs(*spec_.presentation_file), *spec_.presentation_file);
    if (spec_.catalog) f.targets = resolve_catalog_filter(*spec_.catalog, spec_.limits);
    if (f.targets.empty() && !spec_.catalog)
      throw Error(ErrorKind::InvalidArgument, "presentation file declares no group; pass --catalog");
    return {f};
  }

  void fixtures() {
    for (auto const& fx : fixture_list()) {
      for (auto const& target : fx.targets) {
        detail::TargetContext ctx(fx, group(target), spec_.limits, spec_.budget);
        switch (spec_.theorem) {
          case Theorem::frobeniusian_abcd: frobeniusian(fx, ctx); break;
          case Theorem::corollary3: corollary(fx, ctx); break;
          case Theorem::theorem1: theorem1(fx, ctx, false); break;
          case Theorem::bkv_closure: theorem1(fx, ctx, true); break;
          default: break;
        }
      }
    }
  }

  struct Counts {
    Count hom = 0, epi = 0;
    std::optional<Count> mono;
  };

  Counts counts(detail::TargetContext const& ctx, std::size_t w, SubgroupSpec const& W, Subgroup const& A) const {
    Counts c;
    c.hom = ctx.family(w, A, FamilyKind::hom).size();
    c.epi = ctx.family(w, A, FamilyKind::epi).size();
    if (W.known_order) c.mono = ctx.family(w, A, FamilyKind::mono).size();
    return c;
  }

  void emit(std::string const& prefix, DivisorReport const& r, std::string_view clause_prefix) {
    for (auto const& c : r.claims) {
      if (!c.applicable || !c.count || !c.clause.starts_with(clause_prefix)) continue;
      out_.add(prefix + " " + c.clause + "/" + std::string(to_string(c.kind)), *c.count, c.divisor, c.verdict());
    }
  }

  void frobeniusian(Fixture const& fx, detail::TargetContext& ctx) {
    FiniteGroup const& G = ctx.group();
    for (std::size_t w = 0; w < fx.Ws.size(); ++w) {
      auto const& [wname, W] = fx.Ws[w];
      for (auto const& A : ctx.lattice()) {
        DivisorReport r = predicted_divisors(fx.P, W, std::nullopt, G, A, spec_.limits);
        Counts c = counts(ctx, w, W, A);
        r.fill_counts(c.hom, c.epi, c.mono);
        emit(fx.name + " W=" + wname + " " + gname(G) + " A=" + ctx.selector(A), r, "frob.");
      }
    }
  }

  void corollary(Fixture const& fx, detail::TargetContext& ctx) {
    FiniteGroup const& G = ctx.group();
    for (auto const& idx : fx.indexations)
      for (std::size_t w = 0; w < fx.Ws.size(); ++w) {
        auto const& [wname, W] = fx.Ws[w];
        for (auto const& A : ctx.lattice()) {
          DivisorReport r = predicted_divisors(fx.P, W, idx, G, A, spec_.limits);
          Counts c = counts(ctx, w, W, A);
          r.fill_counts(c.hom, c.epi, c.mono);
          emit(fx.name + " " + detail::deg_name(fx.P, idx) + " W=" + wname + " " + gname(G) +
                   " A=" + ctx.selector(A),
               r, "cor.");
        }
      }
  }

  // Theorem 1 over every subgroup H of N(A); with `closure` set, also checks
  // that each family is closed under conjugation and twisting by every smooth
  // H of order dividing n.
  void theorem1(Fixture const& fx, detail::TargetContext& ctx, bool closure) {
    FiniteGroup const& G = ctx.group();
    for (std::size_t ip = 0; ip < fx.indexations.size(); ++ip) {
      Indexation const& idx = fx.indexations[ip];
      if (idx.n == 0) continue;
      auto const& images = ctx.phi_images_for(ip);
      for (std::size_t w = 0; w < fx.Ws.size(); ++w) {
        auto const& [wname, W] = fx.Ws[w];
        Count const k = deg_subgroup_index(idx, W);
        bool const marginal = marginal_degree_check(fx.P, W, idx) == MarginalCheck::ok;
        for (auto const& A : ctx.lattice()) {
          Subgroup const NA = normalizer(G, A);
          std::vector<Subgroup> candidates;
          for (auto const& H : ctx.lattice())
            if (H.is_subset_of(NA) && gcd_group(H, idx.n) > 1) candidates.push_back(H);
          for (FamilyKind kind : detail::kinds_for(W)) {
            if (kind == FamilyKind::mono && !marginal) continue;
            Subgroup const B = kind == FamilyKind::epi ? verbal_subgroup(A, idx.n) : A;
            auto members = ctx.family(w, A, kind);
            std::vector<Homomorphism> family;
            std::vector<PhiImages> fam_images;
            for (auto i : members) {
              family.push_back(ctx.homs()[i]);
              fam_images.push_back(images[i]);
            }
            std::string const inst = fx.name + " " + detail::deg_name(fx.P, idx) + " W=" + wname + " " + gname(G) +
                                     " A=" + ctx.selector(A) + " " + std::string(to_string(kind));
            if (!closure) {
              auto res = theorem1_divisor(family, fam_images, B, k, idx.n, candidates, ctx.searcher());
              out_.add_divisibility(inst + " smooth=" + std::to_string(res.smooth) + "/" +
                                        std::to_string(res.candidates),
                                    family.size(), res.divisor);
              continue;
            }
            HomFamilySpec fs{fx.P, W, G, A, kind};
            Count lcm = 1;
            std::size_t verified = 0;
            bool ok = true;
            for (auto const& H : candidates) {
              if (!divides(H.order(), idx.n)) continue;
              Subgroup const one[] = {H};
              if (theorem1_divisor(family, fam_images, B, k, idx.n, one, ctx.searcher()).smooth == 0) continue;
              if (verify_bkv_closure(family, fs, idx, H)) ok = false;
              ++verified;
              lcm = std::lcm(lcm, gcd_group(H, idx.n));
            }
            out_.add(inst + " H-verified=" + std::to_string(verified), family.size(), lcm,
                     ok && divides(lcm, family.size()));
          }
        }
      }
    }
  }

  void brauer() {
    std::string const filter = spec_.catalog.value_or("order<=" + std::to_string(spec_.max_order));
    for (auto const& name : resolve_catalog_filter(filter, spec_.limits)) {
      FiniteGroup G = group(name);
      if (G.order() > spec_.max_order)
        throw Error(ErrorKind::OrderCapExceeded, G.name() + " exceeds --max-order " + std::to_string(spec_.max_order));
      auto lattice = all_subgroups(G, spec_.limits);
      for (auto const& U : lattice) {
        Subgroup const N = normalizer(G, U);
        Count expected = Count(N.order()) * U.order(), found = 0;
        for (Elem v : N.elements()) {
          try {
            found += brauer_witness(G, U, v).size();
          } catch (Error const& e) {
            if (e.kind() != ErrorKind::NoWitness) throw;
          }
        }
        out_.add("brauer " + gname(G) + " U=" + selector_name(lattice, U), found, expected, found == expected);
      }
    }
  }

  CheckSpec const& spec_;
  CheckOutcome out_;
  std::map<std::string, FiniteGroup> cache_;
};

}  // namespace detail

/// Runs one suite. Rows come out in a fixed order independent of timing.
inline CheckOutcome run_check(CheckSpec const& spec) { return detail::Runner(spec).run(); }

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace detail {

inline std::string csv_field(std::string const& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Serializes the rows. CSV and JSON-lines carry the columns
/// instance, count, divisor, verdict; the table adds a summary line.
inline std::string format_report(CheckOutcome const& o, ReportFormat fmt) {
  std::ostringstream out;
  auto verdict = [](bool p) { return p ? "pass" : "fail"; };
  switch (fmt) {
    case ReportFormat::csv:
      out << "instance,count,divisor,verdict\n";
      for (auto const& r : o.rows)
        out << detail::csv_field(r.instance) << ',' << r.count << ',' << r.divisor << ',' << verdict(r.pass) << '\n';
      break;
    case ReportFormat::jsonl:
      for (auto const& r : o.rows) {
        nlohmann::ordered_json j;
        j["instance"] = r.instance;
        j["count"] = r.count;
        j["divisor"] = r.divisor;
        j["verdict"] = verdict(r.pass);
        out << j.dump() << '\n';
      }
      break;
    case ReportFormat::table: {
      std::size_t wi = 8, wc = 5, wd = 7;
      for (auto const& r : o.rows) {
        wi = std::max(wi, r.instance.size());
        wc = std::max(wc, std::to_string(r.count).size());
        wd = std::max(wd, std::to_string(r.divisor).size());
      }
      auto line = [&](std::string const& a, std::string const& b, std::string const& c, std::string const& d) {
        out << a << std::string(wi - a.size() + 2, ' ') << std::string(wc - b.size(), ' ') << b << "  "
            << std::string(wd - c.size(), ' ') << c << "  " << d << '\n';
      };
      line("instance", "count", "divisor", "verdict");
      for (auto const& r : o.rows) line(r.instance, std::to_string(r.count), std::to_string(r.divisor), verdict(r.pass));
      out << o.total() << " checks, " << o.passed << " passed, " << o.failed << " failed\n";
      break;
    }
  }
  return out.str();
}

inline std::string survey(std::string const& filter, Theorem theorem, ReportFormat fmt) {
  CheckSpec spec;
  spec.theorem = theorem;
  spec.catalog = filter;
  return format_report(run_check(spec), fmt);
}

/// One row of a stored CSV report.
struct ReportRow {
  std::string instance;
  Count count = 0;
  Count divisor = 1;
  bool recorded_pass = true;
};

/// Reads a CSV report back. Malformed input raises ParseError.
inline std::vector<ReportRow> parse_csv_report(std::istream& in, std::string const& source) {
  std::vector<ReportRow> rows;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line) || (++lineno, line != "instance,count,divisor,verdict"))
    throw ParseError(source, 1, 1, "expected header 'instance,count,divisor,verdict'");
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          cur += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    fields.push_back(cur);
    if (fields.size() != 4) throw ParseError(source, lineno, 1, "expected 4 fields");
    auto num = [&](std::string const& s, std::size_t col) {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(source, lineno, col, "expected a non-negative integer, got '" + s + "'");
      return Count(std::stoull(s));
    };
    ReportRow r;
    r.instance = fields[0];
    r.count = num(fields[1], fields[0].size() + 2);
    r.divisor = num(fields[2], fields[0].size() + fields[1].size() + 3);
    if (fields[3] != "pass" && fields[3] != "fail") throw ParseError(source, lineno, 1, "verdict must be pass or fail");
    r.recorded_pass = fields[3] == "pass";
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Re-checks divisor | count for every row of a stored report.
inline CheckOutcome verify_report(std::vector<ReportRow> const& rows) {
  CheckOutcome o;
  for (auto const& r : rows) o.add(r.instance, r.count, r.divisor, r.recorded_pass && divides(r.divisor, r.count));
  return o;
}

}  // namespace ghw
