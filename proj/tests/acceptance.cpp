// Acceptance run: one line per criterion, PASS or FAIL, with the runtime
// against its limit. Exit status is nonzero when any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "ghw/harness.hpp"
#include "oracles.hpp"

using namespace ghw;

namespace {

struct Result {
  bool pass = true;
  std::string detail;

  void require(bool cond, std::string const& what) {
    if (!cond) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

CheckOutcome suite(Theorem t, std::optional<std::string> catalog = std::nullopt) {
  CheckSpec spec;
  spec.theorem = t;
  spec.catalog = std::move(catalog);
  return run_check(spec);
}

std::string summary(CheckOutcome const& o) {
  return std::to_string(o.passed) + "/" + std::to_string(o.total()) + " rows pass";
}

Result frobenius() {
  Result r;
  auto o = suite(Theorem::frobenius);
  r.require(o.failed == 0 && o.total() == 28 * 30, summary(o));
  r.require(count_power_solutions(build_group("S3"), 2) == 4, "(S3,2) != 4");
  r.require(count_power_solutions(build_group("Q8"), 4) == 8, "(Q8,4) != 8");
  if (r.pass) r.detail = summary(o) + ", spot values 4 and 8";
  return r;
}

Result gcd_methods() {
  Result r;
  std::size_t pairs = 0;
  try {
    for (auto const& name : resolve_catalog_filter("order<=48")) {
      auto G = build_group(name);
      for (Count n = 0; n <= 100; ++n, ++pairs) {
        Count g = gcd_group(G, n, GcdMethod::both);
        if (n == 0) r.require(g == G.order(), "GCD(" + name + ", 0) != |G|");
      }
    }
  } catch (Error const& e) {
    r.require(false, e.what());
  }
  if (r.pass) r.detail = std::to_string(pairs) + " (G, n) pairs agree";
  return r;
}

Result gen_tuples() {
  Result r;
  auto o = suite(Theorem::gen_tuples);
  r.require(o.failed == 0, summary(o));
  auto a5 = suite(Theorem::gen_tuples, "A5");
  r.require(a5.total() == 1 && a5.rows[0].divisor == 15 && a5.rows[0].count > 0, "A5 instance");
  if (r.pass) r.detail = summary(o) + ", A5 count " + std::to_string(a5.rows[0].count) + " divisor 15";
  return r;
}

Result pass_all(Theorem t) {
  Result r;
  auto o = suite(t);
  r.require(o.failed == 0 && o.total() > 0, summary(o));
  if (r.pass) r.detail = summary(o);
  return r;
}

Result fixtures() {
  Result r;
  std::size_t rows = 0;
  for (auto t : {Theorem::frobeniusian_abcd, Theorem::corollary3, Theorem::theorem1}) {
    auto o = suite(t);
    rows += o.total();
    r.require(o.failed == 0, std::string(to_string(t)) + ": " + summary(o));
  }

  // The cyclic fixture: P = <x | x^4>, n = 4, W = <x>, G = C8, A of order 4.
  auto P = Presentation::free_product_of_cyclics({4});
  auto G = build_group("C8");
  auto A = select_subgroup(G, "order:4:0");
  SubgroupSpec W;
  W.gen_words = {Word::generator(0)};
  W.known_order = 4;
  W.center = CenterKnowledge{CenterKnowledge::Kind::whole, 4, std::nullopt};
  Indexation idx(4, {1});
  Count epi = count_family({P, W, G, A, FamilyKind::epi});
  Count mono = count_family({P, W, G, A, FamilyKind::mono});

  // Strongest divisor any clause predicts for the Epi family.
  Count epi_divisor = 1;
  for (auto const& c : predicted_divisors(P, W, idx, G, A).claims)
    if (c.kind == FamilyKind::epi && c.applicable) epi_divisor = std::lcm(epi_divisor, c.divisor);
  {
    auto homs = enumerate_homs(P, G);
    std::vector<Homomorphism> fam;
    std::vector<PhiImages> images;
    for (auto const& h : homs)
      if (in_family(classify(h, {P, W, G, A, FamilyKind::epi}), FamilyKind::epi)) {
        fam.push_back(h);
        images.push_back(phi_images(h, idx));
      }
    std::vector<Subgroup> candidates;
    for (auto const& H : all_subgroups(G))
      if (H.is_subset_of(normalizer(G, A))) candidates.push_back(H);
    SmoothnessSearcher searcher;
    epi_divisor = std::lcm(epi_divisor,
                           theorem1_divisor(fam, images, verbal_subgroup(A, 4), 1, 4, candidates, searcher).divisor);
  }
  r.require(epi == 2 && epi_divisor == 2, "C8 Epi: count " + std::to_string(epi) + ", predicted divisor " +
                                               std::to_string(epi_divisor) + " (expected 2 and 2)");
  r.require(mono == 2, "C8 Mono: count " + std::to_string(mono) + " (expected 2)");
  if (r.pass) r.detail = std::to_string(rows) + " fixture rows pass, C8 Epi 2/2, Mono 2";
  return r;
}

Result brauer() {
  Result r;
  auto o = suite(Theorem::brauer);
  r.require(o.failed == 0 && o.total() > 0, summary(o));
  Count witnesses = 0;
  for (auto const& row : o.rows) witnesses += row.count;
  if (r.pass) r.detail = summary(o) + ", " + std::to_string(witnesses) + " witnesses, 0 NoWitness";
  return r;
}

Result phi_core_oracle() {
  Result r;
  std::size_t checked = 0;
  for (auto const& fx : default_fixtures())
    for (auto const& target : fx.targets) {
      auto G = build_group(target);
      if (G.order() > 24) continue;
      auto lattice = all_subgroups(G);
      auto homs = enumerate_homs(fx.P, G);
      for (auto const& idx : fx.indexations)
        for (auto const& h : homs)
          for (auto const& H : lattice) {
            auto core = phi_core(h, idx, H).core;
            std::vector<Elem> mine(core.elements().begin(), core.elements().end());
            r.require(mine == oracle::phi_core_by_definition(h, idx, H), fx.name + " " + target);
            ++checked;
          }
    }
  if (r.pass) r.detail = std::to_string(checked) + " (φ, H) pairs match";
  return r;
}

Result closure_and_twist() {
  Result r;
  auto o = suite(Theorem::bkv_closure);
  r.require(o.failed == 0, summary(o));

  std::mt19937 rng(99);
  std::size_t words = 0;
  for (auto const& fx : default_fixtures()) {
    std::vector<FiniteGroup> groups;
    std::vector<std::vector<Subgroup>> lattices;
    std::vector<std::vector<Homomorphism>> homs;
    for (auto const& t : fx.targets) {
      groups.push_back(build_group(t));
      lattices.push_back(all_subgroups(groups.back()));
      homs.push_back(enumerate_homs(fx.P, groups.back()));
    }
    std::uniform_int_distribution<std::size_t> pick_t(0, groups.size() - 1), pick_i(0, fx.indexations.size() - 1);
    std::uniform_int_distribution<int> len(0, 10), ex(-5, 5);
    std::uniform_int_distribution<std::uint32_t> gen(0, std::uint32_t(fx.P.num_gens() - 1));
    std::size_t done = 0;
    while (done < 1000) {
      std::size_t t = pick_t(rng);
      auto const& idx = fx.indexations[pick_i(rng)];
      auto const& G = groups[t];
      auto const& h = homs[t][std::uniform_int_distribution<std::size_t>(0, homs[t].size() - 1)(rng)];
      auto const& H = lattices[t][std::uniform_int_distribution<std::size_t>(0, lattices[t].size() - 1)(rng)];
      if (!divides(H.order(), idx.n)) continue;
      auto core = phi_core(h, idx, H).core;
      Elem c = core.elements()[std::uniform_int_distribution<std::size_t>(0, core.order() - 1)(rng)];
      auto psi = twist_hom(h, idx, H, c, degree_one_word(idx));
      Word w;
      for (int i = len(rng); i > 0; --i) w = w * Word::generator(gen(rng), ex(rng));
      r.require(core.contains(G.mul(G.inv(h(w)), psi(w))), "ψ(f) outside φ(f)H_φ in " + fx.name);
      ++done;
    }
    words += done;
  }
  if (r.pass) r.detail = summary(o) + ", " + std::to_string(words) + " random words";
  return r;
}

Result smoothness_lemma() {
  Result r;
  std::size_t cases = 0;
  auto P = Presentation::free_product_of_cyclics({3, 5});
  Indexation idx(15, {5, 3});
  for (auto const& name : {"S3", "C3xS3", "A4", "S4"}) {
    auto G = build_group(name);
    auto homs = enumerate_homs(P, G);
    auto lattice = all_subgroups(G);
    std::vector<PhiImages> images;
    for (auto const& h : homs) images.push_back(phi_images(h, idx));
    for (auto const& B : lattice) {
      bool const B_normal = is_normal(B, G.whole());
      for (auto const& H : lattice) {
        Count const index = H.order() / intersect(H, B).order();
        for (Count k : {1u, 2u, 3u, 4u, 6u}) {
          // 1) H ⊆ B: take H_φ.  2) |H| divides k: take {e}.  3) B normal and
          // |H : H ∩ B| divides k: take H_φ ∩ B.
          bool c1 = H.is_subset_of(B), c2 = divides(H.order(), k), c3 = B_normal && divides(index, k);
          if (!c1 && !c2 && !c3) continue;
          auto w = smoothness_witness(H, B, k, homs, idx);
          r.require(w.smooth(), std::string("not smooth in ") + name);
          for (std::size_t i = 0; i < homs.size(); ++i) {
            auto core = phi_core_of(images[i], H);
            auto const& full = images[i].full_image;
            if (c1) r.require(is_smoothness_witness(core, B, k, full, core), "case 1 witness");
            if (c2) r.require(is_smoothness_witness(core, B, k, full, G.trivial()), "case 2 witness");
            if (c3) r.require(is_smoothness_witness(core, B, k, full, intersect(core, B)), "case 3 witness");
          }
          ++cases;
        }
      }
    }
  }
  if (r.pass) r.detail = std::to_string(cases) + " (H, B, k) instances";
  return r;
}

Result abelianization_checks() {
  Result r;
  r.require(exp_of_invariants(abelianization(Presentation::free_product_of_cyclics({3, 5}))) == 15, "exp != 15");
  Presentation free_part({"x", "y"}, {Word::generator(0, 2)});
  r.require(abelianization(free_part).free_rank == 1 && exp_of_invariants(abelianization(free_part)) == 0,
            "free rank");
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> dim(1, 5), entry(-9, 9);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t rows = std::size_t(dim(rng)), cols = std::size_t(dim(rng));
    IntMatrix m(rows, std::vector<std::int64_t>(cols));
    for (auto& row : m)
      for (auto& v : row) v = entry(rng);
    r.require(smith_invariant_factors(m, cols) == oracle::invariant_factors_by_minors(m, cols),
              "SNF mismatch at trial " + std::to_string(trial));
  }
  if (r.pass) r.detail = "exp 15, exp 0 with free rank 1, 1000 matrices agree";
  return r;
}

int run_cli(std::string const& args, std::string& output) {
  std::string const out = "/tmp/ghw_acceptance_" + std::to_string(::getpid()) + ".txt";
  int status = std::system((std::string(GHW_CLI) + " " + args + " >" + out + " 2>&1").c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  output = ss.str();
  std::remove(out.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Result negative_paths() {
  Result r;
  std::string out;
  std::string const data = GHW_DATA_DIR;
  int code = run_cli("verify --report " + data + "/corrupted_counts.csv", out);
  r.require(code == 1, "corrupted report exit " + std::to_string(code));
  code = run_cli("count --pres " + data + "/malformed.pres --group S3", out);
  r.require(code == 2, "malformed presentation exit " + std::to_string(code));
  r.require(out.find("malformed.pres:3:9:") != std::string::npos, "no line-located ParseError: " + out);
  code = run_cli("verify --report " + data + "/frobenius_s3.csv", out);
  r.require(code == 0, "clean report exit " + std::to_string(code));
  if (r.pass) r.detail = "exit 1 on corrupted counts, exit 2 with malformed.pres:3:9";
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    char const* name;
    double limit_seconds;
    std::function<Result()> run;
  };
  std::vector<Criterion> criteria{
      {1, "Frobenius suite", 5, frobenius},
      {2, "GCD definition vs Sylow", 30, gcd_methods},
      {3, "generating tuples", 10, gen_tuples},
      {4, "Solomon suite", 60, [] { return pass_all(Theorem::solomon); }},
      {5, "Iwasaki suite", 60, [] { return pass_all(Theorem::iwasaki); }},
      {6, "Frobeniusian a-d, Theorem 1 and corollary fixtures", 120, fixtures},
      {7, "Brauer lemma", 30, brauer},
      {8, "phi-core oracle", 30, phi_core_oracle},
      {9, "closure and twist", 60, closure_and_twist},
      {10, "smoothness lemma", 10, smoothness_lemma},
      {11, "abelianization and SNF", 5, abelianization_checks},
      {12, "negative paths", 30, negative_paths},
  };

  int failed = 0;
  for (auto const& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (std::exception const& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      r.pass = false;
      r.detail += " (too slow)";
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, c.limit_seconds);
    std::cout << "criterion " << c.id << " " << (r.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << r.detail
              << " [" << timing << "]" << std::endl;
    failed += !r.pass;
  }
  std::cout << (criteria.size() - std::size_t(failed)) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
