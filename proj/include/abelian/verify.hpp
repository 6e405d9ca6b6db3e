#pragma once

// Release gate: end-to-end cross-checks that tie the layers of the library
// against one another.  Each criterion is self-contained, returns a verdict
// with a deterministic summary string (no timings in the text, so reports can
// be compared byte-for-byte across runs), and measures its own wall-clock
// time against an optional budget.

#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "abelian/algebra.hpp"
#include "abelian/aut.hpp"
#include "abelian/cocyclic.hpp"
#include "abelian/eta.hpp"
#include "abelian/witness.hpp"

namespace abelian::verify {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;    // deterministic; safe to diff between runs
  double elapsed_s = 0;  // measured, deliberately absent from detail
  double budget_s = 0;   // 0 = no wall-clock budget
};

namespace detail {

// Failure collector: bounded number of notes keeps reports short and stable.
struct Check {
  std::size_t total = 0;
  std::size_t failed = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++total;
    if (ok) return;
    ++failed;
    if (notes.size() < 6) notes.push_back(what);
  }

  bool ok() const { return failed == 0; }

  std::string summary(const std::string& on_pass) const {
    if (failed == 0) return std::to_string(total) + " checks: " + on_pass;
    std::ostringstream os;
    os << failed << " of " << total << " checks failed: ";
    for (std::size_t i = 0; i < notes.size(); ++i) os << (i ? "; " : "") << notes[i];
    if (failed > notes.size()) os << "; ...";
    return os.str();
  }
};

template <class Fn>
inline CriterionResult run_criterion(const std::string& name, double budget_s,
                                     Fn&& body) {
  CriterionResult r;
  r.name = name;
  r.budget_s = budget_s;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Check c;
    std::string on_pass = body(c);
    r.pass = c.ok();
    r.detail = c.summary(on_pass);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("aborted: ") + e.what();
  }
  r.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.budget_s > 0 && r.elapsed_s > r.budget_s) {
    r.pass = false;
    r.detail += " [wall-clock budget exceeded]";
  }
  return r;
}

}  // namespace detail

// The two-generator grid C_{p^n} x C_{p^m}, p in {2,3,5}, 1 <= m < n <= 4,
// with its exhaustive inventories.  Built once and shared by the criteria
// that consume it; the build cost is charged to the first consumer.
struct Rank2Point {
  Int p = 0;
  int n = 0, m = 0;
  CocyclicInventory inventory;
};

inline const std::vector<Rank2Point>& rank2_grid(std::vector<Rank2Point>& cache) {
  if (cache.empty()) {
    for (Int p : {2, 3, 5})
      for (int n = 2; n <= 4; ++n)
        for (int m = 1; m < n; ++m) {
          AbelianGroup g = AbelianGroup::from_primaries({{p, {n, m}}});
          cache.push_back({p, n, m, eta_bruteforce(g)});
        }
  }
  return cache;
}

// 1. On the two-generator grid the exhaustive class count must equal the
//    closed form (n-m+1)(m+1), and the rule dispatcher must agree.
inline CriterionResult rank2_grid_cross_check(std::vector<Rank2Point>& cache) {
  return detail::run_criterion(
      "rank2-grid-cross-check", 10.0, [&](detail::Check& c) {
        for (const auto& pt : rank2_grid(cache)) {
          Int want = eta_rank2(pt.n, pt.m);
          const AbelianGroup& g = pt.inventory.group;
          c.expect(pt.inventory.eta == want,
                   g.label() + ": exhaustive count " +
                       std::to_string(pt.inventory.eta) + " != closed form " +
                       std::to_string(want));
          c.expect(eta(g).value == want,
                   g.label() + ": dispatcher value " +
                       std::to_string(eta(g).value) + " != closed form " +
                       std::to_string(want));
        }
        return std::string(
            "closed form, dispatcher, and exhaustive enumeration agree on all "
            "18 grid points");
      });
}

// 2. The family C_{3^n} x C_3 must grow linearly: 2n classes.
inline CriterionResult rank2_linear_family() {
  return detail::run_criterion(
      "rank2-linear-family", 0, [](detail::Check& c) {
        for (int n = 1; n <= 4; ++n) {
          AbelianGroup g = AbelianGroup::from_primaries({{3, {n, 1}}});
          Int want = 2 * Int(n);
          c.expect(eta(g).value == want,
                   g.label() + ": dispatcher " + std::to_string(eta(g).value) +
                       " != " + std::to_string(want));
          c.expect(eta_bruteforce(g).eta == want,
                   g.label() + ": exhaustive " +
                       std::to_string(eta_bruteforce(g).eta) + " != " +
                       std::to_string(want));
        }
        return std::string("class count of C_{3^n} x C_3 is 2n for n = 1..4");
      });
}

// 3. Golden class counts for a fixed reference family, via both the rule
//    dispatcher and exhaustive enumeration, including the invariance of the
//    count under dropping a maximal homocyclic factor of top exponent.
inline CriterionResult reference_class_counts() {
  return detail::run_criterion(
      "reference-class-counts", 0, [](detail::Check& c) {
        struct Case {
          const char* spec;
          Int want;
        };
        static const Case cases[] = {
            {"C3xC3", 2},         {"C9xC9", 3},     {"C3xC3xC9xC9", 4},
            {"C9xC3", 4},         {"C27xC27", 4},   {"C27xC27xC9xC3", 8},
            {"C27xC9xC3", 8},     {"C27xC9", 6},    {"C27xC9xC3xC3", 8},
        };
        for (const auto& cs : cases) {
          AbelianGroup g = AbelianGroup::parse(cs.spec);
          c.expect(eta(g).value == cs.want,
                   std::string(cs.spec) + ": dispatcher " +
                       std::to_string(eta(g).value) + " != " +
                       std::to_string(cs.want));
          c.expect(eta_bruteforce(g).eta == cs.want,
                   std::string(cs.spec) + ": exhaustive " +
                       std::to_string(eta_bruteforce(g).eta) + " != " +
                       std::to_string(cs.want));
        }
        Int peeled = eta(AbelianGroup::parse("C27xC27xC9xC3")).value;
        Int base = eta(AbelianGroup::parse("C27xC9xC3")).value;
        c.expect(peeled == base,
                 "dropping the extra top-exponent factor changed the count: " +
                     std::to_string(peeled) + " vs " + std::to_string(base));
        return std::string("all 9 reference groups give their known counts, "
                           "by formula and by enumeration");
      });
}

// 4. The class count equals the divisor count of the exponent exactly for
//    groups whose Sylow components are all homocyclic.  Sweeps every p-group
//    with partition rank <= 3 and exponent <= p^3 for p in {2,3}, plus all
//    coprime products of one group from each prime.
inline CriterionResult divisor_count_characterization() {
  return detail::run_criterion(
      "divisor-count-characterization", 60.0, [](detail::Check& c) {
        static const std::vector<std::vector<int>> partitions = {
            {1},       {2},       {3},       {1, 1},    {2, 1},    {2, 2},
            {3, 1},    {3, 2},    {3, 3},    {1, 1, 1}, {2, 1, 1}, {2, 2, 1},
            {2, 2, 2}, {3, 1, 1}, {3, 2, 1}, {3, 2, 2}, {3, 3, 1}, {3, 3, 2},
            {3, 3, 3}};
        auto check_one = [&](const AbelianGroup& g) {
          bool equal = eta(g).value == g.tau();
          bool homo = g.is_homocyclic();
          c.expect(equal == homo,
                   g.label() + ": count==divisors is " +
                       (equal ? "true" : "false") + " but homocyclic is " +
                       (homo ? "true" : "false"));
        };
        for (const auto& a : partitions)
          check_one(AbelianGroup::from_primaries({{2, a}}));
        for (const auto& b : partitions)
          check_one(AbelianGroup::from_primaries({{3, b}}));
        for (const auto& a : partitions)
          for (const auto& b : partitions)
            check_one(AbelianGroup::from_primaries({{2, a}, {3, b}}));
        return std::string(
            "count==divisor-count exactly on homocyclic-Sylow groups, over "
            "38 p-groups and 361 coprime products");
      });
}

// 5. Multiplicativity over coprime factors, with the product side counted by
//    a direct whole-group character sweep (no per-prime splitting), so the
//    two sides of the equality come from independent code paths.
inline CriterionResult coprime_multiplicativity(std::uint64_t seed) {
  return detail::run_criterion(
      "coprime-multiplicativity", 0, [seed](detail::Check& c) {
        // mt19937_64 plus modulo keeps the sample identical on every
        // platform; distribution adapters would not.
        std::mt19937_64 rng(seed);
        auto rand_below = [&](Int n) { return Int(rng() % std::uint64_t(n)); };
        auto random_group = [&]() {
          Int n = 2 + rand_below(242);  // order in [2, 243]
          std::map<Int, std::vector<int>> prim;
          for (auto [p, a] : num::factorize(n)) {
            int rem = a;
            std::vector<int> parts;
            while (rem > 0) {
              int part = 1 + int(rand_below(rem));
              parts.push_back(part);
              rem -= part;
            }
            std::sort(parts.begin(), parts.end(), std::greater<int>());
            prim[p] = parts;
          }
          return AbelianGroup::from_primaries(prim);
        };
        for (int trial = 0; trial < 20; ++trial) {
          AbelianGroup h = random_group();
          AbelianGroup k = random_group();
          while (std::gcd(h.order(), k.order()) != 1) k = random_group();
          std::map<Int, std::vector<int>> merged = h.primaries();
          for (const auto& [p, parts] : k.primaries()) merged[p] = parts;
          AbelianGroup product = AbelianGroup::from_primaries(merged);

          std::set<std::string> types;
          for (const auto& s : enumerate_cocyclic_direct(product))
            types.insert(iso_type(s).label());
          Int direct = Int(types.size());
          Int split = eta(h).value * eta(k).value;
          c.expect(direct == split,
                   h.label() + " x " + k.label() + ": direct sweep " +
                       std::to_string(direct) + " != factor product " +
                       std::to_string(split));
          c.expect(eta(product).value == split,
                   h.label() + " x " + k.label() + ": dispatcher " +
                       std::to_string(eta(product).value) +
                       " != factor product " + std::to_string(split));
        }
        return std::string(
            "20 random coprime pairs: whole-group sweep equals the product of "
            "factor counts");
      });
}

// 6. Witness construction: inside each of five benchmark groups, every
//    isomorphic pair of cocyclic subgroups yields a validated automorphism
//    carrying one onto the other; attempts across distinct types fail with
//    the typed refusal; orbits under the automorphism generators coincide
//    with the isomorphism classes.
inline CriterionResult witness_suite() {
  return detail::run_criterion(
      "witness-suite", 0, [](detail::Check& c) {
        static const char* const specs[] = {"C8xC2", "C9xC3", "C4xC4xC2",
                                            "C27xC9xC3", "C36xC6"};
        for (const char* spec : specs) {
          AbelianGroup g = AbelianGroup::parse(spec);
          std::map<std::string, std::vector<Subgroup>> classes;
          for (const auto& s : enumerate_cocyclic(g))
            classes[iso_type(s).label()].push_back(s);

          auto certify = [&](const Subgroup& from, const Subgroup& to,
                             const std::string& tag) {
            WitnessReport w = extend_to_automorphism(g, from, to);
            bool ok = w.phi.is_automorphism() && w.phi.image_of(from) == to &&
                      w.quotient_order == g.order() / from.order();
            for (const auto& b : from.basis())
              ok = ok && w.theta.apply(b) == w.phi.apply(b);
            c.expect(ok, std::string(spec) + " " + tag +
                             ": witness failed validation");
          };
          for (const auto& [label, members] : classes) {
            for (const auto& mem : members) certify(members.front(), mem, label);
            certify(members.back(), members.front(), label + " (reverse)");
          }

          std::vector<const std::vector<Subgroup>*> cls;
          for (const auto& [label, members] : classes) cls.push_back(&members);
          for (std::size_t i = 0; i < cls.size(); ++i)
            for (std::size_t j = i + 1; j < cls.size(); ++j) {
              bool refused = false, wrong = false;
              try {
                extend_to_automorphism(g, cls[i]->front(), cls[j]->front());
              } catch (const TypeMismatchError&) {
                refused = true;
              } catch (const std::exception&) {
                wrong = true;
              }
              c.expect(refused && !wrong,
                       std::string(spec) +
                           ": cross-type attempt did not raise the typed "
                           "refusal");
            }

          auto gens = aut_generators(g);
          for (const auto& [label, members] : classes) {
            std::set<std::string> orbit_keys, class_keys;
            for (const auto& s : subgroup_orbit(members.front(), gens))
              orbit_keys.insert(s.key());
            for (const auto& s : members) class_keys.insert(s.key());
            c.expect(orbit_keys == class_keys,
                     std::string(spec) + " " + label +
                         ": generator orbit differs from the isomorphism "
                         "class");
          }
        }
        return std::string(
            "witnesses certified within classes, typed refusals across "
            "classes, orbits equal classes in all 5 groups");
      });
}

// 7. The predicted two-generator class lists match the exhaustive
//    inventories, type by type and in the same order, across the grid.
inline CriterionResult rank2_type_census(std::vector<Rank2Point>& cache) {
  return detail::run_criterion(
      "rank2-type-census", 0, [&](detail::Check& c) {
        for (const auto& pt : rank2_grid(cache)) {
          auto want = list_cocyclic_types_rank2(pt.p, pt.n, pt.m);
          bool ok = want.size() == pt.inventory.rows.size();
          for (std::size_t i = 0; ok && i < want.size(); ++i)
            ok = want[i] == pt.inventory.rows[i].type;
          c.expect(ok, pt.inventory.group.label() +
                           ": predicted type list differs from the "
                           "exhaustive inventory");
        }
        return std::string(
            "predicted and enumerated type lists identical on all 18 grid "
            "points");
      });
}

// 8. Full code pipeline: for six (group, field size) pairs the idempotent
//    system is complete and orthogonal, the minimal codes biject with the
//    cyclotomic classes, the orbit count equals the subgroup-class count,
//    and weight distributions are constant on orbits.  Includes exact golden
//    values for the binary length-7 cyclic case.
inline CriterionResult minimal_code_cross_check() {
  return detail::run_criterion(
      "minimal-code-cross-check", 120.0, [](detail::Check& c) {
        struct Pair {
          const char* spec;
          Int q;
        };
        static const Pair pairs[] = {{"C7", 2},     {"C3xC3", 2},
                                     {"C9xC3", 2},  {"C8xC2", 3},
                                     {"C27xC9", 2}, {"C4xC2", 3}};
        for (const auto& pr : pairs) {
          std::string tag = std::string(pr.spec) + "/q=" + std::to_string(pr.q);
          AbelianGroup g = AbelianGroup::parse(pr.spec);
          GroupAlgebra alg(g, pr.q);
          CodeSystem sys = build_code_system(g, pr.q);

          auto sum = alg.zero();
          for (const auto& code : sys.codes) sum = alg.add(sum, code.idempotent);
          c.expect(sum == alg.one(), tag + ": idempotents do not sum to 1");
          bool orthogonal = true;
          for (std::size_t i = 0; i < sys.codes.size(); ++i)
            for (std::size_t j = i + 1; j < sys.codes.size(); ++j) {
              auto prod = alg.mul(sys.codes[i].idempotent,
                                  sys.codes[j].idempotent);
              for (Int v : prod) orthogonal = orthogonal && v == 0;
            }
          c.expect(orthogonal, tag + ": idempotent pair with nonzero product");

          c.expect(sys.codes.size() == cyclotomic_classes(g, pr.q).size(),
                   tag + ": code count differs from class count");
          Int dims = 0;
          for (const auto& code : sys.codes) dims += code.dimension;
          c.expect(dims == g.order(),
                   tag + ": dimensions sum to " + std::to_string(dims) +
                       " != " + std::to_string(g.order()));

          auto gens = aut_generators(g);
          auto eq = code_equivalence_classes(alg, sys, gens);
          c.expect(Int(eq.count) == eta(g).value,
                   tag + ": orbit count " + std::to_string(eq.count) +
                       " != subgroup class count " +
                       std::to_string(eta(g).value));

          CodeCaps caps;
          caps.max_group = 256;  // admits the order-243 benchmark
          for (const auto& orbit : eq.orbits) {
            auto lead = weight_distribution(alg, sys.codes[orbit.front()], caps);
            for (std::size_t idx : orbit)
              c.expect(weight_distribution(alg, sys.codes[idx], caps) == lead,
                       tag + ": weight distribution varies inside an orbit");
          }

          if (std::string(pr.spec) == "C7") {
            std::multiset<int> dims_seen;
            for (const auto& code : sys.codes) dims_seen.insert(code.dimension);
            c.expect(dims_seen == std::multiset<int>{1, 3, 3},
                     tag + ": dimensions are not {1,3,3}");
            for (const auto& code : sys.codes) {
              auto census = weight_distribution(alg, code, caps);
              if (code.dimension == 1)
                c.expect(census == std::map<int, Int>{{0, 1}, {7, 1}},
                         tag + ": repetition-code census wrong");
              else
                c.expect(census == std::map<int, Int>{{0, 1}, {4, 7}},
                         tag + ": dimension-3 census wrong");
            }
          }
        }
        return std::string(
            "idempotent systems complete and orthogonal, orbit counts match, "
            "censuses orbit-invariant, length-7 golden values exact");
      });
}

// The in-process battery.  The report-determinism criterion is external by
// nature (it compares two invocations of the command-line tool) and lives
// with the acceptance runner.
inline std::vector<CriterionResult> run_battery(std::uint64_t seed = 7) {
  std::vector<Rank2Point> grid;
  std::vector<CriterionResult> out;
  out.push_back(rank2_grid_cross_check(grid));
  out.push_back(rank2_linear_family());
  out.push_back(reference_class_counts());
  out.push_back(divisor_count_characterization());
  out.push_back(coprime_multiplicativity(seed));
  out.push_back(witness_suite());
  out.push_back(rank2_type_census(grid));
  out.push_back(minimal_code_cross_check());
  return out;
}

}  // namespace abelian::verify
