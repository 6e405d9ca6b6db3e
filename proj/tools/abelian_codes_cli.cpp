// Command-line interface: batch computations over finite abelian groups —
// class counting (closed-form rules and exhaustive enumeration), cocyclic
// subgroup inventories, automorphism witnesses, minimal-code tables, and the
// release verification battery.
//
// Every invocation emits either a human-readable text report or (with
// --json) a single structured document:
//   {schema_version, command, input, result, timing_ms}
// Reports are byte-identical for identical inputs; timing_ms stays null
// unless --timing is given, precisely so that diffing reports works.
//
// Exit codes:
//   0 success / agreement
//   2 parse error (bad flags, bad group spec, invalid field size)
//   3 enumeration cap exceeded
//   4 verification mismatch (cross-check disagreement or failed battery)
//   5 subgroup is not cocyclic
//   6 subgroup types mismatch (no witness can exist)

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "abelian/algebra.hpp"
#include "abelian/aut.hpp"
#include "abelian/cocyclic.hpp"
#include "abelian/eta.hpp"
#include "abelian/verify.hpp"
#include "abelian/witness.hpp"

namespace {

using abelian::AbelianGroup;
using abelian::Element;
using abelian::Int;
using abelian::Subgroup;
using json = nlohmann::ordered_json;

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
      .count();
}

// ---------------------------------------------------------------------------
// formatting helpers

std::string element_str(const Element& e) {
  std::string out = "(";
  for (std::size_t i = 0; i < e.c.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(e.c[i]);
  }
  return out + ")";
}

json element_json(const Element& e) {
  json a = json::array();
  for (Int v : e.c) a.push_back(v);
  return a;
}

json elements_json(const std::vector<Element>& es) {
  json a = json::array();
  for (const auto& e : es) a.push_back(element_json(e));
  return a;
}

std::string elements_str(const std::vector<Element>& es) {
  std::string out;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i) out += ", ";
    out += element_str(es[i]);
  }
  return out;
}

std::string poly_str(const std::vector<Int>& coeffs) {
  // little-endian coefficient vector -> "x^3+x+1"
  std::string out;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] == 0) continue;
    if (!out.empty()) out += "+";
    std::string term;
    if (i == 0 || coeffs[i] != 1) term += std::to_string(coeffs[i]);
    if (i >= 1) {
      if (!term.empty()) term += "*";
      term += "x";
      if (i >= 2) term += "^" + std::to_string(i);
    }
    out += term;
  }
  return out.empty() ? "0" : out;
}

const char* rule_name(abelian::EtaRule r) {
  switch (r) {
    case abelian::EtaRule::SylowSplit: return "sylow-split";
    case abelian::EtaRule::Homocyclic: return "homocyclic";
    case abelian::EtaRule::Rank2: return "rank2";
    case abelian::EtaRule::PowerCollapse: return "power-collapse";
    case abelian::EtaRule::HomocyclicFactorPeel: return "homocyclic-factor-peel";
    case abelian::EtaRule::BruteForce: return "brute-force";
  }
  return "unknown";
}

json derivation_json(const abelian::EtaDerivation& d) {
  json j;
  j["rule"] = rule_name(d.rule);
  j["group"] = d.group;
  j["value"] = d.value;
  if (!d.children.empty()) {
    json kids = json::array();
    for (const auto& ch : d.children) kids.push_back(derivation_json(ch));
    j["children"] = kids;
  }
  return j;
}

void derivation_text(const abelian::EtaDerivation& d, int depth,
                     std::ostream& os) {
  os << std::string(std::size_t(2 * depth + 2), ' ') << rule_name(d.rule) << " "
     << d.group << " = " << d.value << "\n";
  for (const auto& ch : d.children) derivation_text(ch, depth + 1, os);
}

// "a,b,c;d,e,f" -> generator list for a subgroup of g.
Subgroup parse_subgroup(const AbelianGroup& g, const std::string& text) {
  std::vector<Element> gens;
  std::stringstream groups(text);
  std::string one;
  while (std::getline(groups, one, ';')) {
    std::vector<Int> coords;
    std::stringstream parts(one);
    std::string item;
    while (std::getline(parts, item, ',')) {
      try {
        std::size_t used = 0;
        Int v = std::stoll(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        coords.push_back(v);
      } catch (const std::exception&) {
        throw abelian::ParseError("bad coordinate '" + item +
                                  "' in generator list '" + text + "'");
      }
    }
    if (coords.size() != g.rank())
      throw abelian::ParseError(
          "generator '" + one + "' has " + std::to_string(coords.size()) +
          " coordinates; " + g.label() + " needs " + std::to_string(g.rank()));
    for (std::size_t i = 0; i < coords.size(); ++i)
      coords[i] = abelian::num::mod_floor(coords[i], g.generator_orders()[i]);
    gens.push_back(g.make(std::move(coords)));
  }
  if (gens.empty())
    throw abelian::ParseError("empty generator list for subgroup of " +
                              g.label());
  return Subgroup::from_generators(g, gens);
}

// ---------------------------------------------------------------------------
// report emission

struct Emit {
  bool as_json = false;
  bool timing = false;
  Clock::time_point t0 = Clock::now();

  int report(const std::string& command, const json& input, const json& result,
             const std::string& human, int code) const {
    if (as_json) {
      json doc;
      doc["schema_version"] = 1;
      doc["command"] = command;
      doc["input"] = input;
      doc["result"] = result;
      doc["timing_ms"] = timing ? json(elapsed_ms(t0)) : json(nullptr);
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << human;
      if (timing) std::cout << "time: " << elapsed_ms(t0) << " ms\n";
    }
    return code;
  }

  int error(const std::string& command, const json& input, int code,
            const char* category, const std::string& message) const {
    if (as_json) {
      json doc;
      doc["schema_version"] = 1;
      doc["command"] = command;
      doc["input"] = input;
      doc["error"] = {{"category", category}, {"message", message}};
      doc["timing_ms"] = timing ? json(elapsed_ms(t0)) : json(nullptr);
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cerr << "error (" << category << "): " << message << "\n";
    }
    return code;
  }
};

struct Failure {
  int code;
  const char* category;
};

Failure classify(const std::exception& e) {
  if (dynamic_cast<const abelian::TypeMismatchError*>(&e))
    return {6, "type-mismatch"};
  if (dynamic_cast<const abelian::NotCocyclicError*>(&e))
    return {5, "not-cocyclic"};
  if (dynamic_cast<const abelian::CapError*>(&e)) return {3, "cap-exceeded"};
  if (dynamic_cast<const abelian::ParseError*>(&e)) return {2, "parse"};
  if (dynamic_cast<const abelian::InvariantError*>(&e))
    return {4, "verification-failure"};
  return {1, "internal"};
}

json opt_json(const std::optional<Int>& v) {
  return v ? json(*v) : json(nullptr);
}

// ---------------------------------------------------------------------------
// commands

struct Options {
  std::string group;
  std::string method = "formula";
  std::string hgens, kgens;
  Int q = 0;
  bool weights = false;
  bool orbits = false;
  Int seed = 7;
  std::optional<Int> cap;
};

int cmd_eta(const Options& o, const Emit& emit) {
  json input{{"group", o.group}, {"method", o.method}, {"cap", opt_json(o.cap)}};
  try {
    AbelianGroup g = AbelianGroup::parse(o.group);
    abelian::Caps caps;
    if (o.cap) caps.component = *o.cap;

    json result;
    std::ostringstream human;
    human << "group: " << g.label() << "  (" << g.primary_label() << ", order "
          << g.order() << ")\n";
    result["group"] = g.label();
    result["order"] = g.order();
    result["method"] = o.method;

    Int value = 0;
    bool agreement = true;
    if (o.method == "formula" || o.method == "both") {
      abelian::EtaResult r = abelian::eta(g, caps);
      value = r.value;
      result["formula"] = {{"value", r.value},
                           {"derivation", derivation_json(r.derivation)}};
      human << "formula value: " << r.value << "\n" << "derivation:\n";
      derivation_text(r.derivation, 0, human);
    }
    if (o.method == "brute" || o.method == "both") {
      abelian::CocyclicInventory inv = abelian::eta_bruteforce(g, caps);
      result["bruteforce"] = {{"value", inv.eta},
                              {"cocyclic_subgroups", inv.total_subgroups}};
      human << "bruteforce value: " << inv.eta << "  (" << inv.total_subgroups
            << " cocyclic subgroups)\n";
      if (o.method == "both") {
        agreement = inv.eta == value;
        result["agreement"] = agreement;
        human << "agreement: " << (agreement ? "yes" : "NO") << "\n";
      } else {
        value = inv.eta;
      }
    }
    result["value"] = value;
    human << "classes: " << value << "\n";
    return emit.report("eta", input, result, human.str(), agreement ? 0 : 4);
  } catch (const std::exception& e) {
    auto f = classify(e);
    return emit.error("eta", input, f.code, f.category, e.what());
  }
}

int cmd_inventory(const Options& o, const Emit& emit) {
  json input{{"group", o.group}, {"cap", opt_json(o.cap)}};
  try {
    AbelianGroup g = AbelianGroup::parse(o.group);
    abelian::Caps caps;
    if (o.cap) caps.component = *o.cap;
    abelian::CocyclicInventory inv = abelian::eta_bruteforce(g, caps);

    json rows = json::array();
    std::ostringstream human;
    human << "group: " << g.label() << "  (order " << g.order() << ")\n"
          << "classes: " << inv.eta << "   cocyclic subgroups: "
          << inv.total_subgroups << "\n";
    std::size_t width = 4;
    for (const auto& row : inv.rows)
      width = std::max(width, row.type.label().size());
    human << "type" << std::string(width - 4 + 2, ' ') << "count  representative\n";
    for (const auto& row : inv.rows) {
      rows.push_back({{"type", row.type.label()},
                      {"count", row.count},
                      {"representative", elements_json(row.representative.basis())}});
      std::string label = row.type.label();
      human << label << std::string(width - label.size() + 2, ' ') << row.count
            << "  " << elements_str(row.representative.basis()) << "\n";
    }
    json result{{"group", g.label()},
                {"order", g.order()},
                {"eta", inv.eta},
                {"total_subgroups", inv.total_subgroups},
                {"rows", rows}};
    return emit.report("inventory", input, result, human.str(), 0);
  } catch (const std::exception& e) {
    auto f = classify(e);
    return emit.error("inventory", input, f.code, f.category, e.what());
  }
}

int cmd_witness(const Options& o, const Emit& emit) {
  json input{{"group", o.group},
             {"h_generators", o.hgens},
             {"k_generators", o.kgens}};
  try {
    AbelianGroup g = AbelianGroup::parse(o.group);
    Subgroup h = parse_subgroup(g, o.hgens);
    Subgroup k = parse_subgroup(g, o.kgens);
    abelian::WitnessReport w = abelian::extend_to_automorphism(g, h, k);

    json comps = json::array();
    for (const auto& cmp : w.components)
      comps.push_back({{"prime", cmp.prime},
                       {"m", cmp.m},
                       {"x", element_json(cmp.x)},
                       {"y", element_json(cmp.y)}});
    std::vector<Element> unit_images;
    for (std::size_t i = 0; i < g.rank(); ++i)
      unit_images.push_back(w.phi.apply(g.unit(i)));
    json theta_images = json::array();
    for (const auto& b : h.basis()) theta_images.push_back(element_json(w.theta.apply(b)));

    json result{{"group", g.label()},
                {"h", {{"generators", elements_json(h.basis())},
                       {"type", abelian::iso_type(h).label()},
                       {"order", h.order()}}},
                {"k", {{"generators", elements_json(k.basis())},
                       {"type", abelian::iso_type(k).label()},
                       {"order", k.order()}}},
                {"verified", true},
                {"quotient_order", w.quotient_order},
                {"components", comps},
                {"phi", {{"generator_images", elements_json(unit_images)}}},
                {"theta", {{"domain_basis", elements_json(h.basis())},
                           {"images", theta_images}}}};

    std::ostringstream human;
    human << "group: " << g.label() << "\n"
          << "H = <" << elements_str(h.basis()) << ">  type "
          << abelian::iso_type(h).label() << ", order " << h.order() << "\n"
          << "K = <" << elements_str(k.basis()) << ">  type "
          << abelian::iso_type(k).label() << ", order " << k.order() << "\n"
          << "verified automorphism with phi(H) = K; quotient order "
          << w.quotient_order << "\n";
    for (const auto& cmp : w.components)
      human << "  component p=" << cmp.prime << ": m=" << cmp.m
            << ", x=" << element_str(cmp.x) << ", y=" << element_str(cmp.y)
            << "\n";
    human << "phi on generators:\n";
    for (std::size_t i = 0; i < g.rank(); ++i)
      human << "  " << element_str(g.unit(i)) << " -> "
            << element_str(unit_images[i]) << "\n";
    human << "theta on H basis:\n";
    for (const auto& b : h.basis())
      human << "  " << element_str(b) << " -> " << element_str(w.theta.apply(b))
            << "\n";
    return emit.report("witness", input, result, human.str(), 0);
  } catch (const std::exception& e) {
    auto f = classify(e);
    return emit.error("witness", input, f.code, f.category, e.what());
  }
}

int cmd_codes(const Options& o, const Emit& emit) {
  json input{{"group", o.group},
             {"q", o.q},
             {"weights", o.weights},
             {"orbits", o.orbits},
             {"cap", opt_json(o.cap)}};
  try {
    AbelianGroup g = AbelianGroup::parse(o.group);
    abelian::CodeSystem sys = abelian::build_code_system(g, o.q);
    abelian::GroupAlgebra alg(g, o.q);
    abelian::CodeCaps caps;
    if (o.cap) caps.max_group = *o.cap;

    json rows = json::array();
    std::ostringstream human;
    human << "group: " << g.label() << "  (order " << g.order() << ")\n"
          << "field: F_" << sys.field.q << ", splitting degree "
          << sys.field.degree << ", modulus " << poly_str(sys.field.modulus)
          << "\n"
          << "minimal codes: " << sys.codes.size() << "\n"
          << "idx  label  kernel-type  class-size  dim\n";
    for (std::size_t i = 0; i < sys.codes.size(); ++i) {
      const auto& code = sys.codes[i];
      json row{{"index", i},
               {"representative_label", element_json(code.cls.representative())},
               {"kernel_type", abelian::iso_type(code.cls.kernel).label()},
               {"class_size", code.cls.members.size()},
               {"dimension", code.dimension}};
      human << i << "    " << element_str(code.cls.representative()) << "  "
            << abelian::iso_type(code.cls.kernel).label() << "  "
            << code.cls.members.size() << "  " << code.dimension;
      if (o.weights) {
        auto census = abelian::weight_distribution(alg, code, caps);
        json w = json::object();
        human << "  weights:";
        for (const auto& [wt, count] : census) {
          w[std::to_string(wt)] = count;
          human << " " << wt << ":" << count;
        }
        row["weights"] = w;
      }
      human << "\n";
      rows.push_back(row);
    }

    json result{{"group", g.label()},
                {"order", g.order()},
                {"field", {{"q", sys.field.q},
                           {"degree", sys.field.degree},
                           {"modulus", sys.field.modulus}}},
                {"codes", rows}};
    int exit_code = 0;
    if (o.orbits) {
      auto gens = abelian::aut_generators(g);
      auto eq = abelian::code_equivalence_classes(alg, sys, gens);
      Int classes = abelian::eta(g).value;
      bool match = Int(eq.count) == classes;
      json orbits = json::array();
      for (const auto& orb : eq.orbits) orbits.push_back(orb);
      result["orbits"] = {{"count", eq.count},
                          {"classes", orbits},
                          {"subgroup_classes", classes},
                          {"matches_subgroup_classes", match}};
      human << "orbits: " << eq.count << "  subgroup classes: " << classes
            << "  agreement: " << (match ? "yes" : "NO") << "\n";
      if (!match) exit_code = 4;
    }
    return emit.report("codes", input, result, human.str(), exit_code);
  } catch (const std::exception& e) {
    auto f = classify(e);
    return emit.error("codes", input, f.code, f.category, e.what());
  }
}

int cmd_verify_suite(const Options& o, const Emit& emit) {
  json input{{"seed", o.seed}};
  try {
    std::vector<abelian::verify::CriterionResult> results;
    const char* const names[] = {
        "rank2-grid-cross-check",     "rank2-linear-family",
        "reference-class-counts",     "divisor-count-characterization",
        "coprime-multiplicativity",   "witness-suite",
        "rank2-type-census",          "minimal-code-cross-check"};
    std::vector<abelian::verify::Rank2Point> grid;
    std::size_t step = 0;
    auto progress = [&](const char* name) {
      ++step;
      std::cerr << "[" << step << "/8] " << name << "...\n";
    };
    progress(names[0]);
    results.push_back(abelian::verify::rank2_grid_cross_check(grid));
    progress(names[1]);
    results.push_back(abelian::verify::rank2_linear_family());
    progress(names[2]);
    results.push_back(abelian::verify::reference_class_counts());
    progress(names[3]);
    results.push_back(abelian::verify::divisor_count_characterization());
    progress(names[4]);
    results.push_back(
        abelian::verify::coprime_multiplicativity(std::uint64_t(o.seed)));
    progress(names[5]);
    results.push_back(abelian::verify::witness_suite());
    progress(names[6]);
    results.push_back(abelian::verify::rank2_type_census(grid));
    progress(names[7]);
    results.push_back(abelian::verify::minimal_code_cross_check());

    bool all = true;
    json criteria = json::array();
    std::ostringstream human;
    for (const auto& r : results) {
      all = all && r.pass;
      criteria.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      human << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " — " << r.detail
            << "\n";
    }
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.pass ? 1 : 0;
    human << results.size() << " criteria: " << passed << " passed, "
          << results.size() - passed << " failed\n";
    json result{{"criteria", criteria}, {"all_pass", all}};
    return emit.report("verify-suite", input, result, human.str(), all ? 0 : 4);
  } catch (const std::exception& e) {
    auto f = classify(e);
    return emit.error("verify-suite", input, f.code, f.category, e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal abelian code counting and construction toolkit"};
  app.require_subcommand(1);

  Options o;
  Emit emit;
  app.add_flag("--json", emit.as_json, "emit one structured JSON document");
  app.add_flag("--timing", emit.timing,
               "fill timing_ms in reports (off by default so reports diff "
               "cleanly)");
  app.add_option("--seed", o.seed, "seed for randomized verification sampling");
  std::optional<std::int64_t> cap_opt;
  app.add_option("--cap", cap_opt,
                 "enumeration cap: largest Sylow component (eta/inventory) or "
                 "largest group for weight censuses (codes)");

  auto* eta_cmd = app.add_subcommand(
      "eta", "count the equivalence classes of minimal codes");
  eta_cmd->fallthrough();
  eta_cmd->add_option("group", o.group, "group spec, e.g. C9xC3 or 3^[2,1]")
      ->required();
  eta_cmd->add_option("--method", o.method, "formula | brute | both")
      ->check(CLI::IsMember({"formula", "brute", "both"}));

  auto* inv_cmd = app.add_subcommand(
      "inventory", "list cocyclic subgroup classes with representatives");
  inv_cmd->fallthrough();
  inv_cmd->add_option("group", o.group, "group spec")->required();

  auto* wit_cmd = app.add_subcommand(
      "witness",
      "construct an automorphism carrying one cocyclic subgroup onto another");
  wit_cmd->fallthrough();
  wit_cmd->add_option("group", o.group, "group spec")->required();
  wit_cmd
      ->add_option("H", o.hgens,
                   "first subgroup: generators 'a,b;c,d' in group coordinates")
      ->required();
  wit_cmd->add_option("K", o.kgens, "second subgroup: same syntax")->required();

  auto* codes_cmd = app.add_subcommand(
      "codes", "decompose the group algebra into minimal codes");
  codes_cmd->fallthrough();
  codes_cmd->add_option("group", o.group, "group spec")->required();
  codes_cmd->add_option("--q", o.q, "field size (prime, coprime to the order)")
      ->required();
  codes_cmd->add_flag("--weights", o.weights, "exhaustive weight distributions");
  codes_cmd->add_flag("--orbits", o.orbits,
                      "orbit partition under the automorphism generators");

  auto* suite_cmd = app.add_subcommand(
      "verify-suite", "run the full release verification battery");
  suite_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (cap_opt) o.cap = Int(*cap_opt);

  if (*eta_cmd) return cmd_eta(o, emit);
  if (*inv_cmd) return cmd_inventory(o, emit);
  if (*wit_cmd) return cmd_witness(o, emit);
  if (*codes_cmd) return cmd_codes(o, emit);
  if (*suite_cmd) return cmd_verify_suite(o, emit);
  return 2;
}
