// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include <unistd.h>

#include "cli.hpp"
#include "fairdiv/deals.hpp"
#include "fairdiv/efficiency.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/sequences.hpp"
#include "fixtures.hpp"
#include "support/properties.hpp"

namespace fs = std::filesystem;
using namespace fairdiv;
using fixtures::alloc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  std::function<Outcome()> check;
};

Outcome from_report(const props::Report& report) {
  Outcome o;
  o.pass = report.ok();
  o.detail = report.summary();
  return o;
}

// Property suites: n in {2,3}, m in {3..6} (m <= 5 for LP-heavy suites).
constexpr int kPropertyInstances = 200;
constexpr std::uint64_t kPropertySeed = 20240601;

Outcome tied_relation() {
  Outcome o;
  const Instance inst = fixtures::tied_pair();
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& [sigma, a] : relation(inst)) {
    pairs.emplace(format_sequence(sigma), format_allocation(a));
  }
  const std::set<std::pair<std::string, std::string>> expected = {
      {"1,1,1", "1,2,3|-"}, {"1,1,2", "1,2|3"}, {"1,2,1", "1,2|3"},
      {"1,2,2", "1|2,3"},   {"2,1,1", "1,2|3"}, {"2,1,1", "2,3|1"},
      {"2,1,2", "1|2,3"},   {"2,1,2", "2|1,3"}, {"2,2,1", "2|1,3"},
      {"2,2,2", "-|1,2,3"}};
  o.require(pairs == expected, "relation differs from the 10 expected pairs");
  o.require(!is_sequenceable(inst, alloc(inst, "1,3|2")), "<13,2> sequenceable");
  o.require(!is_sequenceable(inst, alloc(inst, "3|1,2")), "<3,12> sequenceable");
  o.detail = o.pass ? std::to_string(pairs.size()) + " pairs" : o.detail;
  return o;
}

Outcome frustrated_witness() {
  Outcome o;
  const Instance inst = fixtures::frustrated_pair();
  const auto verdict = sequence_of(inst, alloc(inst, "1,4|2,3"));
  o.require(std::holds_alternative<NonSequenceable>(verdict),
            "<14,23> reported sequenceable");
  if (const auto* w = std::get_if<NonSequenceable>(&verdict)) {
    o.require(w->witness.scope() == fixtures::objects({3, 4}),
              "witness scope is not {3,4}");
    o.require(is_frustrating(inst, w->witness), "witness not frustrating");
    if (o.pass) o.detail = "witness " + format_allocation(w->witness);
  }
  return o;
}

Outcome sequenceable_but_dominated() {
  Outcome o;
  const Instance inst = fixtures::dominated_pair();
  const Allocation target = alloc(inst, "1|2,3");
  o.require(is_sequenceable(inst, target), "<1,23> not sequenceable");
  o.require(execute_all(inst, Sequence({0, 1, 1})).contains(target),
            "<1,2,2> does not generate <1,23>");
  const ParetoVerdict v = pareto_check(inst, target);
  o.require(!v.optimal, "<1,23> reported Pareto-optimal");
  o.require(v.dominated_by == alloc(inst, "2,3|1"), "witness is not <23,1>");
  return o;
}

Outcome envy_free_with_cycle() {
  Outcome o;
  const Instance inst = fixtures::envious_triple();
  const Allocation circled = alloc(inst, "1,4|3,5|2");
  o.require(is_envy_free(inst, circled), "not envy-free");
  o.require(!is_sequenceable(inst, circled), "sequenceable");
  const auto cycle = improving_cycle_from_frustration(inst, circled);
  o.require(cycle.has_value(), "no cycle returned");
  if (cycle) {
    o.require(format_deal(*cycle) == "2 -{3}-> 1 -{4}-> 2",
              "cycle is " + format_deal(*cycle));
    o.require(classify_deal(inst, circled, *cycle) == DealStrength::kStrict,
              "cycle is not strictly improving");
    if (o.pass) o.detail = "cycle " + format_deal(*cycle);
  }
  return o;
}

Outcome priced_equilibrium() {
  Outcome o;
  const Instance inst = fixtures::priced_triple();
  const Allocation circled = alloc(inst, "1,4|3|2");
  o.require(verify_ceei(inst, circled, parse_prices("1/2,1,1,1/2", 4)),
            "prices (1/2,1,1,1/2) rejected");
  const auto found = ceei_test(inst, circled);
  o.require(found.has_value(), "LP found no prices");
  if (found) {
    o.require(verify_ceei(inst, circled, *found), "LP prices rejected");
    o.detail = "LP prices " + format_prices(*found);
  }
  o.require(dominates(inst, alloc(inst, "1,2|3|4"), circled),
            "not dominated by <12|3|4>");
  return o;
}

Outcome peaked_swap_optimal() {
  Outcome o;
  const Instance inst = fixtures::peaked_triple();
  const Allocation circled = alloc(inst, "1,2|3,4|5,6");
  o.require(is_swap_optimal(inst, circled), "not strict-swap-optimal");
  o.require(!is_pareto_optimal(inst, circled), "Pareto-optimal");
  if (o.pass) {
    o.detail = "efficiency level " +
               std::string(to_string(efficiency_level(inst, circled)));
  }
  return o;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

using Counts = std::map<int, std::map<std::pair<std::string, std::string>,
                                      long>>;

Counts read_counts(const std::string& csv) {
  Counts counts;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string id, f, e, n;
    std::getline(fields, id, ',');
    std::getline(fields, f, ',');
    std::getline(fields, e, ',');
    std::getline(fields, n, ',');
    counts[std::stoi(id)][{f, e}] = std::stol(n);
  }
  return counts;
}

Outcome reproduce_experiment(const std::string& model, bool peaked) {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() /
                       ("fairdiv_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto run = [&](const std::string& tag) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(
        {"fairdiv", "experiment", "--model", model, "--agents", "3",
         "--objects", "8", "--count", "50", "--seed", "42", "--csv",
         (dir / (tag + ".csv")).string(), "--plot",
         (dir / (tag + ".plot")).string()},
        out, err);
    o.require(code == 0, "experiment exited with " + std::to_string(code) +
                             ": " + err.str());
  };
  run("first");
  run("second");
  const std::string csv = slurp(dir / "first.csv");
  o.require(csv == slurp(dir / "second.csv") &&
                slurp(dir / "first.summary.csv") ==
                    slurp(dir / "second.summary.csv") &&
                slurp(dir / "first.plot") == slurp(dir / "second.plot"),
            "reruns differ");
  fs::remove_all(dir);
  if (!o.pass) return o;

  const Counts counts = read_counts(csv);
  o.require(counts.size() == 50, "expected 50 instances");
  std::map<std::pair<std::string, std::string>, long> sums;
  for (const auto& [id, cells] : counts) {
    long total = 0;
    for (const auto& [cell, n] : cells) {
      total += n;
      sums[cell] += n;
      if (cell.first == "CEEI" && (cell.second == "Swap" ||
                                   cell.second == "none")) {
        o.require(n == 0, "instance " + std::to_string(id) + " has " +
                              std::to_string(n) + " in (CEEI," +
                              cell.second + ")");
      }
      if (peaked && cell.second == "Swap") {
        o.require(n == 0, "instance " + std::to_string(id) + " has " +
                              std::to_string(n) + " in (" + cell.first +
                              ",Swap)");
      }
    }
    o.require(total == 6561, "instance " + std::to_string(id) + " totals " +
                                 std::to_string(total));
  }
  const long none_none = sums[{"none", "none"}];
  for (const auto& [cell, sum] : sums) {
    o.require(sum <= none_none, "(" + cell.first + "," + cell.second +
                                    ") mean exceeds (none,none)");
  }
  if (o.pass) {
    std::ostringstream d;
    d << "(none,none) mean " << to_decimal(Rational(none_none, 50), 2)
      << " of 6561, reruns identical";
    o.detail = d.str();
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t s = kPropertySeed;
  const int count = kPropertyInstances;
  const std::vector<Criterion> criteria = {
      {1, "relation of the tied two-agent instance", tied_relation},
      {2, "frustrated pair has a witness on {3,4}", frustrated_witness},
      {3, "sequenceable allocation dominated by <23,1>",
       sequenceable_but_dominated},
      {4, "envy-free non-sequenceable allocation and its cycle",
       envy_free_with_cycle},
      {5, "competitive equilibrium prices and domination", priced_equilibrium},
      {6, "single-peaked swap-optimal but dominated allocation",
       peaked_swap_optimal},
      {7, "sequenceable iff no frustrating sub-allocation",
       [&] { return from_report(props::sequenceable_iff_no_frustration(s, count)); }},
      {8, "Pareto-optimal implies sequenceable",
       [&] {
         return from_report(
             props::pareto_optimal_implies_sequenceable(s + 1, count));
       }},
      {9, "sequenceable iff strict n-cycle optimal",
       [&] {
         return from_report(
             props::sequenceable_iff_strict_cycle_optimal(s + 2, count));
       }},
      {10, "strictness and common order versus the relation",
       [&] {
         return from_report(props::strictness_and_common_order(s + 3, count));
       }},
      {11, "single-peaked: swaps decide cycle optimality and sequenceability",
       [&] {
         return from_report(props::single_peaked_swaps_suffice(s + 4, count));
       }},
      {12, "CEEI implies sequenceable and envy-free",
       [&] {
         return from_report(
             props::ceei_implies_sequenceable_and_envy_free(s + 5, count));
       }},
      {13, "fairness chain CEEI > EF > mFS > PFS > MFS",
       [&] { return from_report(props::fairness_chain(s + 6, count)); }},
      {14, "verdicts invariant under normalization",
       [&] {
         return from_report(props::normalization_invariance(s + 7, count));
       }},
      {15, "uniform experiment, 50 instances of 3x8",
       [] { return reproduce_experiment("uniform", false); }},
      {16, "single-peaked experiment, 50 instances of 3x8",
       [] { return reproduce_experiment("single-peaked", true); }},
  };

  std::set<int> selected;
  for (int a = 1; a < argc; ++a) selected.insert(std::atoi(argv[a]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    failed += !o.pass;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", seconds);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": "
              << c.title << " (" << timing << ")";
    if (!o.detail.empty()) std::cout << " : " << o.detail;
    std::cout << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed"
                            : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
