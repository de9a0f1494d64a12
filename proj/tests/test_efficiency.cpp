#include <doctest.h>

#include "fairdiv/efficiency.hpp"
#include "fairdiv/sequences.hpp"
#include "fixtures.hpp"
#include "support/oracles.hpp"

using namespace fairdiv;
using fixtures::alloc;

TEST_CASE("dominance") {
  const Instance inst = fixtures::dominated_pair();
  CHECK(dominates(inst, alloc(inst, "2,3|1"), alloc(inst, "1|2,3")));
  CHECK_FALSE(dominates(inst, alloc(inst, "1|2,3"), alloc(inst, "2,3|1")));
  CHECK(utility_profile(inst, alloc(inst, "2,3|1")) ==
        std::vector<Rational>{6, 8});
  CHECK(utility_profile(inst, alloc(inst, "1|2,3")) ==
        std::vector<Rational>{5, 3});
  for (const auto& a : enumerate_allocations(inst)) {
    CHECK_FALSE(dominates(inst, a, a));
  }
  const Instance priced = fixtures::priced_triple();
  CHECK(dominates(priced, alloc(priced, "1,2|3|4"), alloc(priced, "1,4|3|2")));
  CHECK_THROWS_AS(dominates(inst, alloc(inst, "1|2|"), alloc(inst, "1|2,3")),
                  ParseError);
  CHECK_THROWS_AS(
      dominates(inst, Allocation(3, {ObjectSet{0}, ObjectSet{1}}),
                alloc(inst, "1|2,3")),
      DomainError);
}

TEST_CASE("dominance is asymmetric") {
  const Instance inst = fixtures::tied_pair();
  const auto all = enumerate_allocations(inst);
  for (const auto& a : all) {
    for (const auto& b : all) {
      CHECK_FALSE((dominates(inst, a, b) && dominates(inst, b, a)));
    }
  }
}

TEST_CASE("Pareto optimality with witnesses") {
  const Instance inst = fixtures::dominated_pair();
  const ParetoVerdict v = pareto_check(inst, alloc(inst, "1|2,3"));
  CHECK_FALSE(v.optimal);
  REQUIRE(v.dominated_by.has_value());
  CHECK(*v.dominated_by == alloc(inst, "2,3|1"));
  CHECK(is_pareto_optimal(inst, alloc(inst, "2,3|1")));

  const Instance peaked = fixtures::peaked_triple();
  const Allocation circled = alloc(peaked, "1,2|3,4|5,6");
  const ParetoVerdict sp = pareto_check(peaked, circled);
  CHECK_FALSE(sp.optimal);
  REQUIRE(sp.dominated_by.has_value());
  CHECK(dominates(peaked, *sp.dominated_by, circled));
  CHECK(dominates(peaked, alloc(peaked, "1,6|2,5|3,4"), circled));

  const Instance single = Instance::from_integers({{1, 5, 2}});
  CHECK(is_pareto_optimal(single, alloc(single, "1,2,3")));
  CHECK_THROWS_AS(is_pareto_optimal(inst, alloc(inst, "1|2,3"), 4),
                  CapacityError);
}

TEST_CASE("batch Pareto flags match single checks") {
  for (const Instance& inst :
       {fixtures::tied_pair(), fixtures::frustrated_pair(),
        fixtures::priced_triple(), fixtures::dominated_pair(),
        Instance::from_integers({{1, 1, 1}, {1, 1, 1}, {0, 0, 0}})}) {
    const auto flags = pareto_optimal_flags(inst);
    const auto all = enumerate_allocations(inst);
    REQUIRE(flags.size() == all.size());
    for (std::size_t r = 0; r < all.size(); ++r) {
      CHECK(flags[r] == is_pareto_optimal(inst, all[r]));
      CHECK(flags[r] == oracle::pareto_optimal(inst, all[r]));
    }
  }
}

TEST_CASE("efficiency levels") {
  const Instance dominated = fixtures::dominated_pair();
  CHECK(efficiency_level(dominated, alloc(dominated, "1|2,3")) ==
        EfficiencyLevel::kSequenceable);
  CHECK(efficiency_level(dominated, alloc(dominated, "2,3|1")) ==
        EfficiencyLevel::kParetoOptimal);

  const Instance peaked = fixtures::peaked_triple();
  const Allocation circled = alloc(peaked, "1,2|3,4|5,6");
  CHECK(is_sequenceable(peaked, circled));
  CHECK(efficiency_level(peaked, circled) == EfficiencyLevel::kSequenceable);

  const Instance tied = fixtures::tied_pair();
  CHECK(efficiency_level(tied, alloc(tied, "3|1,2")) == EfficiencyLevel::kNone);

  const Instance ring =
      Instance::from_integers({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  CHECK(efficiency_level(ring, alloc(ring, "1|2|3")) ==
        EfficiencyLevel::kSwapOptimal);

  const Instance envious = fixtures::envious_triple();
  CHECK(efficiency_level(envious, alloc(envious, "1,4|3,5|2")) ==
        EfficiencyLevel::kNone);

  const Instance single = Instance::from_integers({{1, 2}});
  CHECK(efficiency_level(single, alloc(single, "1,2")) ==
        EfficiencyLevel::kParetoOptimal);
}

TEST_CASE("efficiency level names") {
  CHECK(to_string(EfficiencyLevel::kParetoOptimal) == "PO");
  CHECK(to_string(EfficiencyLevel::kSequenceable) == "Seq");
  CHECK(to_string(EfficiencyLevel::kSwapOptimal) == "Swap");
  CHECK(to_string(EfficiencyLevel::kNone) == "none");
  for (int e = 0; e < kEfficiencyLevels; ++e) {
    const auto level = static_cast<EfficiencyLevel>(e);
    CHECK(parse_efficiency_level(to_string(level)) == level);
  }
  CHECK_THROWS_AS(parse_efficiency_level("best"), ParseError);
}
