#ifndef FAIRDIV_EFFICIENCY_HPP
#define FAIRDIV_EFFICIENCY_HPP

#include <optional>
#include <string_view>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

// Highest first.
enum class EfficiencyLevel { kParetoOptimal, kSequenceable, kSwapOptimal, kNone };

inline constexpr int kEfficiencyLevels = 4;

std::vector<Rational> utility_profile(const Instance& instance,
                                      const Allocation& allocation);

// Every agent weakly better off in `a` than in `b`, at least one strictly.
bool dominates(const Instance& instance, const Allocation& a,
               const Allocation& b);

struct ParetoVerdict {
  bool optimal = true;
  std::optional<Allocation> dominated_by;  // first dominating allocation
};

// Brute force over all n^m allocations.
ParetoVerdict pareto_check(const Instance& instance,
                           const Allocation& allocation,
                           std::uint64_t budget = kDefaultEnumerationBudget);

bool is_pareto_optimal(const Instance& instance, const Allocation& allocation,
                       std::uint64_t budget = kDefaultEnumerationBudget);

// Pareto-optimality of every allocation at once, indexed by enumeration
// rank. Sorting the utility profiles lexicographically means a dominating
// profile is always met before the profiles it dominates, so each profile
// is only compared against the non-dominated ones seen so far.
std::vector<bool> pareto_optimal_flags(
    const Instance& instance,
    std::uint64_t budget = kDefaultEnumerationBudget);

EfficiencyLevel efficiency_level(
    const Instance& instance, const Allocation& allocation,
    std::uint64_t budget = kDefaultEnumerationBudget);

// "PO", "Seq", "Swap", "none"
std::string_view to_string(EfficiencyLevel level);
EfficiencyLevel parse_efficiency_level(std::string_view text);

}  // namespace fairdiv

#endif  // FAIRDIV_EFFICIENCY_HPP
