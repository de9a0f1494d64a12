#include "fairdiv/efficiency.hpp"

#include <algorithm>
#include <numeric>

#include "fairdiv/deals.hpp"
#include "fairdiv/sequences.hpp"

namespace fairdiv {

std::vector<Rational> utility_profile(const Instance& instance,
                                      const Allocation& allocation) {
  check_shape(instance, allocation);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(instance.agents()));
  for (int i = 0; i < instance.agents(); ++i) {
    out.push_back(utility(instance, i, allocation.bundle(i)));
  }
  return out;
}

namespace {

bool profile_dominates(const std::vector<Rational>& a,
                       const std::vector<Rational>& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int c = cmp(a[i], b[i]);
    if (c < 0) return false;
    strict = strict || c > 0;
  }
  return strict;
}

}  // namespace

bool dominates(const Instance& instance, const Allocation& a,
               const Allocation& b) {
  check_full(instance, a);
  check_full(instance, b);
  return profile_dominates(utility_profile(instance, a),
                           utility_profile(instance, b));
}

ParetoVerdict pareto_check(const Instance& instance,
                           const Allocation& allocation,
                           std::uint64_t budget) {
  check_full(instance, allocation);
  const auto target = utility_profile(instance, allocation);
  AllocationStream stream(instance, budget);
  while (auto other = stream.next()) {
    if (profile_dominates(utility_profile(instance, *other), target)) {
      return {false, std::move(other)};
    }
  }
  return {true, std::nullopt};
}

bool is_pareto_optimal(const Instance& instance, const Allocation& allocation,
                       std::uint64_t budget) {
  return pareto_check(instance, allocation, budget).optimal;
}

std::vector<bool> pareto_optimal_flags(const Instance& instance,
                                       std::uint64_t budget) {
  AllocationStream stream(instance, budget);
  std::vector<std::vector<Rational>> profiles;
  profiles.reserve(stream.size());
  while (auto a = stream.next()) {
    profiles.push_back(utility_profile(instance, *a));
  }
  std::vector<std::size_t> order(profiles.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     return profiles[x] > profiles[y];
                   });
  std::vector<bool> optimal(profiles.size(), false);
  std::vector<std::size_t> frontier;
  for (const std::size_t idx : order) {
    const bool dominated =
        std::any_of(frontier.begin(), frontier.end(), [&](std::size_t f) {
          return profile_dominates(profiles[f], profiles[idx]);
        });
    if (dominated) continue;
    optimal[idx] = true;
    if (frontier.empty() || profiles[frontier.back()] != profiles[idx]) {
      frontier.push_back(idx);
    }
  }
  return optimal;
}

EfficiencyLevel efficiency_level(const Instance& instance,
                                 const Allocation& allocation,
                                 std::uint64_t budget) {
  if (is_pareto_optimal(instance, allocation, budget)) {
    return EfficiencyLevel::kParetoOptimal;
  }
  if (is_sequenceable(instance, allocation)) {
    return EfficiencyLevel::kSequenceable;
  }
  if (instance.agents() >= 2 && is_swap_optimal(instance, allocation)) {
    return EfficiencyLevel::kSwapOptimal;
  }
  return EfficiencyLevel::kNone;
}

std::string_view to_string(EfficiencyLevel level) {
  switch (level) {
    case EfficiencyLevel::kParetoOptimal:
      return "PO";
    case EfficiencyLevel::kSequenceable:
      return "Seq";
    case EfficiencyLevel::kSwapOptimal:
      return "Swap";
    case EfficiencyLevel::kNone:
      break;
  }
  return "none";
}

EfficiencyLevel parse_efficiency_level(std::string_view text) {
  for (int l = 0; l < kEfficiencyLevels; ++l) {
    const auto level = static_cast<EfficiencyLevel>(l);
    if (text == to_string(level)) return level;
  }
  throw ParseError("unknown efficiency level '" + std::string(text) + "'");
}

}  // namespace fairdiv
