#include "fairdiv/fairness.hpp"

#include <algorithm>
#include <stdexcept>

#include "fairdiv/ratlp.hpp"

namespace fairdiv {

PriceVector::PriceVector(std::vector<Rational> prices)
    : prices_(std::move(prices)) {
  for (auto& p : prices_) {
    p.canonicalize();
    if (p < 0 || p > 1) {
      throw DomainError("price " + to_string(p) + " outside [0, 1]");
    }
  }
}

Rational PriceVector::cost(ObjectSet bundle) const {
  Rational total = 0;
  for (const int k : bundle) total += prices_.at(k);
  return total;
}

PriceVector parse_prices(std::string_view text, int objects) {
  std::vector<Rational> prices;
  std::size_t pos = 0;
  while (true) {
    const auto stop = text.find(',', pos);
    std::string_view token = text.substr(pos, stop - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    prices.push_back(parse_rational(token));
    if (stop == std::string_view::npos) break;
    pos = stop + 1;
  }
  if (static_cast<int>(prices.size()) != objects) {
    throw ParseError("price vector '" + std::string(text) + "' has " +
                     std::to_string(prices.size()) + " entries, expected " +
                     std::to_string(objects));
  }
  try {
    return PriceVector(std::move(prices));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string format_prices(const PriceVector& prices) {
  std::string out;
  for (const auto& p : prices.prices()) {
    if (!out.empty()) out += ',';
    out += to_string(p);
  }
  return out;
}

// Envy-freeness and shares -----------------------------------------------------

bool is_envy_free(const Instance& instance, const Allocation& allocation) {
  check_full(instance, allocation);
  for (int i = 0; i < instance.agents(); ++i) {
    const Rational own = utility(instance, i, allocation.bundle(i));
    for (int j = 0; j < instance.agents(); ++j) {
      if (j != i && utility(instance, i, allocation.bundle(j)) > own) {
        return false;
      }
    }
  }
  return true;
}

Rational proportional_share(const Instance& instance, int agent) {
  return utility(instance, agent, instance.all_objects()) /
         Rational(instance.agents());
}

bool satisfies_proportional_share(const Instance& instance,
                                  const Allocation& allocation) {
  check_full(instance, allocation);
  for (int i = 0; i < instance.agents(); ++i) {
    if (utility(instance, i, allocation.bundle(i)) <
        proportional_share(instance, i)) {
      return false;
    }
  }
  return true;
}

ShareThresholds share_thresholds(const Instance& instance,
                                 std::uint64_t budget) {
  const int n = instance.agents();
  ShareThresholds out;
  for (int i = 0; i < n; ++i) {
    out.proportional.push_back(proportional_share(instance, i));
  }
  out.max_min.assign(static_cast<std::size_t>(n), Rational(0));
  out.min_max.assign(static_cast<std::size_t>(n), Rational(0));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);

  AllocationStream stream(instance, budget);
  std::vector<Rational> value(static_cast<std::size_t>(n));
  while (auto a = stream.next()) {
    for (int i = 0; i < n; ++i) {
      const auto row = instance.row(i);
      for (int j = 0; j < n; ++j) {
        value[j] = 0;
        for (const int k : a->bundle(j)) value[j] += row[k];
      }
      const auto [lo, hi] = std::minmax_element(value.begin(), value.end());
      if (!seen[i] || *lo > out.max_min[i]) out.max_min[i] = *lo;
      if (!seen[i] || *hi < out.min_max[i]) out.min_max[i] = *hi;
      seen[i] = true;
    }
  }
  return out;
}

Rational max_min_share(const Instance& instance, int agent,
                       std::uint64_t budget) {
  instance.check_agent(agent);
  return share_thresholds(instance, budget).max_min[agent];
}

Rational min_max_share(const Instance& instance, int agent,
                       std::uint64_t budget) {
  instance.check_agent(agent);
  return share_thresholds(instance, budget).min_max[agent];
}

namespace {

bool meets(const Instance& instance, const Allocation& allocation,
           const std::vector<Rational>& thresholds) {
  for (int i = 0; i < instance.agents(); ++i) {
    if (utility(instance, i, allocation.bundle(i)) < thresholds[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool satisfies_max_min_share(const Instance& instance,
                             const Allocation& allocation,
                             std::uint64_t budget) {
  check_full(instance, allocation);
  return meets(instance, allocation,
               share_thresholds(instance, budget).max_min);
}

bool satisfies_min_max_share(const Instance& instance,
                             const Allocation& allocation,
                             std::uint64_t budget) {
  check_full(instance, allocation);
  return meets(instance, allocation,
               share_thresholds(instance, budget).min_max);
}

// CEEI ---------------------------------------------------------------------------

bool verify_ceei(const Instance& instance, const Allocation& allocation,
                 const PriceVector& prices) {
  check_full(instance, allocation);
  if (prices.size() != instance.objects()) {
    throw DomainError("price vector length differs from the object count");
  }
  const BundleUtilities table(instance);
  const std::uint64_t bundles = std::uint64_t{1} << instance.objects();
  std::vector<Rational> cost(bundles);
  for (std::uint64_t b = 1; b < bundles; ++b) {
    cost[b] = cost[b & (b - 1)] + prices[std::countr_zero(b)];
  }
  for (int i = 0; i < instance.agents(); ++i) {
    const ObjectSet share = allocation.bundle(i);
    if (cost[share.bits()] > 1) return false;
    const Rational& own = table(i, share);
    for (std::uint64_t b = 0; b < bundles; ++b) {
      if (table(i, ObjectSet(b)) > own && cost[b] <= 1) return false;
    }
  }
  return true;
}

namespace {

struct BetterBundle {
  int agent;
  ObjectSet bundle;
};

std::vector<BetterBundle> better_bundles(const Instance& instance,
                                         const BundleUtilities& table,
                                         const Allocation& allocation,
                                         bool minimal_only) {
  std::vector<BetterBundle> out;
  const std::uint64_t bundles = std::uint64_t{1} << instance.objects();
  for (int i = 0; i < instance.agents(); ++i) {
    const Rational& own = table(i, allocation.bundle(i));
    for (std::uint64_t b = 1; b < bundles; ++b) {
      const ObjectSet bundle(b);
      if (!(table(i, bundle) > own)) continue;
      if (minimal_only) {
        // Utilities are monotone, so checking single removals suffices.
        bool minimal = true;
        for (const int k : bundle) {
          if (table(i, bundle.without(k)) > own) {
            minimal = false;
            break;
          }
        }
        if (!minimal) continue;
      }
      out.push_back({i, bundle});
    }
  }
  return out;
}

std::vector<Rational> row_for(int m, ObjectSet bundle, int margin_sign) {
  std::vector<Rational> row(static_cast<std::size_t>(m) + 1);
  for (const int k : bundle) row[k] = 1;
  row[m] = margin_sign;
  return row;
}

}  // namespace

std::optional<PriceVector> ceei_test(const Instance& instance,
                                     const BundleUtilities& table,
                                     const Allocation& allocation,
                                     const CeeiOptions& options) {
  check_full(instance, allocation);
  const int n = instance.agents();
  const int m = instance.objects();
  if (m > 62 || (static_cast<std::uint64_t>(n) << m) >
                    options.constraint_budget) {
    throw CapacityError("CEEI test needs n * 2^m <= " +
                        std::to_string(options.constraint_budget) +
                        " candidate constraints");
  }

  if (options.envy_presolve) {
    for (int i = 0; i < n; ++i) {
      const Rational& own = table(i, allocation.bundle(i));
      for (int j = 0; j < n; ++j) {
        if (j != i && table(i, allocation.bundle(j)) > own) {
          return std::nullopt;
        }
      }
    }
  }

  const auto candidates =
      better_bundles(instance, table, allocation, options.minimal_bundles_only);

  // Variables: p_0 .. p_{m-1}, margin.
  std::vector<Rational> objective(static_cast<std::size_t>(m) + 1);
  objective[m] = 1;
  LinearProgram lp(std::move(objective));
  for (int k = 0; k < m; ++k) lp.bound(k, Rational(0), Rational(1));
  lp.bound(m, Rational(-1), Rational(1));
  for (int i = 0; i < n; ++i) {
    lp.add(row_for(m, allocation.bundle(i), 0), Relation::kLessEqual, 1);
  }
  auto add_better = [&](const BetterBundle& c) {
    lp.add(row_for(m, c.bundle, -1), Relation::kGreaterEqual, 1);
  };

  if (!options.constraint_generation) {
    for (const auto& c : candidates) add_better(c);
  }
  std::vector<bool> active(candidates.size(), !options.constraint_generation);

  while (true) {
    const LPOutcome outcome = solve_max(lp);
    if (outcome.status != LPStatus::kOptimal) {
      // p = 0, margin = -1 is always feasible and the margin is capped.
      throw std::logic_error("CEEI program is not optimal: " +
                             std::string(to_string(outcome.status)));
    }
    const Rational& margin = outcome.point[m];
    if (sgn(margin) <= 0) return std::nullopt;

    // Most violated inactive row per agent.
    std::vector<int> worst(static_cast<std::size_t>(n), -1);
    std::vector<Rational> worst_cost(static_cast<std::size_t>(n));
    const Rational threshold = 1 + margin;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (active[c]) continue;
      Rational cost = 0;
      for (const int k : candidates[c].bundle) cost += outcome.point[k];
      if (cost >= threshold) continue;
      const int agent = candidates[c].agent;
      if (worst[agent] < 0 || cost < worst_cost[agent]) {
        worst[agent] = static_cast<int>(c);
        worst_cost[agent] = std::move(cost);
      }
    }
    bool added = false;
    for (const int c : worst) {
      if (c < 0) continue;
      active[c] = true;
      add_better(candidates[c]);
      added = true;
    }
    if (!added) {
      PriceVector prices(std::vector<Rational>(outcome.point.begin(),
                                               outcome.point.begin() + m));
      if (!verify_ceei(instance, allocation, prices)) {
        throw std::logic_error("CEEI prices failed verification");
      }
      return prices;
    }
  }
}

std::optional<PriceVector> ceei_test(const Instance& instance,
                                     const Allocation& allocation,
                                     const CeeiOptions& options) {
  const BundleUtilities table(instance);
  return ceei_test(instance, table, allocation, options);
}

// Levels -------------------------------------------------------------------------

FairnessLevel fairness_level(const Instance& instance,
                             const BundleUtilities& table,
                             const ShareThresholds& shares,
                             const Allocation& allocation,
                             const CeeiOptions& options) {
  check_full(instance, allocation);
  const int n = instance.agents();
  if (ceei_test(instance, table, allocation, options)) {
    return FairnessLevel::kCeei;
  }
  bool envy_free = true;
  for (int i = 0; i < n && envy_free; ++i) {
    const Rational& own = table(i, allocation.bundle(i));
    for (int j = 0; j < n; ++j) {
      if (j != i && table(i, allocation.bundle(j)) > own) {
        envy_free = false;
        break;
      }
    }
  }
  if (envy_free) return FairnessLevel::kEnvyFree;
  auto all_meet = [&](const std::vector<Rational>& thresholds) {
    for (int i = 0; i < n; ++i) {
      if (table(i, allocation.bundle(i)) < thresholds[i]) return false;
    }
    return true;
  };
  if (all_meet(shares.min_max)) return FairnessLevel::kMinMaxShare;
  if (all_meet(shares.proportional)) return FairnessLevel::kProportional;
  if (all_meet(shares.max_min)) return FairnessLevel::kMaxMinShare;
  return FairnessLevel::kNone;
}

FairnessLevel fairness_level(const Instance& instance,
                             const Allocation& allocation,
                             std::uint64_t budget) {
  const BundleUtilities table(instance);
  const ShareThresholds shares = share_thresholds(instance, budget);
  return fairness_level(instance, table, shares, allocation);
}

std::string_view to_string(FairnessLevel level) {
  switch (level) {
    case FairnessLevel::kCeei:
      return "CEEI";
    case FairnessLevel::kEnvyFree:
      return "EF";
    case FairnessLevel::kMinMaxShare:
      return "mFS";
    case FairnessLevel::kProportional:
      return "PFS";
    case FairnessLevel::kMaxMinShare:
      return "MFS";
    case FairnessLevel::kNone:
      break;
  }
  return "none";
}

FairnessLevel parse_fairness_level(std::string_view text) {
  for (int l = 0; l < kFairnessLevels; ++l) {
    const auto level = static_cast<FairnessLevel>(l);
    if (text == to_string(level)) return level;
  }
  throw ParseError("unknown fairness level '" + std::string(text) + "'");
}

}  // namespace fairdiv
