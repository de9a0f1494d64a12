#ifndef FAIRDIV_FAIRNESS_HPP
#define FAIRDIV_FAIRNESS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

// Highest first.
enum class FairnessLevel {
  kCeei,
  kEnvyFree,
  kMinMaxShare,
  kProportional,
  kMaxMinShare,
  kNone
};

inline constexpr int kFairnessLevels = 6;

// Item prices, each in [0, 1].
class PriceVector {
 public:
  explicit PriceVector(std::vector<Rational> prices);

  const std::vector<Rational>& prices() const { return prices_; }
  int size() const { return static_cast<int>(prices_.size()); }
  const Rational& operator[](int k) const { return prices_[k]; }
  Rational cost(ObjectSet bundle) const;

  friend bool operator==(const PriceVector&, const PriceVector&) = default;

 private:
  std::vector<Rational> prices_;
};

// "1/2,1,1,1/2"
PriceVector parse_prices(std::string_view text, int objects);
std::string format_prices(const PriceVector& prices);

bool is_envy_free(const Instance& instance, const Allocation& allocation);

// u_i(O) / n
Rational proportional_share(const Instance& instance, int agent);
bool satisfies_proportional_share(const Instance& instance,
                                  const Allocation& allocation);

// max over allocations of the agent's value for the worst bundle.
Rational max_min_share(const Instance& instance, int agent,
                       std::uint64_t budget = kDefaultEnumerationBudget);
bool satisfies_max_min_share(const Instance& instance,
                             const Allocation& allocation,
                             std::uint64_t budget = kDefaultEnumerationBudget);

// min over allocations of the agent's value for the best bundle.
Rational min_max_share(const Instance& instance, int agent,
                       std::uint64_t budget = kDefaultEnumerationBudget);
bool satisfies_min_max_share(const Instance& instance,
                             const Allocation& allocation,
                             std::uint64_t budget = kDefaultEnumerationBudget);

// Every agent's thresholds, computed in one pass over the allocations.
struct ShareThresholds {
  std::vector<Rational> proportional;
  std::vector<Rational> max_min;
  std::vector<Rational> min_max;
};

ShareThresholds share_thresholds(
    const Instance& instance,
    std::uint64_t budget = kDefaultEnumerationBudget);

// Each share is affordable and every strictly better bundle costs more
// than the unit budget. Checks all 2^m bundles per agent.
bool verify_ceei(const Instance& instance, const Allocation& allocation,
                 const PriceVector& prices);

struct CeeiOptions {
  // Envy already rules out a positive margin: the envied bundle is
  // affordable to its owner.
  bool envy_presolve = true;
  // Only inclusion-minimal better bundles become constraints.
  bool minimal_bundles_only = true;
  // Start from the budget rows and add violated better-bundle rows until
  // none is left.
  bool constraint_generation = true;
  // Cap on n * 2^m, the number of candidate constraints.
  std::uint64_t constraint_budget = std::uint64_t{1} << 22;
};

// Maximizes a margin d subject to p(share_i) <= 1 and p(B) >= 1 + d for every
// better bundle B, with prices in [0, 1] and d in [-1, 1]. The allocation is
// CEEI iff the optimal margin is positive; the returned prices then pass
// verify_ceei.
std::optional<PriceVector> ceei_test(const Instance& instance,
                                     const Allocation& allocation,
                                     const CeeiOptions& options = {});
std::optional<PriceVector> ceei_test(const Instance& instance,
                                     const BundleUtilities& table,
                                     const Allocation& allocation,
                                     const CeeiOptions& options = {});

FairnessLevel fairness_level(const Instance& instance,
                             const Allocation& allocation,
                             std::uint64_t budget = kDefaultEnumerationBudget);

// Level from precomputed thresholds; the CEEI test runs only if needed.
FairnessLevel fairness_level(const Instance& instance,
                             const BundleUtilities& table,
                             const ShareThresholds& shares,
                             const Allocation& allocation,
                             const CeeiOptions& options = {});

// "CEEI", "EF", "mFS", "PFS", "MFS", "none"
std::string_view to_string(FairnessLevel level);
FairnessLevel parse_fairness_level(std::string_view text);

}  // namespace fairdiv

#endif  // FAIRDIV_FAIRNESS_HPP
